#include "rltopa/propagation.hpp"
#include "rltopa/rng.hpp"

#include "support/test_scenarios.hpp"

#include <doctest.h>

#include <cmath>

using namespace rltopa;

TEST_CASE("friis_snr at 1 m with the canonical radio") {
    const RadioConfig radio;
    // Independent scalar evaluation of the closed form.
    CHECK_EQ(friis_snr(1.0, radio), doctest::Approx(58.149030709997504).epsilon(1e-12));
    CHECK_LT(std::abs(friis_snr(1.0, radio) - 58.1498), 1e-3);
}

TEST_CASE("friis_snr slope: 20 dB per decade, 6.02 dB per doubling") {
    const RadioConfig radio;
    CHECK_EQ(friis_snr(10.0, radio), doctest::Approx(friis_snr(1.0, radio) - 20.0).epsilon(1e-12));
    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        RadioConfig r;
        r.frequency_hz = rng.uniform_range(0.4e9, 60e9);
        r.tx_power_dbm = rng.uniform_range(-10, 30);
        r.noise_floor_dbm = rng.uniform_range(-100, -70);
        const double d = rng.uniform_range(0.5, 400.0);
        CHECK_EQ(friis_snr(2.0 * d, r),
                 doctest::Approx(friis_snr(d, r) - 20.0 * std::log10(2.0)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(friis_snr(0.0, radio), std::invalid_argument);
    CHECK_THROWS_AS(friis_snr(-3.0, radio), std::invalid_argument);
}

TEST_CASE("friis_max_distance inverts friis_snr") {
    const RadioConfig radio;
    CHECK_EQ(friis_max_distance(friis_snr(1.0, radio), radio), doctest::Approx(1.0).epsilon(1e-12));
    CHECK_EQ(friis_max_distance(25.0, radio), doctest::Approx(45.45).epsilon(0.01 / 45.45));

    Rng rng(1234);
    for (int i = 0; i < 1000; ++i) {
        const double snr = rng.uniform_range(-20.0, 80.0);
        const double d = friis_max_distance(snr, radio);
        CHECK_EQ(friis_snr(d, radio), doctest::Approx(snr).epsilon(1e-9));
    }
    for (int i = 0; i < 1000; ++i) {
        const double d = rng.uniform_range(1e-3, 5e3);
        CHECK_EQ(friis_max_distance(friis_snr(d, radio), radio),
                 doctest::Approx(d).epsilon(1e-9));
    }
}

TEST_CASE("itu1411_los_loss: continuity at the breakpoint and golden value") {
    const RadioConfig radio;
    const double lambda = radio.wavelength_m();
    const double r_bp = 4.0 * 30.0 * 1.5 / lambda;
    const double below = itu1411_los_loss(r_bp * (1.0 - 1e-12), radio, 30.0, 1.5);
    const double above = itu1411_los_loss(r_bp * (1.0 + 1e-12), radio, 30.0, 1.5);
    CHECK_EQ(below, doctest::Approx(above).epsilon(1e-9));

    // Golden number from a hand evaluation of the two-slope formula.
    CHECK_EQ(itu1411_los_loss(100.0, radio, 30.0, 1.5),
             doctest::Approx(86.83036937672287).epsilon(1e-9));

    CHECK_THROWS_AS(itu1411_los_loss(0.0, radio, 30.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(itu1411_los_loss(10.0, radio, 0.0, 1.5), std::invalid_argument);
}

TEST_CASE("itu1411_los_loss: strictly increasing in distance") {
    const RadioConfig radio;
    Rng rng(55);
    for (int i = 0; i < 1000; ++i) {
        const double d1 = rng.uniform_range(1.0, 4000.0);
        const double d2 = d1 + rng.uniform_range(0.01, 500.0);
        const double h1 = rng.uniform_range(1.0, 120.0);
        const double h2 = rng.uniform_range(1.0, 3.0);
        CHECK_LT(itu1411_los_loss(d1, radio, h1, h2), itu1411_los_loss(d2, radio, h1, h2));
    }
}

TEST_CASE("itu1411_nlos_rooftop_loss: golden value with canonical street geometry") {
    const RadioConfig radio;
    const NlosEnvironment env;
    // Golden number from an independent evaluation of the closed form
    // (free space + rooftop-to-street + multi-screen terms).
    CHECK_EQ(itu1411_nlos_rooftop_loss(100.0, radio, env, 30.0, 1.5),
             doctest::Approx(143.69753000650718).epsilon(1e-9));

    CHECK_THROWS_AS(itu1411_nlos_rooftop_loss(0.0, radio, env, 30.0, 1.5), std::invalid_argument);
    // Lower station at or above rooftop level is outside the model.
    CHECK_THROWS_AS(itu1411_nlos_rooftop_loss(100.0, radio, env, 30.0, 18.0),
                    std::invalid_argument);
    NlosEnvironment bad = env;
    bad.street_width_m = 0.0;
    CHECK_THROWS_AS(itu1411_nlos_rooftop_loss(100.0, radio, bad, 30.0, 1.5),
                    std::invalid_argument);
}

TEST_CASE("itu1411_nlos_rooftop_loss: dominates LoS and is non-decreasing") {
    const RadioConfig radio;
    const NlosEnvironment env;
    Rng rng(77);
    for (int i = 0; i < 1000; ++i) {
        const double d = rng.uniform_range(10.0, 500.0);
        const double h_uav = rng.uniform_range(20.0, 100.0);
        const double nlos = itu1411_nlos_rooftop_loss(d, radio, env, h_uav, 1.5);
        CHECK_GE(nlos, itu1411_los_loss(d, radio, h_uav, 1.5));
        const double d2 = d + rng.uniform_range(0.1, 200.0);
        CHECK_GE(itu1411_nlos_rooftop_loss(d2, radio, env, h_uav, 1.5), nlos);
    }
}

TEST_CASE("link_budget: branch selection and the SNR identity") {
    const RadioConfig radio;
    Venue open;
    open.side_length = 100.0;
    const Vec3 uav{0, 0, 60};
    const Vec3 ue{10, 10, 1.5};

    const LinkBudget clear = link_budget(uav, ue, open, radio);
    CHECK(clear.los);
    CHECK_EQ(clear.path_loss_db,
             doctest::Approx(itu1411_los_loss(clear.distance_m, radio, 60.0, 1.5)).epsilon(1e-12));
    CHECK_EQ(clear.snr_db + clear.path_loss_db - radio.tx_power_dbm + radio.noise_floor_dbm -
                 radio.antenna_gain_dbi,
             0.0);

    const Venue venue = test::canonical_venue();
    const Vec3 hidden{-36.0, 0.0, 0.5};
    const Vec3 from{0, 0, 60};
    const LinkBudget blocked = link_budget(from, hidden, venue, radio);
    CHECK_FALSE(blocked.los);
    // Same geometry with the buildings removed: the LoS branch at equal
    // distance is always at least as strong.
    const LinkBudget unblocked = link_budget(from, hidden, open, radio);
    CHECK_LT(blocked.snr_db, unblocked.snr_db);

    CHECK_THROWS_AS(link_budget(uav, uav, open, radio), std::invalid_argument);
}

TEST_CASE("select_mcs: boundary rules") {
    const McsTable table = builtin_mcs_table("vht160-gi800-1ss");
    CHECK_FALSE(select_mcs(4.999, table).has_value());
    CHECK_EQ(select_mcs(5.0, table)->index, 0);   // inclusive threshold
    CHECK_EQ(select_mcs(12.0, table)->index, 2);
    CHECK_EQ(select_mcs(29.0, table)->index, 7);
    CHECK_EQ(select_mcs(95.0, table)->index, 8);  // above every threshold
}

TEST_CASE("select_mcs: index is non-decreasing in SNR") {
    const McsTable table = builtin_mcs_table("vht20-gi800-1ss");
    int last = -1;
    for (double snr = -10.0; snr <= 60.0; snr += 0.25) {
        const auto entry = select_mcs(snr, table);
        const int idx = entry ? entry->index : -1;
        CHECK_GE(idx, last);
        last = idx;
    }
}

TEST_CASE("builtin MCS tables") {
    const McsTable vht160 = builtin_mcs_table("vht160-gi800-1ss");
    CHECK_NOTHROW(vht160.validate());
    CHECK_EQ(vht160.entries.size(), 9);
    CHECK_EQ(vht160.find(0)->phy_rate_bps, doctest::Approx(58.5e6));
    CHECK_EQ(vht160.find(1)->phy_rate_bps, doctest::Approx(117e6));
    CHECK_EQ(vht160.find(2)->phy_rate_bps, doctest::Approx(175.5e6));
    CHECK_EQ(vht160.find(3)->phy_rate_bps, doctest::Approx(234e6));
    CHECK_EQ(vht160.top_rate_bps(), doctest::Approx(702e6));

    const McsTable vht20 = builtin_mcs_table("vht20-gi800-1ss");
    CHECK_NOTHROW(vht20.validate());
    CHECK_EQ(vht20.find(0)->phy_rate_bps, doctest::Approx(6.5e6));

    CHECK_THROWS_AS(builtin_mcs_table("ht40"), std::invalid_argument);

    McsTable bad = vht20;
    bad.entries[3].min_snr_db = bad.entries[2].min_snr_db;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("radio validation") {
    RadioConfig radio;
    CHECK_NOTHROW(radio.validate());
    radio.bandwidth_mhz = 30.0;
    CHECK_THROWS_AS(radio.validate(), std::invalid_argument);
    radio = RadioConfig{};
    radio.frequency_hz = 0.0;
    CHECK_THROWS_AS(radio.validate(), std::invalid_argument);
}
