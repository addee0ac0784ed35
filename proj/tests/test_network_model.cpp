#include "rltopa/network_model.hpp"

#include "support/test_scenarios.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace rltopa;

TEST_CASE("per_link_rate: short LoS link carries the top MCS") {
    const RadioConfig radio;
    const McsTable table = builtin_mcs_table("vht160-gi800-1ss");
    Venue open;
    open.side_length = 100.0;
    const UserEquipment ue{0, {0, 0, 1.5}, 58.5e6, 0};
    CHECK_EQ(per_link_rate({0, 0, 2.5}, ue, open, radio, table),
             doctest::Approx(702e6)); // 1 m LoS, SNR far above every threshold
}

TEST_CASE("per_link_rate: link goes dark below the lowest threshold") {
    const RadioConfig radio;
    const McsTable table = builtin_mcs_table("vht160-gi800-1ss");
    Venue open;
    open.side_length = 1e6;
    const UserEquipment ue{0, {0, 0, 1.5}, 58.5e6, 0};
    CHECK_EQ(per_link_rate({100000.0, 0, 30.0}, ue, open, radio, table), 0.0);
}

TEST_CASE("per_link_rate: NLoS never beats LoS at equal distance") {
    const RadioConfig radio;
    const McsTable table = builtin_mcs_table("vht160-gi800-1ss");
    const Venue venue = test::canonical_venue();
    Venue open;
    open.side_length = 100.0;
    const UserEquipment hidden{0, {-36.0, 0.0, 0.5}, 58.5e6, 0};
    const Vec3 uav{0, 0, 60};
    CHECK_FALSE(line_of_sight(uav, hidden.position, venue));
    CHECK_LE(per_link_rate(uav, hidden, venue, radio, table),
             per_link_rate(uav, hidden, open, radio, table));
}

TEST_CASE("airtime_allocation: all demands met under unit airtime") {
    // Four links, each using a fifth of the medium.
    const std::vector<double> rates = {100e6, 100e6, 100e6, 100e6};
    const std::vector<double> demands = {20e6, 20e6, 20e6, 20e6};
    const AirtimeAllocation a = airtime_allocation(rates, demands);
    CHECK_EQ(a.total_airtime, doctest::Approx(0.8));
    CHECK_FALSE(a.saturated);
    for (std::size_t i = 0; i < 4; ++i) CHECK_EQ(a.achieved_bps[i], demands[i]);
}

TEST_CASE("airtime_allocation: proportional scaling when oversubscribed") {
    const std::vector<double> rates = {100e6, 100e6};
    const std::vector<double> demands = {80e6, 80e6};
    const AirtimeAllocation a = airtime_allocation(rates, demands);
    CHECK_EQ(a.total_airtime, doctest::Approx(1.6));
    CHECK(a.saturated);
    CHECK_EQ(a.achieved_bps[0], doctest::Approx(80e6 / 1.6));
    CHECK_EQ(a.achieved_bps[1], doctest::Approx(80e6 / 1.6));
}

TEST_CASE("airtime_allocation: a dead link does not burden the others") {
    const std::vector<double> rates = {100e6, 0.0, 100e6, 100e6};
    const std::vector<double> demands = {20e6, 20e6, 20e6, 20e6};
    const AirtimeAllocation a = airtime_allocation(rates, demands);
    CHECK_EQ(a.achieved_bps[1], 0.0);
    CHECK(std::isinf(a.airtime[1]));
    CHECK_FALSE(a.saturated);
    CHECK_EQ(a.achieved_bps[0], demands[0]);
    CHECK_EQ(a.achieved_bps[2], demands[2]);
    CHECK_EQ(a.achieved_bps[3], demands[3]);

    CHECK_THROWS_AS(airtime_allocation(rates, std::vector<double>{1e6, 1e6}),
                    std::invalid_argument);
}

TEST_CASE("mean_delay: golden single-link value") {
    const std::vector<double> rates = {58.5e6};
    const std::vector<double> demands = {29.25e6}; // airtime 0.5
    const AirtimeAllocation a = airtime_allocation(rates, demands);
    // (11200 / 58.5e6) / (1 - 0.5), by hand.
    CHECK_EQ(mean_delay(a), doctest::Approx(3.829059829059829e-4).epsilon(1e-12));
}

TEST_CASE("mean_delay: saturation and dead links hit the cap") {
    const std::vector<double> rates = {50e6, 50e6};
    const std::vector<double> demands = {40e6, 40e6}; // A = 1.6
    const AirtimeAllocation saturated = airtime_allocation(rates, demands);
    CHECK_EQ(mean_delay(saturated), doctest::Approx(1.0));

    const std::vector<double> with_dead = {50e6, 0.0};
    const std::vector<double> small = {1e6, 1e6}; // A = 0.02
    const AirtimeAllocation mixed = airtime_allocation(with_dead, small);
    const double live = (11200.0 / 50e6) / (1.0 - 0.02);
    CHECK_EQ(mean_delay(mixed), doctest::Approx((live + 1.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("mean_delay: non-decreasing in total airtime at fixed rates") {
    const std::vector<double> rates = {100e6, 100e6};
    double last = 0.0;
    for (double demand = 5e6; demand <= 60e6; demand += 5e6) {
        const std::vector<double> demands = {demand, demand};
        const double d = mean_delay(airtime_allocation(rates, demands));
        CHECK_GE(d, last);
        last = d;
    }
}

TEST_CASE("jain_fairness: closed-form cases") {
    CHECK_EQ(jain_fairness(std::vector<double>{10e6, 20e6}, std::vector<double>{10e6, 20e6}),
             doctest::Approx(1.0));
    CHECK_EQ(jain_fairness(std::vector<double>{10e6, 0.0}, std::vector<double>{10e6, 10e6}),
             doctest::Approx(0.5));
    CHECK_EQ(jain_fairness(std::vector<double>{0.0, 0.0}, std::vector<double>{10e6, 10e6}), 0.0);

    // Proportional scaling keeps normalized service equal.
    const std::vector<double> rates = {100e6, 50e6};
    const std::vector<double> demands = {80e6, 40e6}; // A = 1.6, both live
    const AirtimeAllocation a = airtime_allocation(rates, demands);
    CHECK_EQ(jain_fairness(a.achieved_bps, demands), doctest::Approx(1.0));
}

TEST_CASE("network_metrics: scale consistency and throughput bounds") {
    const RadioConfig radio;
    const McsTable table = builtin_mcs_table("vht160-gi800-1ss");
    const Scenario sc = test::walled_scenario();
    const Vec3 p{0, 0, 38};

    const NetworkMetrics m = network_metrics(p, sc.ues, sc.venue, radio, table);
    double demand_sum = 0.0;
    for (const UserEquipment& ue : sc.ues) demand_sum += ue.demand_bps;
    CHECK_LE(m.aggregate_throughput_bps, demand_sum + 1e-6);
    CHECK_LE(m.aggregate_throughput_bps, c_max_bps(table, sc.ues.size()));
    for (std::size_t i = 0; i < sc.ues.size(); ++i) {
        CHECK_LE(m.per_ue_rate_bps[i], sc.ues[i].demand_bps + 1e-6);
    }
    CHECK_GE(m.mean_delay_s, 0.0);

    // Doubling every demand and every PHY rate leaves shares, fairness and
    // the saturation flag unchanged.
    std::vector<double> rates;
    std::vector<double> demands;
    for (const UserEquipment& ue : sc.ues) {
        rates.push_back(per_link_rate(p, ue, sc.venue, radio, table));
        demands.push_back(ue.demand_bps);
    }
    const AirtimeAllocation base = airtime_allocation(rates, demands);
    std::vector<double> rates2 = rates;
    std::vector<double> demands2 = demands;
    for (double& r : rates2) r *= 2.0;
    for (double& d : demands2) d *= 2.0;
    const AirtimeAllocation doubled = airtime_allocation(rates2, demands2);
    CHECK_EQ(base.total_airtime, doctest::Approx(doubled.total_airtime).epsilon(1e-12));
    CHECK_EQ(base.saturated, doubled.saturated);
    CHECK_EQ(jain_fairness(base.achieved_bps, demands),
             doctest::Approx(jain_fairness(doubled.achieved_bps, demands2)).epsilon(1e-12));
}

TEST_CASE("aggregate equals the demand sum exactly when unsaturated and live") {
    const std::vector<double> rates = {300e6, 200e6, 500e6};
    const std::vector<double> demands = {30e6, 20e6, 50e6};
    const AirtimeAllocation a = airtime_allocation(rates, demands);
    REQUIRE_FALSE(a.saturated);
    const double sum = std::accumulate(a.achieved_bps.begin(), a.achieved_bps.end(), 0.0);
    CHECK_EQ(sum, doctest::Approx(100e6).epsilon(1e-12));
}
