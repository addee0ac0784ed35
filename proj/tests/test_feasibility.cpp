#include "rltopa/feasibility.hpp"
#include "rltopa/rng.hpp"

#include "support/test_scenarios.hpp"

#include <doctest.h>

#include <cmath>

using namespace rltopa;

TEST_CASE("sphere_radius: derived radii for the default SNR ladder") {
    const RadioConfig radio;
    const McsTable table = builtin_mcs_table("vht160-gi800-1ss");
    const UserEquipment low{0, {0, 0, 1.5}, 58.5e6, 0};
    const UserEquipment high{1, {0, 0, 1.5}, 526.5e6, 6};
    // 10^((58.14903... - min_snr) / 20), evaluated independently.
    CHECK_EQ(sphere_radius(low, radio, table), doctest::Approx(454.4138246892333).epsilon(1e-12));
    CHECK_LT(std::abs(sphere_radius(low, radio, table) - 454.5), 0.1);
    CHECK_EQ(sphere_radius(high, radio, table), doctest::Approx(45.44138246892333).epsilon(1e-12));

    UserEquipment unknown = low;
    unknown.demanded_mcs = 42;
    CHECK_THROWS_AS(sphere_radius(unknown, radio, table), std::invalid_argument);
}

TEST_CASE("sphere_radius: strictly smaller for higher demanded MCS") {
    const RadioConfig radio;
    const McsTable table = builtin_mcs_table("vht160-gi800-1ss");
    double last = 1e18;
    for (const McsEntry& entry : table.entries) {
        const UserEquipment ue{entry.index, {0, 0, 1.5}, entry.phy_rate_bps, entry.index};
        const double r = sphere_radius(ue, radio, table);
        CHECK_LT(r, last);
        last = r;
    }
}

TEST_CASE("in_feasible_subspace: box and sphere conjunction") {
    const PositioningZone zone{{-20, -20, 0}, {20, 20, 20}, 1.0};
    const std::vector<UserEquipment> ues = {{0, {0, 0, 0}, 1e6, 0}};

    FeasibleRegion region{{10.0}, zone};
    CHECK(in_feasible_subspace({0, 0, 10}, region, ues));           // boundary: closed ball
    CHECK_FALSE(in_feasible_subspace({0, 0, 10.0001}, region, ues));
    CHECK_FALSE(in_feasible_subspace({0, 0, -1}, region, ues));     // outside the zone

    FeasibleRegion huge{{1e6}, zone};
    CHECK(in_feasible_subspace({20, 20, 20}, huge, ues));
    CHECK_FALSE(in_feasible_subspace({21, 20, 20}, huge, ues));

    FeasibleRegion mismatched{{10.0, 10.0}, zone};
    CHECK_THROWS_AS(in_feasible_subspace({0, 0, 0}, mismatched, ues), std::invalid_argument);
}

TEST_CASE("feasible_grid_points: saturating radii reproduce the whole lattice") {
    const PositioningZone zone{{0, 0, 0}, {4, 4, 4}, 1.0};
    const std::vector<UserEquipment> ues = {{0, {2, 2, 0}, 1e6, 0}, {1, {0, 0, 0}, 1e6, 0}};
    const FeasibleRegion region{{1e9, 1e9}, zone};
    CHECK_EQ(feasible_grid_points(region, ues, zone), grid_points(zone));
}

TEST_CASE("feasible_grid_points: disjoint spheres give an empty result") {
    const PositioningZone zone{{-50, -50, 0}, {50, 50, 10}, 1.0};
    const std::vector<UserEquipment> ues = {{0, {-40, 0, 0}, 1e6, 0}, {1, {40, 0, 0}, 1e6, 0}};
    const FeasibleRegion region{{20.0, 20.0}, zone};
    CHECK(feasible_grid_points(region, ues, zone).empty());
}

TEST_CASE("feasible_grid_points: single-UE disc against direct distance checks") {
    const PositioningZone zone{{-10, -10, 5}, {10, 10, 5.0001}, 1.0}; // flat z = 5
    const std::vector<UserEquipment> ues = {{0, {1, -2, 0}, 1e6, 0}};
    const double r = 7.25;
    const FeasibleRegion region{{r}, zone};
    const auto feasible = feasible_grid_points(region, ues, zone);
    CHECK_FALSE(feasible.empty());
    int matching = 0;
    for (const Vec3& p : grid_points(zone)) {
        const bool member = p.distance_to(ues[0].position) <= r;
        if (member) ++matching;
        const bool returned =
            std::find(feasible.begin(), feasible.end(), p) != feasible.end();
        CHECK_EQ(member, returned);
    }
    CHECK_EQ(static_cast<std::size_t>(matching), feasible.size());
}

TEST_CASE("feasibility: brute-force re-evaluation over random scenarios") {
    Rng rng(321);
    for (int trial = 0; trial < 20; ++trial) {
        PositioningZone zone;
        zone.min_corner = {rng.uniform_range(-12, -4), rng.uniform_range(-12, -4),
                           rng.uniform_range(0, 4)};
        zone.max_corner = zone.min_corner + Vec3{rng.uniform_range(4, 10),
                                                 rng.uniform_range(4, 10),
                                                 rng.uniform_range(4, 10)};
        zone.grid_size = 1.0;
        std::vector<UserEquipment> ues;
        FeasibleRegion region;
        region.zone = zone;
        const int n = 1 + rng.uniform_int(4);
        for (int i = 0; i < n; ++i) {
            ues.push_back({i,
                           {rng.uniform_range(-15, 15), rng.uniform_range(-15, 15),
                            rng.uniform_range(0, 3)},
                           1e6,
                           0});
            region.radii_m.push_back(rng.uniform_range(3, 18));
        }
        const auto feasible = feasible_grid_points(region, ues, zone);
        std::size_t accepted = 0;
        for (const Vec3& p : grid_points(zone)) {
            bool member = zone.contains(p);
            for (int i = 0; i < n && member; ++i) {
                member = p.distance_to(ues[static_cast<std::size_t>(i)].position) <=
                         region.radii_m[static_cast<std::size_t>(i)];
            }
            if (member) {
                CHECK_EQ(feasible[accepted], p); // order preserved
                ++accepted;
            }
        }
        CHECK_EQ(accepted, feasible.size());
    }
}

TEST_CASE("feasibility: adding a UE never enlarges the subspace") {
    const PositioningZone zone{{-10, -10, 0}, {10, 10, 10}, 2.0};
    std::vector<UserEquipment> ues = {{0, {3, 3, 0}, 1e6, 0}};
    FeasibleRegion region{{12.0}, zone};
    const auto before = feasible_grid_points(region, ues, zone);

    ues.push_back({1, {-6, 2, 0}, 1e6, 0});
    region.radii_m.push_back(9.0);
    const auto after = feasible_grid_points(region, ues, zone);

    CHECK_LE(after.size(), before.size());
    for (const Vec3& p : after) {
        CHECK(std::find(before.begin(), before.end(), p) != before.end());
    }
}

TEST_CASE("make_feasible_region matches per-UE sphere_radius") {
    const RadioConfig radio;
    const McsTable table = builtin_mcs_table("vht160-gi800-1ss");
    const PositioningZone zone = test::canonical_zone();
    const std::vector<UserEquipment> ues = {{0, {0, 0, 1.5}, 58.5e6, 0},
                                            {1, {5, 5, 1.5}, 234e6, 3}};
    const FeasibleRegion region = make_feasible_region(ues, radio, table, zone);
    REQUIRE_EQ(region.radii_m.size(), 2);
    CHECK_EQ(region.radii_m[0], sphere_radius(ues[0], radio, table));
    CHECK_EQ(region.radii_m[1], sphere_radius(ues[1], radio, table));
}
