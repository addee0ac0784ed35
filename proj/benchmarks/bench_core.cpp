#include "rltopa/feasibility.hpp"
#include "rltopa/geometry.hpp"
#include "rltopa/network_model.hpp"
#include "rltopa/oracle.hpp"
#include "rltopa/propagation.hpp"
#include "rltopa/scenario.hpp"

#include <benchmark/benchmark.h>

using namespace rltopa;

namespace {

Scenario canonical() {
    static const Scenario sc =
        load_scenario(std::string(RLTOPA_SCENARIO_DIR) + "/scenario_a_homogeneous.json");
    return sc;
}

void SegmentBlocked(benchmark::State& state) {
    const Building box{-5, 5, -5, 5, 0, 20, 5, 3, 2};
    const Vec3 a{0, -40, 10};
    const Vec3 b{0, 40, 1.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(segment_blocked(a, b, box));
    }
}
BENCHMARK(SegmentBlocked);

void CountLos(benchmark::State& state) {
    const Scenario sc = canonical();
    std::vector<Vec3> ues;
    for (const UserEquipment& ue : sc.ues) ues.push_back(ue.position);
    const Vec3 uav{0, 0, 62};
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_los(uav, ues, sc.venue));
    }
}
BENCHMARK(CountLos);

void LinkBudgetNlos(benchmark::State& state) {
    const Scenario sc = canonical();
    const Vec3 uav{0, 0, 60};
    const Vec3 hidden{-36.0, 0.0, 0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(link_budget(uav, hidden, sc.venue, sc.radio, sc.nlos_env));
    }
}
BENCHMARK(LinkBudgetNlos);

void FeasibleGrid(benchmark::State& state) {
    const Scenario sc = canonical();
    const FeasibleRegion region = make_feasible_region(sc.ues, sc.radio, sc.mcs, sc.zone);
    for (auto _ : state) {
        benchmark::DoNotOptimize(feasible_grid_points(region, sc.ues, sc.zone));
    }
}
BENCHMARK(FeasibleGrid)->Unit(benchmark::kMillisecond);

void NetworkMetricsAt(benchmark::State& state) {
    const Scenario sc = canonical();
    const Vec3 p{-34, -14, 91};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            network_metrics(p, sc.ues, sc.venue, sc.radio, sc.mcs, sc.nlos_env));
    }
}
BENCHMARK(NetworkMetricsAt);

void ExhaustiveSearch(benchmark::State& state) {
    const Scenario sc = canonical();
    for (auto _ : state) {
        benchmark::DoNotOptimize(exhaustive_search(sc, false,
                                                   static_cast<unsigned>(state.range(0))));
    }
}
BENCHMARK(ExhaustiveSearch)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
