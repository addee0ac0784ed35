#include "rltopa/dqn.hpp"
#include "rltopa/rng.hpp"

#include <benchmark/benchmark.h>

using namespace rltopa;

namespace {

std::vector<Transition> random_batch(int n) {
    Rng rng(17);
    std::vector<Transition> batch;
    for (int i = 0; i < n; ++i) {
        Transition t;
        for (double& v : t.obs) v = rng.uniform_range(-1.0, 1.0);
        for (double& v : t.next_obs) v = rng.uniform_range(-1.0, 1.0);
        t.action = rng.uniform_int(7);
        t.reward = rng.uniform();
        t.done = false;
        batch.push_back(t);
    }
    return batch;
}

void Forward(benchmark::State& state) {
    QNetwork net;
    net.init_weights(1);
    const std::array<double, 5> obs{0.1, -0.2, 0.6, 0.5, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(net.forward(obs));
    }
}
BENCHMARK(Forward);

void TdUpdate(benchmark::State& state) {
    QNetwork net;
    net.init_weights(1);
    QNetwork target = net;
    AdamState adam(net.parameter_count());
    TrainConfig cfg;
    const auto batch = random_batch(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(td_update(net, target, batch, cfg, adam));
    }
}
BENCHMARK(TdUpdate)->Arg(64);

void ReplaySample(benchmark::State& state) {
    ReplayBuffer buffer(1'000'000);
    for (const Transition& t : random_batch(30000)) buffer.push(t);
    Rng rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(buffer.sample(64, rng));
    }
}
BENCHMARK(ReplaySample);

} // namespace

BENCHMARK_MAIN();
