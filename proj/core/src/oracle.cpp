#include "rltopa/oracle.hpp"

#include "rltopa/feasibility.hpp"
#include "rltopa/network_model.hpp"
#include "rltopa/rl_env.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace rltopa {

namespace {

struct ShardResult {
    int max_nlos = -1;
    std::vector<std::size_t> argmax_indices;
    std::vector<int> nlos; // one entry per shard point when keeping all
};

/// Deterministic parallel map over [0, n): shard t handles one contiguous
/// range, so the merged output never depends on scheduling.
template <typename Fn>
void parallel_shards(std::size_t n, unsigned threads, Fn&& fn) {
    const std::size_t shard_size = (n + threads - 1) / threads;
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(n, t * shard_size);
        const std::size_t end = std::min(n, begin + shard_size);
        workers.emplace_back([&fn, t, begin, end] { fn(t, begin, end); });
    }
    for (std::thread& w : workers) w.join();
}

double throughput_at(const Vec3& p, const Scenario& sc) {
    return network_metrics(p, sc.ues, sc.venue, sc.radio, sc.mcs, sc.nlos_env)
        .aggregate_throughput_bps;
}

} // namespace

OracleResult exhaustive_search(const Scenario& scenario, bool keep_all_points,
                               unsigned threads) {
    scenario.validate();
    const FeasibleRegion region =
        make_feasible_region(scenario.ues, scenario.radio, scenario.mcs, scenario.zone);
    const std::vector<Vec3> feasible =
        feasible_grid_points(region, scenario.ues, scenario.zone);
    if (feasible.empty()) {
        throw InfeasibleScenarioError("scenario '" + scenario.name +
                                      "': the feasible subspace is empty");
    }

    std::vector<Vec3> ue_positions;
    for (const UserEquipment& ue : scenario.ues) ue_positions.push_back(ue.position);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, 64u);
    const std::size_t n = feasible.size();

    std::vector<ShardResult> shards(threads);
    parallel_shards(n, threads, [&](unsigned t, std::size_t begin, std::size_t end) {
        ShardResult& shard = shards[t];
        if (keep_all_points) shard.nlos.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
            const int nlos = count_los(feasible[i], ue_positions, scenario.venue);
            if (keep_all_points) shard.nlos.push_back(nlos);
            if (nlos > shard.max_nlos) {
                shard.max_nlos = nlos;
                shard.argmax_indices.clear();
            }
            if (nlos == shard.max_nlos) shard.argmax_indices.push_back(i);
        }
    });

    OracleResult result;
    for (const ShardResult& shard : shards) {
        result.max_nlos = std::max(result.max_nlos, shard.max_nlos);
    }

    std::vector<std::size_t> argmax_indices;
    for (const ShardResult& shard : shards) {
        if (shard.max_nlos != result.max_nlos) continue;
        argmax_indices.insert(argmax_indices.end(), shard.argmax_indices.begin(),
                              shard.argmax_indices.end());
    }

    result.argmax.resize(argmax_indices.size());
    parallel_shards(argmax_indices.size(), threads,
                    [&](unsigned, std::size_t begin, std::size_t end) {
                        for (std::size_t i = begin; i < end; ++i) {
                            const Vec3& p = feasible[argmax_indices[i]];
                            result.argmax[i] =
                                OraclePoint{p, result.max_nlos, throughput_at(p, scenario)};
                        }
                    });
    std::sort(result.argmax.begin(), result.argmax.end(),
              [](const OraclePoint& a, const OraclePoint& b) {
                  if (a.aggregate_throughput_bps != b.aggregate_throughput_bps) {
                      return a.aggregate_throughput_bps > b.aggregate_throughput_bps;
                  }
                  return Vec3::lex_less(a.position, b.position);
              });

    if (keep_all_points) {
        std::vector<int> nlos_all;
        nlos_all.reserve(n);
        for (const ShardResult& shard : shards) {
            nlos_all.insert(nlos_all.end(), shard.nlos.begin(), shard.nlos.end());
        }
        std::vector<OraclePoint> table(n);
        parallel_shards(n, threads, [&](unsigned, std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                table[i] = OraclePoint{feasible[i], nlos_all[i], throughput_at(feasible[i], scenario)};
            }
        });
        result.all_points = std::move(table);
    }
    return result;
}

CertificateReport certify(const Vec3& agent_position, const OracleResult& oracle,
                          const Scenario& scenario) {
    if (!scenario.zone.on_lattice(agent_position)) {
        throw std::invalid_argument("certify: position is not a lattice point of the zone");
    }
    std::vector<Vec3> ue_positions;
    for (const UserEquipment& ue : scenario.ues) ue_positions.push_back(ue.position);
    const FeasibleRegion region =
        make_feasible_region(scenario.ues, scenario.radio, scenario.mcs, scenario.zone);

    CertificateReport report;
    report.position = agent_position;
    report.in_sp = in_feasible_subspace(agent_position, region, scenario.ues);
    report.agent_nlos = count_los(agent_position, ue_positions, scenario.venue);
    report.max_nlos = oracle.max_nlos;
    report.gap = oracle.max_nlos - report.agent_nlos;
    report.pass = report.in_sp && report.gap == 0;
    for (std::size_t i = 0; i < oracle.argmax.size(); ++i) {
        if (oracle.argmax[i].position == agent_position) {
            report.throughput_rank = i + 1;
            break;
        }
    }
    return report;
}

} // namespace rltopa
