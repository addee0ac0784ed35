#pragma once

#include "rltopa/geometry.hpp"
#include "rltopa/scenario.hpp"

#include <optional>
#include <vector>

namespace rltopa {

/// One evaluated lattice point of the feasible subspace.
struct OraclePoint {
    Vec3 position;
    int nlos = 0;
    double aggregate_throughput_bps = 0.0;
};

/// Ground truth for one scenario: the best attainable LoS count over the
/// feasible lattice and every position achieving it, ranked by surrogate
/// aggregate throughput (descending) with lexicographic position tie-break.
struct OracleResult {
    int max_nlos = 0;
    std::vector<OraclePoint> argmax;
    /// Per-point table over the whole feasible lattice, retained on request.
    std::optional<std::vector<OraclePoint>> all_points;
};

/// Exhaustive scan of the feasible lattice. Embarrassingly parallel; the
/// merged result is identical to a serial scan. threads == 0 picks the
/// hardware concurrency. Throws InfeasibleScenarioError on an empty
/// feasible subspace.
OracleResult exhaustive_search(const Scenario& scenario, bool keep_all_points = false,
                               unsigned threads = 0);

/// Comparison of a candidate position against the oracle.
struct CertificateReport {
    Vec3 position;
    bool pass = false;
    bool in_sp = false;
    int agent_nlos = 0;
    int max_nlos = 0;
    int gap = 0;
    /// 1-based rank within the oracle's throughput-ranked argmax set, or 0
    /// when the position is not in the set.
    std::size_t throughput_rank = 0;
};

/// Certifies that the position attains the oracle maximum. The position must
/// be a lattice point of the scenario's zone; anything else is rejected with
/// std::invalid_argument.
CertificateReport certify(const Vec3& agent_position, const OracleResult& oracle,
                          const Scenario& scenario);

} // namespace rltopa
