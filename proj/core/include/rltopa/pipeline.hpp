#pragma once

#include "rltopa/dqn.hpp"
#include "rltopa/oracle.hpp"
#include "rltopa/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rltopa {

inline constexpr std::string_view kRltopaVersion = "0.1.0";

enum class RunMode { Validate, Feasibility, Oracle, Train, Eval, Report };

/// Exit codes shared by the pipeline and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCertificationFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitInfeasible = 3;

struct PipelineOptions {
    std::filesystem::path out_dir = "out";
    /// Also write bulky per-step / per-point artifacts.
    bool trace = false;
    /// Replace the scenario's MCS table with a built-in one.
    std::optional<std::string> mcs_table_label;
    /// Checkpoint consumed by eval mode.
    std::filesystem::path policy_path;
};

RunMode parse_run_mode(std::string_view name);

/// Runs one mode end to end, writing artifacts under opts.out_dir. All file
/// output is byte-stable for identical inputs and seed sets. Returns the
/// process exit code.
int run_pipeline(Scenario scenario, RunMode mode, std::vector<std::uint64_t> seeds,
                 const PipelineOptions& opts, std::ostream& log);

/// Trace CSV text for one episode (header + one row per step).
std::string trace_csv(const EpisodeTrace& trace);

/// The four comparison positions 10 m (offset_distance_m) away from `chosen`
/// in -x / +x / +y / -y, clamped into the zone when needed.
std::vector<std::pair<std::string, Vec3>> offset_positions(const Vec3& chosen,
                                                           const Scenario& scenario,
                                                           std::ostream* warn_log = nullptr);

} // namespace rltopa
