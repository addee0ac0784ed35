// Command line front end:
//   rltopa <mode> --scenario <path> [--seeds a..b] [--out <dir>] [--trace]
//          [--mcs-table <label>] [--policy <checkpoint>]
// Modes: validate, feasibility, oracle, train, eval, report.

#include "rltopa/pipeline.hpp"
#include "rltopa/scenario.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

// "7", "1,2,5" or "1..30".
std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
    std::vector<std::uint64_t> seeds;
    if (spec.empty()) return seeds;
    const auto range_pos = spec.find("..");
    if (range_pos != std::string::npos) {
        const std::uint64_t lo = std::stoull(spec.substr(0, range_pos));
        const std::uint64_t hi = std::stoull(spec.substr(range_pos + 2));
        if (hi < lo) throw std::invalid_argument("--seeds: descending range");
        for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        return seeds;
    }
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = spec.find(',', start);
        const std::string tok = spec.substr(start, comma - start);
        if (!tok.empty()) seeds.push_back(std::stoull(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return seeds;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV access-point positioning: feasibility, exhaustive oracle, DQN training and "
                 "surrogate network reporting"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string seeds_spec;
    std::string out_dir = "out";
    std::string mcs_label;
    std::string policy_path;
    bool trace = false;

    const std::vector<std::string> modes = {"validate", "feasibility", "oracle",
                                            "train",    "eval",        "report"};
    for (const std::string& mode : modes) {
        CLI::App* sub = app.add_subcommand(mode);
        sub->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
        sub->add_option("--seeds", seeds_spec, "Seed list: '7', '1,2,5' or '1..30'");
        sub->add_option("--out", out_dir, "Output directory (default: out)");
        sub->add_flag("--trace", trace, "Also write per-step / per-point artifacts");
        sub->add_option("--mcs-table", mcs_label, "Override the scenario's built-in MCS table");
        if (mode == "eval") {
            sub->add_option("--policy", policy_path, "Policy checkpoint to evaluate")->required();
        }
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string mode_name = app.get_subcommands().front()->get_name();
        const rltopa::RunMode mode = rltopa::parse_run_mode(mode_name);
        const rltopa::Scenario scenario = rltopa::load_scenario(scenario_path);

        rltopa::PipelineOptions opts;
        opts.out_dir = out_dir;
        opts.trace = trace;
        if (!mcs_label.empty()) opts.mcs_table_label = mcs_label;
        if (!policy_path.empty()) opts.policy_path = policy_path;

        std::cout << "rltopa " << rltopa::kRltopaVersion << " — " << mode_name << " '"
                  << scenario.name << "'\n";
        return rltopa::run_pipeline(scenario, mode, parse_seeds(seeds_spec), opts, std::cout);
    } catch (const rltopa::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rltopa::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rltopa::kExitConfigError;
    }
}
