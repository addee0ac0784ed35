#include "rltopa/pipeline.hpp"

#include "rltopa/distributions.hpp"
#include "rltopa/network_model.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rltopa {

using json = nlohmann::ordered_json;

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string vec_str(const Vec3& p) {
    return "(" + fmt_double(p.x) + ", " + fmt_double(p.y) + ", " + fmt_double(p.z) + ")";
}

std::string metrics_header(const std::vector<UserEquipment>& ues) {
    std::string h = "label,seed,x,y,z";
    for (const UserEquipment& ue : ues) h += ",r" + std::to_string(ue.id) + "_bps";
    h += ",aggregate_throughput_bps,mean_delay_s,jain_fairness,saturated\n";
    return h;
}

std::string metrics_row(const std::string& label, std::uint64_t seed, const Vec3& p,
                        const NetworkMetrics& m) {
    std::string row = label + "," + std::to_string(seed) + "," + fmt_double(p.x) + "," +
                      fmt_double(p.y) + "," + fmt_double(p.z);
    for (double r : m.per_ue_rate_bps) row += "," + fmt_double(r);
    row += "," + fmt_double(m.aggregate_throughput_bps);
    row += "," + fmt_double(m.mean_delay_s);
    row += "," + fmt_double(m.jain_fairness);
    row += m.saturated ? ",1\n" : ",0\n";
    return row;
}

std::string oracle_points_csv(const std::vector<OraclePoint>& points) {
    std::string out = "x,y,z,nlos,in_sp,aggregate_throughput_bps\n";
    for (const OraclePoint& p : points) {
        out += fmt_double(p.position.x) + "," + fmt_double(p.position.y) + "," +
               fmt_double(p.position.z) + "," + std::to_string(p.nlos) + ",1," +
               fmt_double(p.aggregate_throughput_bps) + "\n";
    }
    return out;
}

json scenario_json(const Scenario& sc) { return json::parse(emit_scenario(sc)); }

std::string building_tuple(const Building& b) {
    return "(" + fmt_double(b.x_min) + ", " + fmt_double(b.x_max) + ", " + fmt_double(b.y_min) +
           ", " + fmt_double(b.y_max) + ", " + fmt_double(b.z_min) + ", " + fmt_double(b.z_max) +
           ", " + std::to_string(b.floors) + ", " + std::to_string(b.x_rooms) + ", " +
           std::to_string(b.y_rooms) + ")";
}

NetworkMetrics metrics_at(const Vec3& p, const Scenario& sc) {
    return network_metrics(p, sc.ues, sc.venue, sc.radio, sc.mcs, sc.nlos_env);
}

int run_validate(const Scenario& sc, std::ostream& log) {
    log << "scenario '" << sc.name << "': valid\n";
    log << "  ue: " << sc.ues.size() << ", buildings: " << sc.venue.buildings.size()
        << ", mcs table: " << sc.mcs.label << "\n";
    log << "  zone lattice: " << sc.zone.count_x() << " x " << sc.zone.count_y() << " x "
        << sc.zone.count_z() << " points\n";
    return kExitOk;
}

int run_feasibility(const Scenario& sc, const PipelineOptions& opts, std::ostream& log) {
    const FeasibleRegion region = make_feasible_region(sc.ues, sc.radio, sc.mcs, sc.zone);
    std::string radii_csv = "ue_id,demanded_mcs,d_max_m\n";
    for (std::size_t i = 0; i < sc.ues.size(); ++i) {
        radii_csv += std::to_string(sc.ues[i].id) + "," +
                     std::to_string(sc.ues[i].demanded_mcs) + "," +
                     fmt_double(region.radii_m[i]) + "\n";
        log << "  ue " << sc.ues[i].id << ": d_max = " << fmt_double(region.radii_m[i]) << " m\n";
    }
    std::filesystem::create_directories(opts.out_dir);
    write_file(opts.out_dir / "sphere_radii.csv", radii_csv);

    const std::vector<Vec3> feasible = feasible_grid_points(region, sc.ues, sc.zone);
    const std::size_t lattice =
        sc.zone.count_x() * sc.zone.count_y() * sc.zone.count_z();
    log << "  feasible lattice points: " << feasible.size() << " of " << lattice << "\n";
    if (opts.trace) {
        std::string csv = "x,y,z\n";
        for (const Vec3& p : feasible) {
            csv += fmt_double(p.x) + "," + fmt_double(p.y) + "," + fmt_double(p.z) + "\n";
        }
        write_file(opts.out_dir / "feasible_points.csv", csv);
    }
    if (feasible.empty()) {
        log << "  infeasible scenario: the feasible subspace is empty\n";
        return kExitInfeasible;
    }
    return kExitOk;
}

int run_oracle(const Scenario& sc, const PipelineOptions& opts, std::ostream& log) {
    const OracleResult oracle = exhaustive_search(sc, opts.trace);
    log << "  oracle max nLoS: " << oracle.max_nlos << " of " << sc.ues.size() << "\n";
    log << "  argmax positions: " << oracle.argmax.size() << "\n";
    if (!oracle.argmax.empty()) {
        const OraclePoint& top = oracle.argmax.front();
        log << "  top position: " << vec_str(top.position)
            << " throughput: " << fmt_double(top.aggregate_throughput_bps) << " bit/s\n";
    }
    std::filesystem::create_directories(opts.out_dir);
    std::string csv = "rank,x,y,z,nlos,aggregate_throughput_bps\n";
    for (std::size_t i = 0; i < oracle.argmax.size(); ++i) {
        const OraclePoint& p = oracle.argmax[i];
        csv += std::to_string(i + 1) + "," + fmt_double(p.position.x) + "," +
               fmt_double(p.position.y) + "," + fmt_double(p.position.z) + "," +
               std::to_string(p.nlos) + "," + fmt_double(p.aggregate_throughput_bps) + "\n";
    }
    write_file(opts.out_dir / "oracle_argmax.csv", csv);
    if (oracle.all_points) {
        write_file(opts.out_dir / "oracle_points.csv", oracle_points_csv(*oracle.all_points));
    }
    return kExitOk;
}

int run_train(const Scenario& sc, const std::vector<std::uint64_t>& seeds,
              const PipelineOptions& opts, std::ostream& log) {
    std::filesystem::create_directories(opts.out_dir);
    std::string summary = "seed,best_x,best_y,best_z,best_reward,degenerate\n";
    for (std::uint64_t seed : seeds) {
        TrainConfig cfg = sc.train;
        cfg.seed = seed;
        const TrainResult result = train(sc, cfg);
        save_policy(result.net, opts.out_dir / ("policy_seed" + std::to_string(seed) + ".rltq"));

        std::string rewards = "episode,median_reward,best_reward\n";
        for (const EpisodeTrace& trace : result.episodes) {
            double best = 0.0;
            for (const StepRecord& s : trace.steps) best = std::max(best, s.reward);
            rewards += std::to_string(trace.episode) + "," +
                       fmt_double(median_step_reward(trace)) + "," + fmt_double(best) + "\n";
        }
        write_file(opts.out_dir / ("train_rewards_seed" + std::to_string(seed) + ".csv"), rewards);
        if (opts.trace) {
            std::string all;
            for (const EpisodeTrace& trace : result.episodes) {
                all += all.empty() ? trace_csv(trace)
                                   : trace_csv(trace).substr(trace_csv(trace).find('\n') + 1);
            }
            write_file(opts.out_dir / ("train_trace_seed" + std::to_string(seed) + ".csv"), all);
        }
        summary += std::to_string(seed) + "," + fmt_double(result.best.position.x) + "," +
                   fmt_double(result.best.position.y) + "," + fmt_double(result.best.position.z) +
                   "," + fmt_double(result.best.reward) + "," +
                   (result.best.degenerate ? "1\n" : "0\n");
        log << "  seed " << seed << ": best " << vec_str(result.best.position) << " reward "
            << fmt_double(result.best.reward) << "\n";
    }
    write_file(opts.out_dir / "train_summary.csv", summary);
    return kExitOk;
}

int run_eval(const Scenario& sc, const PipelineOptions& opts, std::ostream& log) {
    if (opts.policy_path.empty()) {
        throw ScenarioError("eval mode requires --policy <checkpoint>");
    }
    const QNetwork net = load_policy(opts.policy_path);
    const EpisodeTrace trace = evaluate(net, sc);
    const EpisodeTrace traces[] = {trace};
    const BestPosition best = extract_best_position(traces, sc);
    log << "  greedy best: " << vec_str(best.position) << " reward " << fmt_double(best.reward)
        << "\n";
    std::filesystem::create_directories(opts.out_dir);
    if (opts.trace) write_file(opts.out_dir / "eval_trace.csv", trace_csv(trace));
    std::string summary = "best_x,best_y,best_z,best_reward,degenerate\n";
    summary += fmt_double(best.position.x) + "," + fmt_double(best.position.y) + "," +
               fmt_double(best.position.z) + "," + fmt_double(best.reward) + "," +
               (best.degenerate ? "1\n" : "0\n");
    write_file(opts.out_dir / "eval_summary.csv", summary);
    return kExitOk;
}

int run_report(const Scenario& sc, const std::vector<std::uint64_t>& seeds,
               const PipelineOptions& opts, std::ostream& log) {
    if (!sc.baseline_position) {
        throw ScenarioError("report mode requires baseline_position in the scenario");
    }
    std::filesystem::create_directories(opts.out_dir);

    const OracleResult oracle = exhaustive_search(sc, opts.trace);
    log << "  oracle max nLoS: " << oracle.max_nlos << ", argmax positions: "
        << oracle.argmax.size() << "\n";
    if (oracle.all_points) {
        write_file(opts.out_dir / "oracle_points.csv", oracle_points_csv(*oracle.all_points));
    }

    std::string metrics_csv = metrics_header(sc.ues);
    std::string cert_csv = "seed,x,y,z,in_sp,agent_nlos,max_nlos,gap,throughput_rank,pass\n";
    std::vector<std::vector<double>> episode_rewards(
        static_cast<std::size_t>(sc.train.episodes));
    std::map<std::string, std::vector<double>> throughput_samples;
    std::map<std::string, std::vector<double>> delay_samples;
    const std::vector<std::string> label_order = {"chosen", "baseline", "left",
                                                  "right",  "front",    "behind"};
    std::ostringstream warn;
    std::size_t passed = 0;

    std::ostringstream per_seed_summary;
    for (std::uint64_t seed : seeds) {
        TrainConfig cfg = sc.train;
        cfg.seed = seed;
        const TrainResult result = train(sc, cfg);
        const EpisodeTrace eval_trace = evaluate(result.net, sc);

        std::vector<EpisodeTrace> all_traces = result.episodes;
        all_traces.push_back(eval_trace);
        const BestPosition chosen = extract_best_position(all_traces, sc);
        const CertificateReport cert = certify(chosen.position, oracle, sc);
        if (cert.pass) ++passed;

        save_policy(result.net, opts.out_dir / ("policy_seed" + std::to_string(seed) + ".rltq"));
        write_file(opts.out_dir / ("eval_trace_seed" + std::to_string(seed) + ".csv"),
                   trace_csv(eval_trace));
        if (opts.trace) {
            std::string all;
            for (const EpisodeTrace& trace : result.episodes) {
                const std::string csv = trace_csv(trace);
                all += all.empty() ? csv : csv.substr(csv.find('\n') + 1);
            }
            write_file(opts.out_dir / ("train_trace_seed" + std::to_string(seed) + ".csv"), all);
        }

        for (const EpisodeTrace& trace : result.episodes) {
            auto& pool = episode_rewards[static_cast<std::size_t>(trace.episode)];
            for (const StepRecord& s : trace.steps) pool.push_back(s.reward);
        }

        std::vector<std::pair<std::string, Vec3>> positions = {
            {"chosen", chosen.position}, {"baseline", *sc.baseline_position}};
        for (auto& [label, p] : offset_positions(chosen.position, sc, &warn)) {
            positions.emplace_back(label, p);
        }
        for (const auto& [label, p] : positions) {
            const NetworkMetrics m = metrics_at(p, sc);
            metrics_csv += metrics_row(label, seed, p, m);
            throughput_samples[label].push_back(m.aggregate_throughput_bps);
            delay_samples[label].push_back(m.mean_delay_s);
        }

        cert_csv += std::to_string(seed) + "," + fmt_double(cert.position.x) + "," +
                    fmt_double(cert.position.y) + "," + fmt_double(cert.position.z) + "," +
                    (cert.in_sp ? "1" : "0") + "," + std::to_string(cert.agent_nlos) + "," +
                    std::to_string(cert.max_nlos) + "," + std::to_string(cert.gap) + "," +
                    std::to_string(cert.throughput_rank) + "," + (cert.pass ? "1\n" : "0\n");
        std::ostringstream seed_line;
        seed_line << "  seed " << seed << ": chosen " << vec_str(chosen.position) << " reward "
                  << fmt_double(chosen.reward) << " certified " << (cert.pass ? "yes" : "no")
                  << " (nLoS " << cert.agent_nlos << "/" << cert.max_nlos << ")\n";
        per_seed_summary << seed_line.str();
        log << seed_line.str();
    }

    write_file(opts.out_dir / "metrics.csv", metrics_csv);
    write_file(opts.out_dir / "certificates.csv", cert_csv);

    for (std::size_t e = 0; e < episode_rewards.size(); ++e) {
        const DistributionSeries cdf =
            empirical_distribution(episode_rewards[e], DistributionKind::Cdf);
        write_file(opts.out_dir / ("reward_cdf_ep" + std::to_string(e + 1) + ".csv"),
                   distribution_csv(cdf, "reward"));
    }
    for (const std::string& label : label_order) {
        const DistributionSeries ccdf =
            empirical_distribution(throughput_samples.at(label), DistributionKind::Ccdf);
        write_file(opts.out_dir / ("throughput_ccdf_" + label + ".csv"),
                   distribution_csv(ccdf, "aggregate_throughput_bps"));
        const DistributionSeries cdf =
            empirical_distribution(delay_samples.at(label), DistributionKind::Cdf);
        write_file(opts.out_dir / ("delay_cdf_" + label + ".csv"),
                   distribution_csv(cdf, "mean_delay_s"));
    }

    json meta;
    meta["rltopa_version"] = std::string(kRltopaVersion);
    meta["mode"] = "report";
    meta["seeds"] = seeds;
    meta["trace"] = opts.trace;
    meta["scenario"] = scenario_json(sc);
    write_file(opts.out_dir / "run_metadata.json", meta.dump(2) + "\n");

    std::ostringstream summary;
    summary << "rltopa report v" << kRltopaVersion << "\n";
    summary << "scenario: " << sc.name << "\n";
    summary << "ue count: " << sc.ues.size() << ", mcs table: " << sc.mcs.label << "\n";
    summary << "buildings (x_min, x_max, y_min, y_max, z_min, z_max, floors, x_rooms, y_rooms):\n";
    for (const Building& b : sc.venue.buildings) {
        summary << "  " << building_tuple(b) << "\n";
    }
    summary << "oracle max nLoS: " << oracle.max_nlos << " of " << sc.ues.size() << "\n";
    if (!oracle.argmax.empty()) {
        summary << "oracle top position: " << vec_str(oracle.argmax.front().position)
                << " throughput " << fmt_double(oracle.argmax.front().aggregate_throughput_bps)
                << " bit/s\n";
    }
    summary << "baseline position: " << vec_str(*sc.baseline_position) << "\n";
    summary << per_seed_summary.str();
    summary << "certified seeds: " << passed << "/" << seeds.size() << "\n";
    const std::string warnings = warn.str();
    if (!warnings.empty()) summary << warnings;
    write_file(opts.out_dir / "summary.txt", summary.str());

    return passed == seeds.size() ? kExitOk : kExitCertificationFailed;
}

} // namespace

RunMode parse_run_mode(std::string_view name) {
    if (name == "validate") return RunMode::Validate;
    if (name == "feasibility") return RunMode::Feasibility;
    if (name == "oracle") return RunMode::Oracle;
    if (name == "train") return RunMode::Train;
    if (name == "eval") return RunMode::Eval;
    if (name == "report") return RunMode::Report;
    throw ScenarioError("unknown mode: " + std::string(name));
}

std::string trace_csv(const EpisodeTrace& trace) {
    std::string out = "episode,step,x,y,z,action,reward,nlos,in_sp\n";
    for (const StepRecord& s : trace.steps) {
        out += std::to_string(s.episode) + "," + std::to_string(s.step) + "," +
               fmt_double(s.position.x) + "," + fmt_double(s.position.y) + "," +
               fmt_double(s.position.z) + "," + std::to_string(static_cast<int>(s.action)) + "," +
               fmt_double(s.reward) + "," + std::to_string(s.nlos) + "," +
               (s.in_sp ? "1\n" : "0\n");
    }
    return out;
}

std::vector<std::pair<std::string, Vec3>> offset_positions(const Vec3& chosen,
                                                           const Scenario& scenario,
                                                           std::ostream* warn_log) {
    const double d = scenario.offset_distance_m;
    const std::vector<std::pair<std::string, Vec3>> raw = {
        {"left", chosen + Vec3{-d, 0.0, 0.0}},
        {"right", chosen + Vec3{d, 0.0, 0.0}},
        {"front", chosen + Vec3{0.0, d, 0.0}},
        {"behind", chosen + Vec3{0.0, -d, 0.0}},
    };
    std::vector<std::pair<std::string, Vec3>> result;
    for (const auto& [label, p] : raw) {
        Vec3 clamped = p;
        clamped.x = std::clamp(clamped.x, scenario.zone.min_corner.x, scenario.zone.max_corner.x);
        clamped.y = std::clamp(clamped.y, scenario.zone.min_corner.y, scenario.zone.max_corner.y);
        clamped.z = std::clamp(clamped.z, scenario.zone.min_corner.z, scenario.zone.max_corner.z);
        if (!(clamped == p) && warn_log != nullptr) {
            *warn_log << "warning: offset position '" << label << "' clamped into the zone\n";
        }
        result.emplace_back(label, clamped);
    }
    return result;
}

int run_pipeline(Scenario scenario, RunMode mode, std::vector<std::uint64_t> seeds,
                 const PipelineOptions& opts, std::ostream& log) {
    try {
        if (opts.mcs_table_label) {
            scenario.mcs = builtin_mcs_table(*opts.mcs_table_label);
        }
        scenario.validate();
        if (seeds.empty()) seeds = {1};

        switch (mode) {
        case RunMode::Validate: return run_validate(scenario, log);
        case RunMode::Feasibility: return run_feasibility(scenario, opts, log);
        case RunMode::Oracle: return run_oracle(scenario, opts, log);
        case RunMode::Train: return run_train(scenario, seeds, opts, log);
        case RunMode::Eval: return run_eval(scenario, opts, log);
        case RunMode::Report: return run_report(scenario, seeds, opts, log);
        }
        return kExitConfigError;
    } catch (const InfeasibleScenarioError& e) {
        log << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ScenarioError& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

} // namespace rltopa
