#pragma once

#include "rltopa/feasibility.hpp"
#include "rltopa/geometry.hpp"
#include "rltopa/propagation.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rltopa {

/// Scenario file or invariant violation; the message carries the offending
/// field path.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Episode timing. An episode is total_steps() decision slots of
/// decision_interval_s each; the first warmup_steps() slots collect
/// experience without learning updates.
struct EpisodeConfig {
    double duration_s = 300.0;
    double decision_interval_s = 0.1;
    double warmup_s = 2.1;

    void validate() const;
    int total_steps() const;
    int warmup_steps() const;
};

/// Exploration rate: starts at `start`, decays polynomially to `end` over
/// `horizon_steps` and stays there. horizon_steps == 0 means "derive from
/// episodes x steps-per-episode" at training time.
struct EpsilonSchedule {
    double start = 1.0;
    double end = 0.1;
    double power = 1.0;
    long horizon_steps = 0;

    void validate() const;
    double value(long step) const;
};

/// DQN training hyperparameters.
struct TrainConfig {
    int episodes = 10;
    double learning_rate = 1e-2;
    double gamma = 0.99;
    int target_sync_steps = 250;
    std::size_t buffer_capacity = 1'000'000;
    int batch_size = 64;
    EpsilonSchedule epsilon;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Full experiment description: venue, radio, demands, positioning zone and
/// the training setup. Loaded from a versioned JSON file.
struct Scenario {
    std::string name;
    Venue venue;
    RadioConfig radio;
    McsTable mcs;
    PositioningZone zone;
    std::vector<UserEquipment> ues;
    std::optional<Vec3> baseline_position;
    double offset_distance_m = 10.0;
    NlosEnvironment nlos_env;
    EpisodeConfig episode;
    TrainConfig train;

    /// Re-checks every cross-field invariant; throws ScenarioError.
    void validate() const;
};

/// Parses and validates a scenario file. Random UE placement blocks are
/// expanded into concrete positions here, so the returned scenario always
/// carries an explicit UE list.
Scenario load_scenario(const std::filesystem::path& path);

/// Same, from an in-memory JSON document.
Scenario parse_scenario(const std::string& json_text);

/// Serializes the resolved scenario; parse_scenario(emit_scenario(s)) yields
/// an equal scenario.
std::string emit_scenario(const Scenario& scenario);

} // namespace rltopa
