#pragma once

#include "rltopa/rl_env.hpp"
#include "rltopa/rng.hpp"
#include "rltopa/scenario.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace rltopa {

/// Fully connected network with rectifier hidden layers and a linear output,
/// parameters held in one flat array (row-major weights, then biases, layer
/// by layer). The default shape is the 5 -> 32 -> 32 -> 7 Q-function.
class QNetwork {
public:
    explicit QNetwork(std::vector<int> layer_dims = {5, 32, 32, 7});

    /// He-style uniform weight init, zero biases. Deterministic per seed.
    void init_weights(std::uint64_t seed);

    const std::vector<int>& dims() const { return dims_; }
    int input_dim() const { return dims_.front(); }
    int output_dim() const { return dims_.back(); }
    std::size_t parameter_count() const { return params_.size(); }
    std::vector<double>& parameters() { return params_; }
    const std::vector<double>& parameters() const { return params_; }

    std::vector<double> forward(std::span<const double> input) const;

    /// Layer activations of one forward pass, kept for backprop.
    struct Tape {
        std::vector<std::vector<double>> activations;
    };

    std::vector<double> forward(std::span<const double> input, Tape& tape) const;

    /// Accumulates dLoss/dparameters into `grad` (flat layout matching
    /// parameters()) given dLoss/doutput for the pass recorded in `tape`.
    void backward(const Tape& tape, std::span<const double> dloss_doutput,
                  std::span<double> grad) const;

private:
    std::vector<int> dims_;
    std::vector<double> params_;
    std::vector<std::size_t> weight_offsets_;
    std::vector<std::size_t> bias_offsets_;
};

/// One experience tuple.
struct Transition {
    std::array<double, 5> obs{};
    int action = 0;
    double reward = 0.0;
    std::array<double, 5> next_obs{};
    bool done = false;
};

/// Fixed-capacity ring with FIFO eviction and uniform sampling.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(const Transition& t);
    std::size_t size() const;
    std::size_t capacity() const { return capacity_; }

    /// Entry by age; index 0 is the oldest retained transition.
    const Transition& oldest(std::size_t index) const;

    /// Uniform sample with replacement.
    std::vector<Transition> sample(int batch_size, Rng& rng) const;

private:
    std::vector<Transition> data_;
    std::size_t capacity_;
    std::size_t next_ = 0;
    bool full_ = false;
};

/// Adam first/second moment state; t counts completed steps.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    long t = 0;

    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

/// One Adam update with beta1=0.9, beta2=0.999, eps=1e-8 and bias
/// correction. Throws std::invalid_argument on shape mismatch.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double learning_rate);

/// Mean squared TD error of the batch under the current networks, without
/// touching any parameters.
double td_loss(const QNetwork& net, const QNetwork& target, std::span<const Transition> batch,
               double gamma);

/// Accumulates dLoss/dparameters of the batch TD loss into `grad` and
/// returns the loss. Shared by td_update and the gradient-check tests.
double td_gradient(const QNetwork& net, const QNetwork& target,
                   std::span<const Transition> batch, double gamma, std::span<double> grad);

/// One TD step: targets y = r + gamma * max_a' Q_target(s', a') for
/// non-terminal transitions (y = r for terminal), MSE over the taken
/// actions, one Adam step on `net`. Returns the pre-update loss.
double td_update(QNetwork& net, const QNetwork& target, std::span<const Transition> batch,
                 const TrainConfig& config, AdamState& adam);

/// Epsilon-greedy action; greedy ties break toward the lowest action index.
Action act(const QNetwork& net, const Observation& obs, double epsilon, Rng& rng);

/// One recorded decision slot. `position` is where the UAV ended up after
/// the action, i.e. where the reward was measured.
struct StepRecord {
    int episode = 0;
    int step = 0;
    Vec3 position;
    Action action = Action::Stay;
    double reward = 0.0;
    int nlos = 0;
    bool in_sp = false;
};

struct EpisodeTrace {
    int episode = 0;
    Vec3 start_position;
    std::vector<StepRecord> steps;
};

double median_step_reward(const EpisodeTrace& trace);

struct BestPosition {
    Vec3 position;
    double reward = 0.0;
    /// Set when every recorded reward was zero and the start position is
    /// returned as a fallback.
    bool degenerate = false;
};

struct TrainResult {
    QNetwork net;
    std::vector<EpisodeTrace> episodes;
    BestPosition best;
};

/// Full training run: `episodes` episodes of total_steps() slots each. The
/// per-episode warmup slots only collect transitions; afterwards one TD
/// update runs per slot once the buffer holds a batch. Deterministic per
/// (scenario, config) including config.seed.
TrainResult train(const Scenario& scenario, const TrainConfig& config);

/// One greedy episode (epsilon = 0). Network parameters are never modified.
EpisodeTrace evaluate(const QNetwork& net, const Scenario& scenario);

/// Position of the maximum recorded reward across all traces; ties prefer
/// the higher surrogate aggregate throughput, then the earliest step.
BestPosition extract_best_position(std::span<const EpisodeTrace> traces,
                                   const Scenario& scenario);

/// Versioned flat binary checkpoint: magic "RLTQ", format version, layer
/// dims, then parameters as little-endian 64-bit floats.
void save_policy(const QNetwork& net, const std::filesystem::path& path);
QNetwork load_policy(const std::filesystem::path& path);

} // namespace rltopa
