#include "rltopa/dqn.hpp"

#include "rltopa/network_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>
#include <tuple>

namespace rltopa {

QNetwork::QNetwork(std::vector<int> layer_dims) : dims_(std::move(layer_dims)) {
    if (dims_.size() < 2) throw std::invalid_argument("QNetwork: need at least two layer dims");
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
        if (dims_[l] < 1 || dims_[l + 1] < 1) {
            throw std::invalid_argument("QNetwork: layer dims must be positive");
        }
        weight_offsets_.push_back(total);
        total += static_cast<std::size_t>(dims_[l]) * static_cast<std::size_t>(dims_[l + 1]);
        bias_offsets_.push_back(total);
        total += static_cast<std::size_t>(dims_[l + 1]);
    }
    params_.assign(total, 0.0);
}

void QNetwork::init_weights(std::uint64_t seed) {
    Rng rng(seed);
    std::fill(params_.begin(), params_.end(), 0.0);
    for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
        const auto fan_in = static_cast<double>(dims_[l]);
        const double limit = std::sqrt(6.0 / fan_in);
        const std::size_t n =
            static_cast<std::size_t>(dims_[l]) * static_cast<std::size_t>(dims_[l + 1]);
        for (std::size_t i = 0; i < n; ++i) {
            params_[weight_offsets_[l] + i] = rng.uniform_range(-limit, limit);
        }
    }
}

std::vector<double> QNetwork::forward(std::span<const double> input) const {
    Tape tape;
    return forward(input, tape);
}

std::vector<double> QNetwork::forward(std::span<const double> input, Tape& tape) const {
    if (input.size() != static_cast<std::size_t>(dims_.front())) {
        throw std::invalid_argument("QNetwork::forward: input size mismatch");
    }
    tape.activations.clear();
    tape.activations.emplace_back(input.begin(), input.end());
    const std::size_t layers = dims_.size() - 1;
    for (std::size_t l = 0; l < layers; ++l) {
        const int in_dim = dims_[l];
        const int out_dim = dims_[l + 1];
        const double* w = params_.data() + weight_offsets_[l];
        const double* b = params_.data() + bias_offsets_[l];
        const std::vector<double>& x = tape.activations.back();
        std::vector<double> y(static_cast<std::size_t>(out_dim));
        for (int o = 0; o < out_dim; ++o) {
            double acc = b[o];
            const double* row = w + static_cast<std::size_t>(o) * in_dim;
            for (int i = 0; i < in_dim; ++i) acc += row[i] * x[static_cast<std::size_t>(i)];
            if (l + 1 < layers) acc = acc > 0.0 ? acc : 0.0; // rectifier on hidden layers
            y[static_cast<std::size_t>(o)] = acc;
        }
        tape.activations.push_back(std::move(y));
    }
    return tape.activations.back();
}

void QNetwork::backward(const Tape& tape, std::span<const double> dloss_doutput,
                        std::span<double> grad) const {
    if (grad.size() != params_.size()) {
        throw std::invalid_argument("QNetwork::backward: gradient size mismatch");
    }
    if (tape.activations.size() != dims_.size()) {
        throw std::invalid_argument("QNetwork::backward: tape does not match network");
    }
    std::vector<double> delta(dloss_doutput.begin(), dloss_doutput.end());
    for (std::size_t l = dims_.size() - 1; l-- > 0;) {
        const int in_dim = dims_[l];
        const int out_dim = dims_[l + 1];
        const double* w = params_.data() + weight_offsets_[l];
        const std::vector<double>& x = tape.activations[l];
        double* gw = grad.data() + weight_offsets_[l];
        double* gb = grad.data() + bias_offsets_[l];
        for (int o = 0; o < out_dim; ++o) {
            const double d = delta[static_cast<std::size_t>(o)];
            gb[o] += d;
            double* grow = gw + static_cast<std::size_t>(o) * in_dim;
            for (int i = 0; i < in_dim; ++i) grow[i] += d * x[static_cast<std::size_t>(i)];
        }
        if (l == 0) break;
        std::vector<double> prev(static_cast<std::size_t>(in_dim), 0.0);
        for (int i = 0; i < in_dim; ++i) {
            if (x[static_cast<std::size_t>(i)] <= 0.0) continue; // dead rectifier unit
            double acc = 0.0;
            for (int o = 0; o < out_dim; ++o) {
                acc += w[static_cast<std::size_t>(o) * in_dim + i] *
                       delta[static_cast<std::size_t>(o)];
            }
            prev[static_cast<std::size_t>(i)] = acc;
        }
        delta = std::move(prev);
    }
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("ReplayBuffer: zero capacity");
}

void ReplayBuffer::push(const Transition& t) {
    if (data_.size() < capacity_) {
        data_.push_back(t);
        next_ = data_.size() % capacity_;
        full_ = data_.size() == capacity_;
        return;
    }
    data_[next_] = t;
    next_ = (next_ + 1) % capacity_;
}

std::size_t ReplayBuffer::size() const { return data_.size(); }

const Transition& ReplayBuffer::oldest(std::size_t index) const {
    if (index >= data_.size()) throw std::out_of_range("ReplayBuffer::oldest");
    if (!full_) return data_[index];
    return data_[(next_ + index) % capacity_];
}

std::vector<Transition> ReplayBuffer::sample(int batch_size, Rng& rng) const {
    if (data_.empty()) throw std::logic_error("ReplayBuffer::sample: empty buffer");
    std::vector<Transition> batch;
    batch.reserve(static_cast<std::size_t>(batch_size));
    for (int i = 0; i < batch_size; ++i) {
        batch.push_back(data_[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(data_.size())))]);
    }
    return batch;
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double learning_rate) {
    if (params.size() != grads.size() || params.size() != state.m.size() ||
        params.size() != state.v.size()) {
        throw std::invalid_argument("adam_step: shape mismatch");
    }
    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;
    state.t += 1;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * grads[i];
        state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * grads[i] * grads[i];
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= learning_rate * m_hat / (std::sqrt(v_hat) + eps);
    }
}

namespace {

double td_target(const QNetwork& target, const Transition& t, double gamma) {
    if (t.done) return t.reward;
    const std::vector<double> q_next = target.forward(t.next_obs);
    return t.reward + gamma * *std::max_element(q_next.begin(), q_next.end());
}

} // namespace

double td_loss(const QNetwork& net, const QNetwork& target, std::span<const Transition> batch,
               double gamma) {
    if (batch.empty()) throw std::invalid_argument("td_loss: empty batch");
    double loss = 0.0;
    for (const Transition& t : batch) {
        const std::vector<double> q = net.forward(t.obs);
        const double diff = q[static_cast<std::size_t>(t.action)] - td_target(target, t, gamma);
        loss += diff * diff;
    }
    return loss / static_cast<double>(batch.size());
}

double td_gradient(const QNetwork& net, const QNetwork& target,
                   std::span<const Transition> batch, double gamma, std::span<double> grad) {
    if (batch.empty()) throw std::invalid_argument("td_gradient: empty batch");
    const auto batch_size = static_cast<double>(batch.size());
    std::vector<double> dout(static_cast<std::size_t>(net.output_dim()), 0.0);
    double loss = 0.0;
    for (const Transition& t : batch) {
        QNetwork::Tape tape;
        const std::vector<double> q = net.forward(t.obs, tape);
        const double diff = q[static_cast<std::size_t>(t.action)] - td_target(target, t, gamma);
        loss += diff * diff;
        std::fill(dout.begin(), dout.end(), 0.0);
        dout[static_cast<std::size_t>(t.action)] = 2.0 * diff / batch_size;
        net.backward(tape, dout, grad);
    }
    return loss / batch_size;
}

double td_update(QNetwork& net, const QNetwork& target, std::span<const Transition> batch,
                 const TrainConfig& config, AdamState& adam) {
    std::vector<double> grad(net.parameter_count(), 0.0);
    const double loss = td_gradient(net, target, batch, config.gamma, grad);
    adam_step(net.parameters(), grad, adam, config.learning_rate);
    return loss;
}

Action act(const QNetwork& net, const Observation& obs, double epsilon, Rng& rng) {
    if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("act: epsilon out of [0,1]");
    if (epsilon > 0.0 && rng.uniform() < epsilon) {
        return static_cast<Action>(rng.uniform_int(kActionCount));
    }
    const auto arr = obs.as_array();
    const std::vector<double> q = net.forward(arr);
    int best = 0;
    for (int a = 1; a < kActionCount; ++a) {
        if (q[static_cast<std::size_t>(a)] > q[static_cast<std::size_t>(best)]) best = a;
    }
    return static_cast<Action>(best);
}

double median_step_reward(const EpisodeTrace& trace) {
    if (trace.steps.empty()) throw std::invalid_argument("median_step_reward: empty trace");
    std::vector<double> rewards;
    rewards.reserve(trace.steps.size());
    for (const StepRecord& s : trace.steps) rewards.push_back(s.reward);
    std::sort(rewards.begin(), rewards.end());
    const std::size_t n = rewards.size();
    return n % 2 == 1 ? rewards[n / 2] : (rewards[n / 2 - 1] + rewards[n / 2]) / 2.0;
}

TrainResult train(const Scenario& scenario, const TrainConfig& config) {
    config.validate();
    UavEnv env(scenario);

    QNetwork net;
    net.init_weights(derive_seed(config.seed, 1));
    QNetwork target = net;
    ReplayBuffer buffer(config.buffer_capacity);
    AdamState adam(net.parameter_count());
    Rng rng(derive_seed(config.seed, 2));

    EpsilonSchedule schedule = config.epsilon;
    if (schedule.horizon_steps <= 0) {
        schedule.horizon_steps =
            static_cast<long>(config.episodes) * static_cast<long>(env.total_steps());
    }

    TrainResult result{std::move(net), {}, {}};
    long global_step = 0;
    long updates = 0;
    for (int episode = 0; episode < config.episodes; ++episode) {
        Observation obs = env.reset(config.seed);
        EpisodeTrace trace;
        trace.episode = episode;
        trace.start_position = env.position();
        trace.steps.reserve(static_cast<std::size_t>(env.total_steps()));
        for (int s = 0; s < env.total_steps(); ++s) {
            const double eps = schedule.value(global_step);
            const Action action = act(result.net, obs, eps, rng);
            const StepOutcome out = env.step(action);

            buffer.push(Transition{obs.as_array(), static_cast<int>(action), out.reward,
                                   out.observation.as_array(), out.done});
            trace.steps.push_back(StepRecord{episode, s, out.info.position, action, out.reward,
                                             out.info.nlos, out.info.in_sp});
            obs = out.observation;

            if (s >= env.warmup_steps() &&
                buffer.size() >= static_cast<std::size_t>(config.batch_size)) {
                const std::vector<Transition> batch = buffer.sample(config.batch_size, rng);
                td_update(result.net, target, batch, config, adam);
                ++updates;
                if (updates % config.target_sync_steps == 0) {
                    target.parameters() = result.net.parameters();
                }
            }
            ++global_step;
        }
        result.episodes.push_back(std::move(trace));
    }
    result.best = extract_best_position(result.episodes, scenario);
    return result;
}

EpisodeTrace evaluate(const QNetwork& net, const Scenario& scenario) {
    UavEnv env(scenario);
    Rng rng(0); // never consulted at epsilon = 0
    Observation obs = env.reset();
    EpisodeTrace trace;
    trace.episode = -1;
    trace.start_position = env.position();
    trace.steps.reserve(static_cast<std::size_t>(env.total_steps()));
    for (int s = 0; s < env.total_steps(); ++s) {
        const Action action = act(net, obs, 0.0, rng);
        const StepOutcome out = env.step(action);
        trace.steps.push_back(
            StepRecord{-1, s, out.info.position, action, out.reward, out.info.nlos, out.info.in_sp});
        obs = out.observation;
    }
    return trace;
}

BestPosition extract_best_position(std::span<const EpisodeTrace> traces,
                                   const Scenario& scenario) {
    bool any = false;
    double best_reward = 0.0;
    for (const EpisodeTrace& trace : traces) {
        for (const StepRecord& s : trace.steps) {
            any = true;
            best_reward = std::max(best_reward, s.reward);
        }
    }
    if (!any) throw std::invalid_argument("extract_best_position: no recorded steps");

    if (best_reward <= 0.0) {
        return BestPosition{traces.front().start_position, 0.0, true};
    }

    // Among positions tied on reward, prefer the higher surrogate aggregate
    // throughput, then the earliest visit.
    std::map<std::tuple<double, double, double>, double> throughput_cache;
    const auto throughput_at = [&](const Vec3& p) {
        const auto key = std::make_tuple(p.x, p.y, p.z);
        auto it = throughput_cache.find(key);
        if (it != throughput_cache.end()) return it->second;
        const NetworkMetrics m = network_metrics(p, scenario.ues, scenario.venue, scenario.radio,
                                                 scenario.mcs, scenario.nlos_env);
        throughput_cache.emplace(key, m.aggregate_throughput_bps);
        return m.aggregate_throughput_bps;
    };

    const Vec3* best_pos = nullptr;
    double best_throughput = 0.0;
    for (const EpisodeTrace& trace : traces) {
        for (const StepRecord& s : trace.steps) {
            if (s.reward != best_reward) continue;
            if (best_pos != nullptr && s.position == *best_pos) continue;
            const double tp = throughput_at(s.position);
            if (best_pos == nullptr || tp > best_throughput) {
                best_pos = &s.position;
                best_throughput = tp;
            }
        }
    }
    return BestPosition{*best_pos, best_reward, false};
}

namespace {

void put_u32(std::ofstream& out, std::uint32_t v) {
    const unsigned char bytes[4] = {
        static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
        static_cast<unsigned char>((v >> 16) & 0xff), static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

std::uint32_t get_u32(std::ifstream& in) {
    unsigned char bytes[4];
    in.read(reinterpret_cast<char*>(bytes), 4);
    return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
           (static_cast<std::uint32_t>(bytes[2]) << 16) |
           (static_cast<std::uint32_t>(bytes[3]) << 24);
}

void put_f64(std::ofstream& out, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_f64(std::ifstream& in) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char*>(bytes), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

constexpr char kPolicyMagic[4] = {'R', 'L', 'T', 'Q'};
constexpr std::uint32_t kPolicyVersion = 1;

} // namespace

void save_policy(const QNetwork& net, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_policy: cannot open " + path.string());
    out.write(kPolicyMagic, 4);
    put_u32(out, kPolicyVersion);
    put_u32(out, static_cast<std::uint32_t>(net.dims().size()));
    for (int d : net.dims()) put_u32(out, static_cast<std::uint32_t>(d));
    for (double p : net.parameters()) put_f64(out, p);
    if (!out) throw std::runtime_error("save_policy: write failed for " + path.string());
}

QNetwork load_policy(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_policy: cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kPolicyMagic, 4) != 0) {
        throw std::runtime_error("load_policy: bad magic in " + path.string());
    }
    const std::uint32_t version = get_u32(in);
    if (version != kPolicyVersion) {
        throw std::runtime_error("load_policy: unsupported version " + std::to_string(version));
    }
    const std::uint32_t n_dims = get_u32(in);
    if (n_dims < 2 || n_dims > 64) throw std::runtime_error("load_policy: corrupt layer count");
    std::vector<int> dims;
    for (std::uint32_t i = 0; i < n_dims; ++i) dims.push_back(static_cast<int>(get_u32(in)));
    QNetwork net(dims);
    for (double& p : net.parameters()) p = get_f64(in);
    if (!in) throw std::runtime_error("load_policy: truncated file " + path.string());
    return net;
}

} // namespace rltopa
