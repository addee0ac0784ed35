#include "rltopa/rl_env.hpp"

#include <stdexcept>

namespace rltopa {

namespace {

double scale_axis(double v, double lo, double hi) {
    return 2.0 * (v - lo) / (hi - lo) - 1.0;
}

} // namespace

UavEnv::UavEnv(const Scenario& scenario) {
    scenario.validate();
    venue_ = scenario.venue;
    ues_ = scenario.ues;
    zone_ = scenario.zone;
    total_steps_ = scenario.episode.total_steps();
    warmup_steps_ = scenario.episode.warmup_steps();
    for (const UserEquipment& ue : ues_) ue_positions_.push_back(ue.position);
    region_ = make_feasible_region(ues_, scenario.radio, scenario.mcs, zone_);

    // Early-exit scan for feasibility; the full lattice is never materialized.
    bool any_feasible = false;
    const std::size_t nx = zone_.count_x(), ny = zone_.count_y(), nz = zone_.count_z();
    for (std::size_t ix = 0; ix < nx && !any_feasible; ++ix) {
        for (std::size_t iy = 0; iy < ny && !any_feasible; ++iy) {
            for (std::size_t iz = 0; iz < nz && !any_feasible; ++iz) {
                any_feasible = in_feasible_subspace(zone_.lattice_point(ix, iy, iz), region_, ues_);
            }
        }
    }
    if (!any_feasible) {
        throw InfeasibleScenarioError("scenario '" + scenario.name +
                                      "': the feasible subspace is empty");
    }
    reset(scenario.train.seed);
}

Observation UavEnv::reset(std::uint64_t seed) {
    seed_ = seed;
    const Vec3 c = zone_.centroid();
    ix_ = zone_.snap_index_x(c.x);
    iy_ = zone_.snap_index_y(c.y);
    iz_ = zone_.snap_index_z(c.z);
    step_count_ = 0;
    evaluate_current();
    return observe();
}

void UavEnv::evaluate_current() {
    position_ = zone_.lattice_point(ix_, iy_, iz_);
    nlos_ = count_los(position_, ue_positions_, venue_);
    in_sp_ = in_feasible_subspace(position_, region_, ues_);
}

StepOutcome UavEnv::step(Action action) {
    if (done()) throw std::logic_error("UavEnv::step: episode is finished");

    std::ptrdiff_t dx = 0, dy = 0, dz = 0;
    switch (action) {
    case Action::Stay: break;
    case Action::PosX: dx = 1; break;
    case Action::NegX: dx = -1; break;
    case Action::PosY: dy = 1; break;
    case Action::NegY: dy = -1; break;
    case Action::PosZ: dz = 1; break;
    case Action::NegZ: dz = -1; break;
    default: throw std::invalid_argument("UavEnv::step: unknown action");
    }

    const auto nx = static_cast<std::ptrdiff_t>(zone_.count_x());
    const auto ny = static_cast<std::ptrdiff_t>(zone_.count_y());
    const auto nz = static_cast<std::ptrdiff_t>(zone_.count_z());
    const auto cx = static_cast<std::ptrdiff_t>(ix_) + dx;
    const auto cy = static_cast<std::ptrdiff_t>(iy_) + dy;
    const auto cz = static_cast<std::ptrdiff_t>(iz_) + dz;
    // Moves past the zone boundary clamp: the UAV stays where it is.
    if (cx >= 0 && cx < nx && cy >= 0 && cy < ny && cz >= 0 && cz < nz) {
        ix_ = static_cast<std::size_t>(cx);
        iy_ = static_cast<std::size_t>(cy);
        iz_ = static_cast<std::size_t>(cz);
    }

    evaluate_current();
    ++step_count_;

    StepOutcome out;
    out.observation = observe();
    out.reward = in_sp_ ? static_cast<double>(nlos_) / static_cast<double>(ues_.size()) : 0.0;
    out.done = done();
    out.info = StepInfo{nlos_, position_, in_sp_};
    return out;
}

Observation UavEnv::observe() const {
    Observation obs;
    obs.x_hat = scale_axis(position_.x, zone_.min_corner.x, zone_.max_corner.x);
    obs.y_hat = scale_axis(position_.y, zone_.min_corner.y, zone_.max_corner.y);
    obs.z_hat = scale_axis(position_.z, zone_.min_corner.z, zone_.max_corner.z);
    obs.nlos_norm = static_cast<double>(nlos_) / static_cast<double>(ues_.size());
    obs.in_sp = in_sp_ ? 1.0 : 0.0;
    return obs;
}

double UavEnv::reward_at(const Vec3& p) const {
    if (!in_feasible_subspace(p, region_, ues_)) return 0.0;
    return static_cast<double>(count_los(p, ue_positions_, venue_)) /
           static_cast<double>(ues_.size());
}

bool UavEnv::in_feasible(const Vec3& p) const { return in_feasible_subspace(p, region_, ues_); }

} // namespace rltopa
