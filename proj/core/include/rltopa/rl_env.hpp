#pragma once

#include "rltopa/feasibility.hpp"
#include "rltopa/geometry.hpp"
#include "rltopa/scenario.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>

namespace rltopa {

/// 7-way discrete move: hold position or one grid step along an axis.
enum class Action : int {
    Stay = 0,
    PosX = 1,
    NegX = 2,
    PosY = 3,
    NegY = 4,
    PosZ = 5,
    NegZ = 6,
};

inline constexpr int kActionCount = 7;

/// Raised when the feasible subspace of a scenario is empty.
struct InfeasibleScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Five scaled floats: UAV coordinates mapped from the zone extent to
/// [-1, 1], the LoS fraction, and the feasible-subspace indicator.
struct Observation {
    double x_hat = 0.0;
    double y_hat = 0.0;
    double z_hat = 0.0;
    double nlos_norm = 0.0;
    double in_sp = 0.0;

    std::array<double, 5> as_array() const { return {x_hat, y_hat, z_hat, nlos_norm, in_sp}; }
};

struct StepInfo {
    int nlos = 0;
    Vec3 position;
    bool in_sp = false;
};

struct StepOutcome {
    Observation observation;
    double reward = 0.0;
    bool done = false;
    StepInfo info;
};

/// Episodic environment over one scenario. The UAV walks the zone lattice;
/// the reward at a lattice point is the LoS fraction when the point lies in
/// the feasible subspace and 0 otherwise. A single instance is stateful and
/// single-threaded; independent instances share nothing.
class UavEnv {
public:
    /// Precomputes radii and verifies the feasible subspace is non-empty;
    /// throws InfeasibleScenarioError otherwise.
    explicit UavEnv(const Scenario& scenario);

    /// Places the UAV at the zone centroid snapped to the lattice (ties
    /// round down) and clears the step counter. The seed is stored for
    /// bookkeeping; the reset itself is deterministic.
    Observation reset(std::uint64_t seed = 0);

    /// Applies one action. Moves that would leave the zone keep the UAV in
    /// place; the step still counts. Throws std::logic_error once done.
    StepOutcome step(Action action);

    Observation observe() const;

    /// Reward of an arbitrary probe position under this scenario.
    double reward_at(const Vec3& p) const;

    bool in_feasible(const Vec3& p) const;

    const Vec3& position() const { return position_; }
    int step_count() const { return step_count_; }
    int total_steps() const { return total_steps_; }
    int warmup_steps() const { return warmup_steps_; }
    bool done() const { return step_count_ >= total_steps_; }
    int nlos() const { return nlos_; }
    bool in_sp() const { return in_sp_; }
    int ue_count() const { return static_cast<int>(ues_.size()); }
    const FeasibleRegion& region() const { return region_; }

private:
    void evaluate_current();

    Venue venue_;
    std::vector<UserEquipment> ues_;
    std::vector<Vec3> ue_positions_;
    PositioningZone zone_;
    FeasibleRegion region_;
    int total_steps_ = 0;
    int warmup_steps_ = 0;

    std::size_t ix_ = 0, iy_ = 0, iz_ = 0;
    Vec3 position_;
    int nlos_ = 0;
    bool in_sp_ = false;
    int step_count_ = 0;
    std::uint64_t seed_ = 0;
};

} // namespace rltopa
