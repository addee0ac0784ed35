#pragma once

#include "rltopa/geometry.hpp"
#include "rltopa/propagation.hpp"

#include <span>
#include <vector>

namespace rltopa {

/// Ground user with a traffic demand and the MCS index that carries it.
struct UserEquipment {
    int id = 0;
    Vec3 position;
    double demand_bps = 0.0;
    int demanded_mcs = 0;
};

/// Per-UE sphere radii plus the positioning zone they are intersected with.
/// Membership in the feasible subspace is the conjunction of the zone's box
/// bounds and one closed-ball constraint per UE.
struct FeasibleRegion {
    std::vector<double> radii_m;
    PositioningZone zone;
};

/// Maximum UAV distance at which the free-space SNR still supports the UE's
/// demanded MCS. Throws std::invalid_argument when the index is not in the
/// table.
double sphere_radius(const UserEquipment& ue, const RadioConfig& radio, const McsTable& table);

/// Radii for every UE in order, bundled with the zone.
FeasibleRegion make_feasible_region(std::span<const UserEquipment> ues, const RadioConfig& radio,
                                    const McsTable& table, const PositioningZone& zone);

/// True iff p lies in the zone and within every UE's closed ball.
/// Throws std::invalid_argument when radii and UE counts disagree.
bool in_feasible_subspace(const Vec3& p, const FeasibleRegion& region,
                          std::span<const UserEquipment> ues);

/// grid_points(zone) filtered by in_feasible_subspace, order preserved.
/// An empty result means the scenario is infeasible; that is the caller's
/// condition to report, not an error here.
std::vector<Vec3> feasible_grid_points(const FeasibleRegion& region,
                                       std::span<const UserEquipment> ues,
                                       const PositioningZone& zone);

} // namespace rltopa
