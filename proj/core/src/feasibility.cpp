#include "rltopa/feasibility.hpp"

#include <stdexcept>
#include <string>

namespace rltopa {

double sphere_radius(const UserEquipment& ue, const RadioConfig& radio, const McsTable& table) {
    const McsEntry* entry = table.find(ue.demanded_mcs);
    if (entry == nullptr) {
        throw std::invalid_argument("sphere_radius: UE " + std::to_string(ue.id) +
                                    " demands unknown MCS index " +
                                    std::to_string(ue.demanded_mcs));
    }
    return friis_max_distance(entry->min_snr_db, radio);
}

FeasibleRegion make_feasible_region(std::span<const UserEquipment> ues, const RadioConfig& radio,
                                    const McsTable& table, const PositioningZone& zone) {
    FeasibleRegion region;
    region.zone = zone;
    region.radii_m.reserve(ues.size());
    for (const UserEquipment& ue : ues) {
        region.radii_m.push_back(sphere_radius(ue, radio, table));
    }
    return region;
}

bool in_feasible_subspace(const Vec3& p, const FeasibleRegion& region,
                          std::span<const UserEquipment> ues) {
    if (region.radii_m.size() != ues.size()) {
        throw std::invalid_argument("in_feasible_subspace: radii/UE count mismatch");
    }
    if (!region.zone.contains(p)) return false;
    for (std::size_t i = 0; i < ues.size(); ++i) {
        const double r = region.radii_m[i];
        if (p.squared_distance_to(ues[i].position) > r * r) return false;
    }
    return true;
}

std::vector<Vec3> feasible_grid_points(const FeasibleRegion& region,
                                       std::span<const UserEquipment> ues,
                                       const PositioningZone& zone) {
    std::vector<Vec3> result;
    for (const Vec3& p : grid_points(zone)) {
        if (in_feasible_subspace(p, region, ues)) result.push_back(p);
    }
    return result;
}

} // namespace rltopa
