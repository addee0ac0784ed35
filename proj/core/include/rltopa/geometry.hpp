#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rltopa {

/// 3D position or displacement in meters. Components must stay finite;
/// validate() is called by the types that aggregate Vec3.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr bool operator==(const Vec3& o) const = default;

    double norm() const;
    double distance_to(const Vec3& o) const;
    double squared_distance_to(const Vec3& o) const;
    bool finite() const;

    /// Strict lexicographic (x, y, z) order, used for deterministic ranking.
    static bool lex_less(const Vec3& a, const Vec3& b);
};

/// Axis-aligned building box. floors/x_rooms/y_rooms are carried for config
/// parity with the scenario format but play no role in outdoor geometry.
struct Building {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    double z_min = 0.0, z_max = 0.0;
    int floors = 1;
    int x_rooms = 1;
    int y_rooms = 1;

    /// Throws std::invalid_argument when the box is inverted or below ground.
    void validate() const;

    /// Closed x/y footprint test, irrespective of height.
    bool footprint_contains(double x, double y) const;

    /// Open-box interior test (boundary points are not interior).
    bool interior_contains(const Vec3& p) const;
};

/// Square venue of side `side_length` centered on the origin, with the
/// building set acting as the only obstacles.
struct Venue {
    double side_length = 0.0;
    std::vector<Building> buildings;

    /// Validates the venue and every building, including the requirement
    /// that each footprint lies within [-side/2, side/2]^2.
    void validate() const;
};

/// Axis-aligned box of admissible UAV positions, discretized on a lattice
/// anchored at min_corner with spacing grid_size.
struct PositioningZone {
    Vec3 min_corner;
    Vec3 max_corner;
    double grid_size = 1.0;

    void validate() const;

    /// Closed-box membership (boundaries included).
    bool contains(const Vec3& p) const;

    Vec3 centroid() const;

    /// Lattice points per axis: floor(extent / grid_size) + 1, with a small
    /// epsilon so exact multiples of grid_size are kept.
    std::size_t count_x() const;
    std::size_t count_y() const;
    std::size_t count_z() const;

    Vec3 lattice_point(std::size_t ix, std::size_t iy, std::size_t iz) const;

    /// Index of the lattice point nearest to p along each axis, ties rounding
    /// down, clamped to the lattice. Used to snap the episode start position.
    std::size_t snap_index_x(double x) const;
    std::size_t snap_index_y(double y) const;
    std::size_t snap_index_z(double z) const;

    /// True when p coincides with a lattice point to within `tol` meters.
    bool on_lattice(const Vec3& p, double tol = 1e-9) const;
};

/// Tolerance below which contact with a building face counts as grazing
/// rather than penetration.
inline constexpr double kGrazeTolerance = 1e-9;

/// True iff the open segment (a, b) passes through the interior of the box
/// with more than grazing contact. Endpoints sitting exactly on a face count
/// as blocked only when the segment continues into the interior.
/// Throws std::invalid_argument when a == b.
bool segment_blocked(const Vec3& a, const Vec3& b, const Building& building);

/// True iff no building in the venue blocks the uav-ue segment.
bool line_of_sight(const Vec3& uav, const Vec3& ue, const Venue& venue);

/// Number of UE positions with line of sight to the UAV.
/// Throws std::invalid_argument when `ues` is empty.
int count_los(const Vec3& uav, std::span<const Vec3> ues, const Venue& venue);

/// All lattice points of the zone in x-then-y-then-z order (z fastest).
std::vector<Vec3> grid_points(const PositioningZone& zone);

} // namespace rltopa
