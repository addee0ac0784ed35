#include "rltopa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rltopa {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double Vec3::distance_to(const Vec3& o) const { return (*this - o).norm(); }

double Vec3::squared_distance_to(const Vec3& o) const {
    const Vec3 d = *this - o;
    return d.x * d.x + d.y * d.y + d.z * d.z;
}

bool Vec3::finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

bool Vec3::lex_less(const Vec3& a, const Vec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}

void Building::validate() const {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
        !std::isfinite(y_max) || !std::isfinite(z_min) || !std::isfinite(z_max)) {
        throw std::invalid_argument("building: non-finite coordinate");
    }
    if (x_min >= x_max) throw std::invalid_argument("building: x_min >= x_max");
    if (y_min >= y_max) throw std::invalid_argument("building: y_min >= y_max");
    if (z_min > z_max) throw std::invalid_argument("building: z_min > z_max");
    if (z_min < 0.0) throw std::invalid_argument("building: z_min < 0");
    if (floors <= 0 || x_rooms <= 0 || y_rooms <= 0) {
        throw std::invalid_argument("building: floors/x_rooms/y_rooms must be positive");
    }
}

bool Building::footprint_contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
}

bool Building::interior_contains(const Vec3& p) const {
    return p.x > x_min && p.x < x_max && p.y > y_min && p.y < y_max &&
           p.z > z_min && p.z < z_max;
}

void Venue::validate() const {
    if (!(side_length > 0.0) || !std::isfinite(side_length)) {
        throw std::invalid_argument("venue: side_length must be positive");
    }
    const double half = side_length / 2.0;
    for (std::size_t i = 0; i < buildings.size(); ++i) {
        try {
            buildings[i].validate();
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("buildings[" + std::to_string(i) + "]: " + e.what());
        }
        const Building& b = buildings[i];
        if (b.x_min < -half || b.x_max > half || b.y_min < -half || b.y_max > half) {
            throw std::invalid_argument("buildings[" + std::to_string(i) +
                                        "]: footprint outside the venue");
        }
    }
}

namespace {

std::size_t axis_count(double lo, double hi, double step) {
    // Relative epsilon keeps exact multiples of step on the lattice.
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

std::size_t snap_axis(double v, double lo, double step, std::size_t count) {
    const double t = (v - lo) / step;
    // Nearest index, ties toward the smaller one.
    double k = std::ceil(t - 0.5);
    k = std::clamp(k, 0.0, static_cast<double>(count - 1));
    return static_cast<std::size_t>(k);
}

} // namespace

void PositioningZone::validate() const {
    if (!min_corner.finite() || !max_corner.finite()) {
        throw std::invalid_argument("zone: non-finite corner");
    }
    if (!(min_corner.x < max_corner.x) || !(min_corner.y < max_corner.y) ||
        !(min_corner.z < max_corner.z)) {
        throw std::invalid_argument("zone: min_corner must be componentwise below max_corner");
    }
    if (!(grid_size > 0.0) || !std::isfinite(grid_size)) {
        throw std::invalid_argument("zone: grid_size must be positive");
    }
}

bool PositioningZone::contains(const Vec3& p) const {
    return p.x >= min_corner.x && p.x <= max_corner.x && p.y >= min_corner.y &&
           p.y <= max_corner.y && p.z >= min_corner.z && p.z <= max_corner.z;
}

Vec3 PositioningZone::centroid() const {
    return {(min_corner.x + max_corner.x) / 2.0, (min_corner.y + max_corner.y) / 2.0,
            (min_corner.z + max_corner.z) / 2.0};
}

std::size_t PositioningZone::count_x() const {
    return axis_count(min_corner.x, max_corner.x, grid_size);
}
std::size_t PositioningZone::count_y() const {
    return axis_count(min_corner.y, max_corner.y, grid_size);
}
std::size_t PositioningZone::count_z() const {
    return axis_count(min_corner.z, max_corner.z, grid_size);
}

Vec3 PositioningZone::lattice_point(std::size_t ix, std::size_t iy, std::size_t iz) const {
    // The top index can land a few ulps past max_corner when the extent is a
    // near-exact multiple of a non-dyadic grid_size; clamp so every lattice
    // point stays inside the closed zone.
    return {std::min(min_corner.x + static_cast<double>(ix) * grid_size, max_corner.x),
            std::min(min_corner.y + static_cast<double>(iy) * grid_size, max_corner.y),
            std::min(min_corner.z + static_cast<double>(iz) * grid_size, max_corner.z)};
}

std::size_t PositioningZone::snap_index_x(double x) const {
    return snap_axis(x, min_corner.x, grid_size, count_x());
}
std::size_t PositioningZone::snap_index_y(double y) const {
    return snap_axis(y, min_corner.y, grid_size, count_y());
}
std::size_t PositioningZone::snap_index_z(double z) const {
    return snap_axis(z, min_corner.z, grid_size, count_z());
}

bool PositioningZone::on_lattice(const Vec3& p, double tol) const {
    if (!contains(p)) return false;
    const Vec3 snapped = lattice_point(snap_index_x(p.x), snap_index_y(p.y), snap_index_z(p.z));
    return std::abs(snapped.x - p.x) <= tol && std::abs(snapped.y - p.y) <= tol &&
           std::abs(snapped.z - p.z) <= tol;
}

bool segment_blocked(const Vec3& a, const Vec3& b, const Building& building) {
    if (a == b) throw std::invalid_argument("segment_blocked: degenerate segment");

    // Slab test against the box shrunk by the grazing tolerance: a segment
    // that only touches a face never reaches the shrunk box, while anything
    // with real interior penetration still produces a positive-length
    // parameter interval.
    const double lo[3] = {building.x_min + kGrazeTolerance, building.y_min + kGrazeTolerance,
                          building.z_min + kGrazeTolerance};
    const double hi[3] = {building.x_max - kGrazeTolerance, building.y_max - kGrazeTolerance,
                          building.z_max - kGrazeTolerance};
    const double origin[3] = {a.x, a.y, a.z};
    const double dir[3] = {b.x - a.x, b.y - a.y, b.z - a.z};

    double t_enter = 0.0;
    double t_exit = 1.0;
    for (int axis = 0; axis < 3; ++axis) {
        if (lo[axis] >= hi[axis]) return false; // degenerate (zero-thickness) box
        if (dir[axis] == 0.0) {
            if (origin[axis] < lo[axis] || origin[axis] > hi[axis]) return false;
            continue;
        }
        double t0 = (lo[axis] - origin[axis]) / dir[axis];
        double t1 = (hi[axis] - origin[axis]) / dir[axis];
        if (t0 > t1) std::swap(t0, t1);
        t_enter = std::max(t_enter, t0);
        t_exit = std::min(t_exit, t1);
        if (t_enter >= t_exit) return false;
    }
    return true;
}

bool line_of_sight(const Vec3& uav, const Vec3& ue, const Venue& venue) {
    if (uav == ue) throw std::invalid_argument("line_of_sight: identical endpoints");
    for (const Building& b : venue.buildings) {
        if (segment_blocked(uav, ue, b)) return false;
    }
    return true;
}

int count_los(const Vec3& uav, std::span<const Vec3> ues, const Venue& venue) {
    if (ues.empty()) throw std::invalid_argument("count_los: empty UE list");
    int n = 0;
    for (const Vec3& ue : ues) {
        if (line_of_sight(uav, ue, venue)) ++n;
    }
    return n;
}

std::vector<Vec3> grid_points(const PositioningZone& zone) {
    zone.validate();
    const std::size_t nx = zone.count_x();
    const std::size_t ny = zone.count_y();
    const std::size_t nz = zone.count_z();
    std::vector<Vec3> points;
    points.reserve(nx * ny * nz);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            for (std::size_t iz = 0; iz < nz; ++iz) {
                points.push_back(zone.lattice_point(ix, iy, iz));
            }
        }
    }
    return points;
}

} // namespace rltopa
