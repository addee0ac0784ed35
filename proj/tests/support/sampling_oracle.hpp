#pragma once

// Dense-sampling reference for segment-vs-box blocking, independent of the
// slab implementation. The verdict is only trusted where sampling can prove
// it:
//   - blocked: some interior sample penetrates the box beyond the tolerance;
//   - clear:   every sample keeps more clearance than one sampling interval.
//     Distance to the box is 1-Lipschitz along the segment, so no point
//     between samples can reach the box.
// Everything else (face-band contact, sub-resolution chords) is ambiguous
// and excluded from comparisons.

#include "rltopa/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace rltopa::test {

enum class SampleClass { Inside, Outside, Ambiguous };

inline SampleClass classify_point(const Vec3& p, const Building& b, double tol) {
    const bool inside_shrunk = p.x > b.x_min + tol && p.x < b.x_max - tol &&
                               p.y > b.y_min + tol && p.y < b.y_max - tol &&
                               p.z > b.z_min + tol && p.z < b.z_max - tol;
    if (inside_shrunk) return SampleClass::Inside;
    const bool outside_expanded = p.x < b.x_min - tol || p.x > b.x_max + tol ||
                                  p.y < b.y_min - tol || p.y > b.y_max + tol ||
                                  p.z < b.z_min - tol || p.z > b.z_max + tol;
    if (outside_expanded) return SampleClass::Outside;
    return SampleClass::Ambiguous;
}

inline double distance_to_box(const Vec3& p, const Building& b) {
    const double dx = std::max({b.x_min - p.x, 0.0, p.x - b.x_max});
    const double dy = std::max({b.y_min - p.y, 0.0, p.y - b.y_max});
    const double dz = std::max({b.z_min - p.z, 0.0, p.z - b.z_max});
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct SamplingVerdict {
    bool blocked = false;
    /// The sampling resolution cannot decide this case; exclude it.
    bool ambiguous = false;
};

inline SamplingVerdict sampling_blocked(const Vec3& a, const Vec3& b, const Building& box,
                                        int samples = 1000, double tol = 1e-9) {
    const Vec3 d = b - a;
    const double spacing = d.norm() / static_cast<double>(samples + 1);
    bool band_contact = false;
    double min_clearance = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= samples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(samples + 1);
        const Vec3 p = a + d * t;
        switch (classify_point(p, box, tol)) {
        case SampleClass::Inside: return {true, false};
        case SampleClass::Ambiguous: band_contact = true; break;
        case SampleClass::Outside:
            min_clearance = std::min(min_clearance, distance_to_box(p, box));
            break;
        }
    }
    if (band_contact || min_clearance <= spacing) return {false, true};
    return {false, false};
}

} // namespace rltopa::test
