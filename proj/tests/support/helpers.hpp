#pragma once

#include <cmath>
#include <vector>

#include "namo/geometry.hpp"
#include "namo/rng.hpp"

namespace namo::testing {

/// Random strictly convex polygon: vertices on an ellipse in angular order
/// (inscribed polygons are always strictly convex), then rotated and
/// translated. Extents are roughly [min_radius, max_radius] per axis.
inline ConvexPolygon random_convex_polygon(Rng& rng, double min_radius, double max_radius,
                                           Vec2 center) {
    const int n = rng.uniform_int(3, 8);
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(n));
    // Distinct angles with a minimum gap keep vertices well separated.
    const double slice = 2.0 * 3.141592653589793 / n;
    for (int i = 0; i < n; ++i) {
        angles.push_back(i * slice + rng.uniform(0.05, slice - 0.05));
    }
    const double rx = rng.uniform(min_radius, max_radius);
    const double ry = rng.uniform(min_radius, max_radius);
    const double rot = rng.uniform(0.0, 2.0 * 3.141592653589793);
    const double c = std::cos(rot), s = std::sin(rot);
    std::vector<Vec2> verts;
    verts.reserve(static_cast<std::size_t>(n));
    for (const double a : angles) {
        const double ex = rx * std::cos(a);
        const double ey = ry * std::sin(a);
        verts.push_back({center.x + c * ex - s * ey, center.y + s * ex + c * ey});
    }
    return ConvexPolygon(std::move(verts));
}

/// Monte-Carlo estimate of area(target ∩ union(others)) by sampling the
/// target's bounding box. Independent of the SAT/grid implementation paths.
inline double mc_intersection_area(const ConvexPolygon& target,
                                   const std::vector<ConvexPolygon>& others, Rng& rng,
                                   int samples) {
    const Aabb box = target.aabb();
    const double box_area = (box.hi.x - box.lo.x) * (box.hi.y - box.lo.y);
    int hits = 0;
    for (int i = 0; i < samples; ++i) {
        const Vec2 p{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)};
        if (!target.contains(p)) continue;
        for (const ConvexPolygon& other : others) {
            if (other.contains(p)) {
                ++hits;
                break;
            }
        }
    }
    return box_area * hits / samples;
}

/// Grid-sampling overlap oracle: counts probe points inside both polygons.
/// Zero hits at a fine pitch certifies zero-area overlap.
inline bool grid_overlap_oracle(const ConvexPolygon& a, const ConvexPolygon& b,
                                double pitch) {
    const Aabb ba = a.aabb();
    const Aabb bb = b.aabb();
    const double lo_x = std::max(ba.lo.x, bb.lo.x);
    const double hi_x = std::min(ba.hi.x, bb.hi.x);
    const double lo_y = std::max(ba.lo.y, bb.lo.y);
    const double hi_y = std::min(ba.hi.y, bb.hi.y);
    if (lo_x >= hi_x || lo_y >= hi_y) return false;
    for (double x = lo_x + pitch / 2; x < hi_x; x += pitch) {
        for (double y = lo_y + pitch / 2; y < hi_y; y += pitch) {
            if (a.contains({x, y}) && b.contains({x, y})) return true;
        }
    }
    return false;
}

}  // namespace namo::testing
