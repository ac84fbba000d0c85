#include "namo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace namo {

namespace {

constexpr double kPi = std::numbers::pi;

struct Interval {
    double lo;
    double hi;
};

Interval project(const std::vector<Vec2>& verts, Vec2 axis) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vec2& v : verts) {
        const double d = v.dot(axis);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {lo, hi};
}

// Returns false as soon as an axis with no positive-area overlap is found.
bool overlaps_on_axes(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e = a[(i + 1) % n] - a[i];
        const Vec2 axis{-e.y, e.x};  // outward for CCW winding
        const double len = axis.norm();
        const Interval pa = project(a, axis);
        const Interval pb = project(b, axis);
        if (std::min(pa.hi, pb.hi) - std::max(pa.lo, pb.lo) <= kGeomTol * len) {
            return false;
        }
    }
    return true;
}

}  // namespace

double wrap_pi(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a - kPi;
}

double wrap_two_pi(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

Pose2 compose(const Pose2& outer, const Pose2& inner) {
    const Vec2 t = apply(outer, inner.translation());
    return Pose2{t.x, t.y, outer.theta + inner.theta};
}

Vec2 apply(const Pose2& pose, Vec2 p) {
    const double c = std::cos(pose.theta);
    const double s = std::sin(pose.theta);
    return {pose.x + c * p.x - s * p.y, pose.y + s * p.x + c * p.y};
}

double polygon_area(std::span<const Vec2> vertices) {
    double twice = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        twice += vertices[i].cross(vertices[(i + 1) % n]);
    }
    return 0.5 * twice;
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) {
        throw Error(ErrorCode::kInvalidGeometry, "polygon needs at least 3 vertices");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = vertices_[i];
        const Vec2 b = vertices_[(i + 1) % n];
        const Vec2 c = vertices_[(i + 2) % n];
        if ((b - a).norm() <= kGeomTol) {
            throw Error(ErrorCode::kInvalidGeometry, "duplicate polygon vertices");
        }
        if ((b - a).cross(c - b) <= 0.0) {
            throw Error(ErrorCode::kInvalidGeometry,
                        "polygon must be strictly convex with CCW winding");
        }
    }
}

ConvexPolygon ConvexPolygon::rectangle(double size_x, double size_y) {
    const double hx = size_x / 2.0;
    const double hy = size_y / 2.0;
    return ConvexPolygon({{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}});
}

double ConvexPolygon::area() const { return polygon_area(vertices_); }

Vec2 ConvexPolygon::centroid() const {
    // Area-weighted centroid of the polygon interior.
    double twice_area = 0.0;
    Vec2 acc{0.0, 0.0};
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = vertices_[i];
        const Vec2 b = vertices_[(i + 1) % n];
        const double w = a.cross(b);
        twice_area += w;
        acc = acc + (a + b) * w;
    }
    return acc * (1.0 / (3.0 * twice_area));
}

double ConvexPolygon::shortest_side() const {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        best = std::min(best, (vertices_[(i + 1) % n] - vertices_[i]).norm());
    }
    return best;
}

double ConvexPolygon::circumradius() const {
    double best = 0.0;
    for (const Vec2& v : vertices_) best = std::max(best, v.norm());
    return best;
}

Aabb ConvexPolygon::aabb() const {
    Aabb box{{vertices_[0].x, vertices_[0].y}, {vertices_[0].x, vertices_[0].y}};
    for (const Vec2& v : vertices_) {
        box.lo.x = std::min(box.lo.x, v.x);
        box.lo.y = std::min(box.lo.y, v.y);
        box.hi.x = std::max(box.hi.x, v.x);
        box.hi.y = std::max(box.hi.y, v.y);
    }
    return box;
}

ConvexPolygon ConvexPolygon::translated(Vec2 d) const {
    std::vector<Vec2> out = vertices_;
    for (Vec2& v : out) v = v + d;
    return ConvexPolygon(std::move(out));
}

ConvexPolygon ConvexPolygon::scaled(double factor) const {
    const Vec2 c = centroid();
    std::vector<Vec2> out = vertices_;
    for (Vec2& v : out) v = c + (v - c) * factor;
    return ConvexPolygon(std::move(out));
}

bool ConvexPolygon::contains(Vec2 p) const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = vertices_[i];
        const Vec2 b = vertices_[(i + 1) % n];
        if ((b - a).cross(p - a) < 0.0) return false;
    }
    return true;
}

ConvexPolygon transform(const ConvexPolygon& poly, const Pose2& pose) {
    std::vector<Vec2> out;
    out.reserve(poly.size());
    const double c = std::cos(pose.theta);
    const double s = std::sin(pose.theta);
    for (const Vec2& v : poly.vertices()) {
        out.push_back({pose.x + c * v.x - s * v.y, pose.y + s * v.x + c * v.y});
    }
    return ConvexPolygon(std::move(out));
}

bool intersects(const ConvexPolygon& a, const ConvexPolygon& b) {
    if (!a.aabb().overlaps(b.aabb())) return false;
    return overlaps_on_axes(a.vertices(), b.vertices()) &&
           overlaps_on_axes(b.vertices(), a.vertices());
}

bool contains_in_room(const ConvexPolygon& poly, const Room& room) {
    for (const Vec2& v : poly.vertices()) {
        if (!(v.x > room.x_min && v.x < room.x_max && v.y > room.y_min &&
              v.y < room.y_max)) {
            return false;
        }
    }
    return true;
}

OccupancyGrid rasterize(std::span<const ConvexPolygon> polys, const Room& room,
                        double resolution) {
    const double min_dim = std::min(room.width(), room.height());
    if (!(resolution > 0.0) || resolution > min_dim / 4.0) {
        throw Error(ErrorCode::kResolutionTooCoarse,
                    "grid resolution must be positive and at most min room dim / 4");
    }
    OccupancyGrid grid;
    grid.resolution = resolution;
    grid.width = static_cast<int>(std::ceil(room.width() / resolution - 1e-9));
    grid.height = static_cast<int>(std::ceil(room.height() / resolution - 1e-9));
    grid.origin = {room.x_min, room.y_min};
    grid.cells.assign(static_cast<std::size_t>(grid.width) * grid.height, 0.0);

    std::vector<Aabb> boxes;
    boxes.reserve(polys.size());
    for (const ConvexPolygon& p : polys) boxes.push_back(p.aabb());

    const double sub = resolution / 4.0;
    for (std::size_t pi = 0; pi < polys.size(); ++pi) {
        // Only cells under the polygon's bounding box can gain coverage.
        const Aabb& box = boxes[pi];
        const int i0 = std::max(0, static_cast<int>(std::floor((box.lo.x - room.x_min) / resolution)));
        const int j0 = std::max(0, static_cast<int>(std::floor((box.lo.y - room.y_min) / resolution)));
        const int i1 = std::min(grid.width - 1, static_cast<int>(std::floor((box.hi.x - room.x_min) / resolution)));
        const int j1 = std::min(grid.height - 1, static_cast<int>(std::floor((box.hi.y - room.y_min) / resolution)));
        for (int j = j0; j <= j1; ++j) {
            for (int i = i0; i <= i1; ++i) {
                double& cell = grid.at(i, j);
                if (cell >= 1.0) continue;
                const double cx = room.x_min + i * resolution;
                const double cy = room.y_min + j * resolution;
                int covered = 0;
                for (int sj = 0; sj < 4; ++sj) {
                    for (int si = 0; si < 4; ++si) {
                        const Vec2 p{cx + (si + 0.5) * sub, cy + (sj + 0.5) * sub};
                        // Count a subsample once even under overlapping polys:
                        // coverage is of the union.
                        bool inside = false;
                        for (std::size_t pk = 0; pk < polys.size(); ++pk) {
                            if (p.x < boxes[pk].lo.x || p.x > boxes[pk].hi.x ||
                                p.y < boxes[pk].lo.y || p.y > boxes[pk].hi.y) {
                                continue;
                            }
                            if (polys[pk].contains(p)) {
                                inside = true;
                                break;
                            }
                        }
                        if (inside) ++covered;
                    }
                }
                cell = std::max(cell, covered / 16.0);
            }
        }
    }
    return grid;
}

double overlap_score(const OccupancyGrid& grid, const OccupancyGrid& kernel,
                     const Pose2& placement) {
    const double res = grid.resolution;
    double sum = 0.0;
    for (int j = 0; j < kernel.height; ++j) {
        for (int i = 0; i < kernel.width; ++i) {
            const double kv = kernel.at(i, j);
            if (kv <= 0.0) continue;
            // The kernel cell's world rectangle straddles up to four
            // environment cells; weight each by the exact overlap fraction.
            // This is the piecewise-constant cross-correlation evaluated at
            // the (continuous) placement offset.
            const double wx = placement.x + kernel.origin.x + i * res;
            const double wy = placement.y + kernel.origin.y + j * res;
            const double fx = (wx - grid.origin.x) / res;
            const double fy = (wy - grid.origin.y) / res;
            const int gi = static_cast<int>(std::floor(fx));
            const int gj = static_cast<int>(std::floor(fy));
            if (gi + 1 < 0 || gi >= grid.width || gj + 1 < 0 || gj >= grid.height) {
                throw Error(ErrorCode::kOutOfBounds,
                            "kernel exceeds grid bounds at placement");
            }
            const double ax = fx - gi;  // fraction of the cell past gi
            const double ay = fy - gj;
            double env = 0.0;
            for (int dj = 0; dj <= 1; ++dj) {
                const int cj = gj + dj;
                if (cj < 0 || cj >= grid.height) continue;
                const double wy_frac = dj == 0 ? 1.0 - ay : ay;
                if (wy_frac <= 0.0) continue;
                for (int di = 0; di <= 1; ++di) {
                    const int ci = gi + di;
                    if (ci < 0 || ci >= grid.width) continue;
                    const double wx_frac = di == 0 ? 1.0 - ax : ax;
                    if (wx_frac <= 0.0) continue;
                    env += wx_frac * wy_frac * grid.at(ci, cj);
                }
            }
            sum += kv * env;
        }
    }
    return sum * grid.cell_area();
}

std::vector<Pose2> swept_poses(const ConvexPolygon& body,
                               std::span<const Pose2> waypoints) {
    if (waypoints.size() < 2) {
        throw Error(ErrorCode::kEmptyPath, "swept footprint needs at least 2 waypoints");
    }
    const double trans_step = body.shortest_side() / 2.0;
    const double ang_step = body.shortest_side() / (2.0 * body.circumradius());

    auto same = [](const Pose2& a, const Pose2& b) {
        return std::abs(a.x - b.x) <= 1e-12 && std::abs(a.y - b.y) <= 1e-12 &&
               std::abs(wrap_pi(a.theta - b.theta)) <= 1e-12;
    };

    std::vector<Pose2> out;
    out.push_back(waypoints[0]);
    for (std::size_t w = 1; w < waypoints.size(); ++w) {
        const Pose2 a = out.back();  // by value: emplace_back reallocates
        const Pose2& b = waypoints[w];
        if (same(a, b)) continue;
        const double d = std::hypot(b.x - a.x, b.y - a.y);
        const double dth = wrap_pi(b.theta - a.theta);
        const double need = std::max(d / trans_step, std::abs(dth) / ang_step);
        const int interior = static_cast<int>(std::ceil(need - 1e-9));
        for (int k = 1; k <= interior; ++k) {
            const double t = static_cast<double>(k) / (interior + 1);
            out.emplace_back(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y),
                             a.theta + t * dth);
        }
        out.push_back(b);
    }
    return out;
}

std::vector<ConvexPolygon> swept_footprint(const ConvexPolygon& body,
                                           std::span<const Pose2> waypoints) {
    std::vector<ConvexPolygon> out;
    for (const Pose2& pose : swept_poses(body, waypoints)) {
        out.push_back(transform(body, pose));
    }
    return out;
}

}  // namespace namo
