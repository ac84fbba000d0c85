#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "namo/errors.hpp"

namespace namo {

/// Positive-area tolerance: overlaps thinner than this count as touching,
/// not intersecting, so contact configurations produced by the push engine
/// remain valid states.
inline constexpr double kGeomTol = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }

    bool operator==(const Vec2&) const = default;
};

/// Wrap an angle into [-pi, pi).
double wrap_pi(double a);
/// Wrap an angle into [0, 2*pi).
double wrap_two_pi(double a);

/// SE(2) pose; theta is normalized to [-pi, pi) on construction.
struct Pose2 {
    Pose2() = default;
    Pose2(double x_, double y_, double theta_) : x(x_), y(y_), theta(wrap_pi(theta_)) {}

    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    Vec2 translation() const { return {x, y}; }

    bool operator==(const Pose2&) const = default;
};

/// Composition outer * inner: applying the result equals applying inner,
/// then outer.
Pose2 compose(const Pose2& outer, const Pose2& inner);

/// Apply a pose to a point (rotate about the local origin, then translate).
Vec2 apply(const Pose2& pose, Vec2 p);

struct Aabb {
    Vec2 lo;
    Vec2 hi;

    bool overlaps(const Aabb& o, double tol = kGeomTol) const {
        return lo.x < o.hi.x - tol && o.lo.x < hi.x - tol &&
               lo.y < o.hi.y - tol && o.lo.y < hi.y - tol;
    }
};

/// Strictly convex polygon with counter-clockwise winding.
///
/// Construction validates: at least 3 vertices, every consecutive edge pair
/// turns left (cross product > 0), no duplicate vertices within kGeomTol.
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<Vec2> vertices);

    /// Axis-aligned rectangle of the given extents centered at the origin.
    static ConvexPolygon rectangle(double size_x, double size_y);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

    double area() const;
    Vec2 centroid() const;
    /// Length of the shortest edge.
    double shortest_side() const;
    /// Largest vertex distance from the local origin (rotation center).
    double circumradius() const;
    Aabb aabb() const;

    ConvexPolygon translated(Vec2 d) const;
    /// Uniform scaling about the centroid.
    ConvexPolygon scaled(double factor) const;

    bool contains(Vec2 p) const;

    bool operator==(const ConvexPolygon&) const = default;

private:
    std::vector<Vec2> vertices_;
};

struct Room {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }

    bool operator==(const Room&) const = default;
};

/// Place a polygon: rotate by pose.theta about the local origin, then
/// translate by (pose.x, pose.y). Winding is preserved.
ConvexPolygon transform(const ConvexPolygon& poly, const Pose2& pose);

/// Separating-axis test for positive-area overlap. Edge contact within
/// kGeomTol counts as NOT intersecting.
bool intersects(const ConvexPolygon& a, const ConvexPolygon& b);

/// True iff every vertex lies strictly inside the room bounds.
bool contains_in_room(const ConvexPolygon& poly, const Room& room);

/// Occupancy grid over a rectangular region. `origin` is the world position
/// of the lower-left grid corner; for kernels produced relative to a
/// placement reference point it is expressed in that local frame instead.
struct OccupancyGrid {
    double resolution = 0.0;
    int width = 0;
    int height = 0;
    Vec2 origin;
    std::vector<double> cells;  // row-major, cells[j * width + i]

    double at(int i, int j) const { return cells[static_cast<std::size_t>(j) * width + i]; }
    double& at(int i, int j) { return cells[static_cast<std::size_t>(j) * width + i]; }
    double cell_area() const { return resolution * resolution; }
};

/// Rasterize world-frame polygons over the room. Cell values are coverage
/// fractions estimated with a 4x4 subsample per cell.
/// Throws RESOLUTION_TOO_COARSE unless 0 < resolution <= min room dim / 4.
OccupancyGrid rasterize(std::span<const ConvexPolygon> polys, const Room& room,
                        double resolution);

/// Discrete cross-correlation of kernel against grid at one offset:
/// sum over kernel cells of kernel * environment coverage, times cell area.
/// The kernel must be rasterized at angle placement.theta already; placement
/// translates it (kernel.origin is relative to the placement point). Kernel
/// cells map to the environment cell containing their center; a non-empty
/// kernel cell falling outside the grid by more than half a cell throws
/// OUT_OF_BOUNDS.
double overlap_score(const OccupancyGrid& grid, const OccupancyGrid& kernel,
                     const Pose2& placement);

/// Poses visited when sweeping a body along waypoints, with interpolated
/// poses inserted so consecutive placements overlap: translation step at
/// most half the body's shortest side, rotation step at most the angle
/// subtending that length at the body's circumradius. Consecutive duplicate
/// waypoints are dropped. Throws EMPTY_PATH for fewer than 2 waypoints.
std::vector<Pose2> swept_poses(const ConvexPolygon& body,
                               std::span<const Pose2> waypoints);

/// The body placed at every swept pose; the union approximates the swept
/// region, and footprint queries are "any member polygon" queries.
std::vector<ConvexPolygon> swept_footprint(const ConvexPolygon& body,
                                           std::span<const Pose2> waypoints);

double polygon_area(std::span<const Vec2> vertices);

}  // namespace namo
