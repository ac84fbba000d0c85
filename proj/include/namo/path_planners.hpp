#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "namo/deadline.hpp"
#include "namo/rng.hpp"
#include "namo/world.hpp"

namespace namo {

enum class FootprintKind { kStraightLine, kSweptBody };

/// Region a plan must empty of obstacles: a single oriented rectangle for
/// straight-line paths, or the union of body placements along waypoints.
struct PathFootprint {
    FootprintKind kind = FootprintKind::kStraightLine;
    std::vector<ConvexPolygon> polygons;  // world frame, non-empty
    Pose2 start;
    Pose2 goal;
    int shrink_iterations = 0;  // always 0 for straight-line footprints

    bool operator==(const PathFootprint&) const = default;
};

struct ScoredFootprint {
    PathFootprint footprint;
    double overlap = 0.0;  // cm^2 against the rasterized scene
};

struct RrtParams {
    int max_nodes = 50000;      // expansion attempts before giving up
    double step_size = 0.5;     // cm
    double goal_bias = 0.05;
    std::uint64_t rng_seed = 0;
    double angle_weight = 1.0;  // cm per radian in the SE(2) metric
};

enum class EndpointMode {
    kBody,          // validate the shape placed at both endpoint poses
    kStraightPath,  // validate the connecting rectangle spanning start->goal
};

/// Sample a start pose in the first 2 cm of the room's x extent and a goal
/// pose in the last 2 cm, y uniform over the full range. Body mode samples
/// endpoint orientations uniformly; straight mode orients both poses along
/// the start->goal line and `path_width` sets the connecting rectangle.
/// Rejected samples are redrawn up to 1000 times, then SAMPLING_EXHAUSTED.
std::pair<Pose2, Pose2> sample_endpoints(const Room& room, const ConvexPolygon& shape,
                                         Rng& rng, EndpointMode mode,
                                         double path_width = kPathWidth);

/// Oriented rectangle of the given width spanning a -> b.
ConvexPolygon straight_rect(Vec2 a, Vec2 b, double width);

/// Build a straight-line footprint from an endpoint pair.
PathFootprint straight_footprint(Vec2 start, Vec2 goal, double width);

/// Overlap (cm^2) between a footprint and the rasterized scene.
double footprint_overlap(const WorldState& state, const PathFootprint& footprint,
                         double grid_resolution);

/// Draw n candidate straight paths and rank them by ascending overlap with
/// the rasterized scene; a zero-overlap candidate first means no pushes are
/// needed at all. The path rectangle width comes from path_shape's shorter
/// extent. Ranking ties keep draw order.
std::vector<ScoredFootprint> sample_straight_path(const WorldState& state,
                                                  const ConvexPolygon& path_shape,
                                                  int n_candidates, Rng& rng,
                                                  double grid_resolution = 0.25);

struct RrtResult {
    enum class Status { kFound, kNoPath, kInvalidEndpoints };
    Status status = Status::kNoPath;
    std::vector<Pose2> waypoints;  // start..goal when kFound

    bool found() const { return status == Status::kFound; }
};

/// Bidirectional RRT-Connect over SE(2). Every returned waypoint and every
/// interpolated pose between consecutive waypoints (at swept-footprint
/// granularity) keeps the body inside the room and clear of all objects.
/// The raw path is shortcut-smoothed with 100 attempts before returning.
RrtResult rrt_connect(const WorldState& state, const ConvexPolygon& body,
                      const Pose2& start, const Pose2& goal, const RrtParams& params,
                      const Deadline& deadline = {});

/// Iterative footprint shrinking: attempt rrt_connect with the body scaled
/// to area factor 0.9^i (linear factor 0.9^(i/2)) for i = 0, 1, ... until a
/// path is found, giving up once the area drops below 1% of the original.
/// A success returns the FULL-SIZE body swept along the reduced body's
/// waypoints, with shrink_iterations = i.
std::optional<PathFootprint> shrink_and_plan(const WorldState& state,
                                             const ConvexPolygon& body,
                                             const Pose2& start, const Pose2& goal,
                                             const RrtParams& params,
                                             const Deadline& deadline = {});

}  // namespace namo
