#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "namo/geometry.hpp"

namespace namo {

/// Movable object: a convex shape in its local frame (centroid at the
/// origin, so pushes through the center of mass are well defined) placed
/// at a pose. `immovable` marks objects the push engine refuses to move;
/// the benchmark generator never sets it.
struct MovableObject {
    int id = 0;
    ConvexPolygon shape;
    Pose2 pose;
    bool immovable = false;

    ConvexPolygon placed() const { return transform(shape, pose); }

    bool operator==(const MovableObject&) const = default;
};

struct WorldState {
    Room room;
    std::vector<MovableObject> objects;  // ordered by id, contiguous from 0

    const MovableObject& object(int id) const;

    bool operator==(const WorldState&) const = default;
};

/// Checks structural invariants: ids contiguous from 0 in order, shape
/// centroids at the local origin. Throws INVALID_GEOMETRY on violation.
void validate_world(const WorldState& state);

struct Scenario {
    std::uint64_t seed = 0;
    WorldState state;
    double clutter = 0.0;  // fraction in [0, 1)
    ConvexPolygon agent_shape;
    ConvexPolygon straight_path_shape;

    bool operator==(const Scenario&) const = default;
};

/// Benchmark constants (virtual room and rigid-body dimensions, cm).
inline constexpr Room kBenchRoom{0.0, 0.0, 38.0, 19.0};
inline constexpr double kAgentLength = 4.5;
inline constexpr double kAgentWidth = 2.25;
inline constexpr double kPathWidth = 1.5;
inline constexpr double kPathLength = 17.5;
inline constexpr int kSquareCount = 20;

/// Ratio of occupied object area to room area.
/// Throws OVERLAPPING_INPUT if any two objects intersect.
double clutter_percentage(const WorldState& state);

/// Square side that yields the target clutter fraction with kSquareCount
/// squares in kBenchRoom.
double side_for_clutter(double clutter_fraction);

/// Deterministic scenario generator: 20 axis-aligned squares on a jittered
/// 5x4 lattice over the 38x19 room. Placements that hit a neighbor or a
/// wall are re-jittered up to 100 times; beyond that PLACEMENT_FAILED is
/// thrown. Same (seed, side) always yields the same scenario.
Scenario generate_scenario(std::uint64_t seed, double square_side);

struct ValidityReport {
    std::vector<std::pair<int, int>> intersecting_pairs;
    std::vector<int> out_of_room;
    std::vector<int> footprint_overlaps;

    bool valid() const {
        return intersecting_pairs.empty() && out_of_room.empty() &&
               footprint_overlaps.empty();
    }
};

/// Terminal-state check: pairwise non-intersection, room containment, and
/// no object overlapping any footprint polygon. Stillness holds by
/// construction in the quasi-static push model.
ValidityReport validate_terminal(const WorldState& state,
                                 std::span<const ConvexPolygon> footprint);

}  // namespace namo
