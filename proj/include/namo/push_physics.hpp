#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "namo/world.hpp"

namespace namo {

inline constexpr double kUnboundedDistance = std::numeric_limits<double>::infinity();

/// Linear push action: push object `object_id` along direction `phi`
/// until a termination condition fires or `max_distance` is reached.
struct PushAction {
    int object_id = 0;
    double phi = 0.0;  // radians, normalized to [0, 2*pi)
    double max_distance = kUnboundedDistance;  // cm

    PushAction() = default;
    PushAction(int id, double angle, double max_d = kUnboundedDistance)
        : object_id(id), phi(wrap_two_pi(angle)), max_distance(max_d) {}

    bool operator==(const PushAction&) const = default;
};

enum class PushTermination {
    kClearedFootprint,
    kWallContact,
    kMaxDistance,
    kInfeasiblePlacement,
};

const char* push_termination_name(PushTermination t);

struct PushOutcome {
    WorldState new_state;
    double realized_distance = 0.0;  // cm
    PushTermination termination = PushTermination::kInfeasiblePlacement;
    std::optional<int> blocking_id;  // set iff termination == kWallContact
    std::vector<int> moved_ids;      // ascending
};

/// Pusher body and kinematic step size. The pusher is a 1x4 cm rectangle
/// whose long axis lies perpendicular to the push direction.
struct PhysicsConfig {
    double pusher_depth = 1.0;   // extent along the push direction, cm
    double pusher_width = 4.0;   // extent across the push direction, cm
    double step = 0.05;          // advance/retreat increment, cm
};

/// Pusher pose for a push: centered at the target's centroid, retreated
/// along (phi - pi) in `step` increments until free of the target, then
/// accepted only if it hits no other object and lies inside the room.
/// Returns nullopt when no feasible placement exists.
/// Throws UNKNOWN_OBJECT for a bad id.
std::optional<Pose2> pusher_placement(const WorldState& state, const PushAction& action,
                                      const PhysicsConfig& config = {});

/// Quasi-static push simulation. The pushed set starts as {target} plus the
/// pusher body and advances in `step` increments along phi; an un-pushed
/// object that an advanced member would overlap joins the set and translates
/// rigidly from that step onward. Per tentative step, in priority order:
///   wall contact (any member would leave the room, or would hit an
///   immovable object) stops the push at the last valid step and reports
///   the blocking object; a target that entered overlapping the footprint
///   and no longer does stops with kClearedFootprint; exceeding
///   max_distance stops with kMaxDistance.
/// Objects outside the pushed set never move. Translation only: no
/// rotation, no momentum; objects are stationary the instant the push ends.
PushOutcome simulate_push(const WorldState& state, const PushAction& action,
                          std::span<const ConvexPolygon> footprint,
                          const PhysicsConfig& config = {});

/// g evenly spaced push directions {2*pi*k/g : k = 0..g-1}.
std::vector<double> push_directions(int g);

}  // namespace namo
