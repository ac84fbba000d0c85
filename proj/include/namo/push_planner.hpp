#pragma once

#include <optional>
#include <span>
#include <vector>

#include "namo/deadline.hpp"
#include "namo/path_planners.hpp"
#include "namo/push_physics.hpp"
#include "namo/world.hpp"

namespace namo {

struct PlannerConfig {
    int push_directions = 24;      // g
    int max_depth = 3;             // L_max
    int candidates_per_level = 20;
    /// Per-object push budget across a whole plan; 0 means "number of
    /// objects initially overlapping the footprint".
    int pushes_per_object = 0;
    /// When true, blocked target pushes are re-attempted over all g
    /// directions after a blocker push instead of only the blocked one.
    bool widen_reattempt = false;
};

struct PlannedPush {
    PushAction action;
    PushOutcome outcome;
};

struct PushPlan {
    PathFootprint footprint;
    std::vector<PlannedPush> pushes;
    WorldState final_state;
    int levels_used = 0;
};

/// Search instrumentation: one entry per sub-goal search, recording the
/// number of expanded nodes (push simulations) against the (n*g)^L bound.
struct SubgoalStats {
    int target_id = 0;
    int depth_limit = 0;
    long nodes = 0;
    double bound = 0.0;
};

struct SearchStats {
    std::vector<SubgoalStats> subgoals;
    long total_nodes = 0;

    bool within_bounds() const {
        for (const SubgoalStats& s : subgoals) {
            if (static_cast<double>(s.nodes) > s.bound) return false;
        }
        return true;
    }
};

/// Ids of objects intersecting any footprint polygon, nearest to the
/// footprint start first (by centroid distance).
std::vector<int> overlapping_objects(const WorldState& state,
                                     const PathFootprint& footprint);

/// A sub-goal counts as progress when the number of footprint-overlapping
/// objects strictly decreased and the resulting state is valid (no pairwise
/// intersections, everything inside the room).
bool subgoal_test(const WorldState& before, const WorldState& after,
                  const PathFootprint& footprint);

struct SubgoalResult {
    WorldState state;
    std::vector<PlannedPush> pushes;
};

/// Per-object budget shared across the sub-goals of one plan.
struct PushBudget {
    int per_object_cap = 0;  // <= 0 means unlimited
    std::vector<int> used;   // indexed by object id

    int used_for(int id) const {
        return id < static_cast<int>(used.size()) ? used[static_cast<std::size_t>(id)] : 0;
    }
};

/// Depth-limited means-end search clearing one overlapping object.
///
/// Level 1 tries all g pushes on the target, succeeding on any outcome that
/// takes the target off the footprint and passes subgoal_test. With depth
/// remaining, each Level-1 push that ended in wall contact with a blocking
/// object other than the target spawns a branch: from the entry state, push
/// the blocker in each direction, re-attempt the blocked target push, and
/// recurse on the blocker's own blockers. Shallowest solution first, ties
/// broken by push enumeration order. FAILURE is nullopt.
std::optional<SubgoalResult> clear_subgoal(const WorldState& state, int target_id,
                                           const PathFootprint& footprint, int depth_limit,
                                           const PlannerConfig& config,
                                           PushBudget* budget = nullptr,
                                           SearchStats* stats = nullptr,
                                           const PhysicsConfig& physics = {},
                                           const Deadline& deadline = {});

/// Iterative-deepening outer loop over tree depth L = 0..max_depth and the
/// ranked footprint candidates. L = 0 accepts footprints that are already
/// clear. For L >= 1 each footprint's overlapping objects become sub-goals
/// processed nearest-first, each solved from the running state; a footprint
/// succeeds when every sub-goal is solved and the terminal check passes.
/// The per-object budget (k) spans the whole plan. Returns the first
/// success; deeper plans are never returned when a shallower one exists
/// among the candidates.
std::optional<PushPlan> plan_clear_path(const Scenario& scenario,
                                        std::span<const PathFootprint> footprints,
                                        const PlannerConfig& config,
                                        const PhysicsConfig& physics = {},
                                        SearchStats* stats = nullptr,
                                        const Deadline& deadline = {});

}  // namespace namo
