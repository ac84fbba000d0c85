#include "namo/push_planner.hpp"

#include <algorithm>
#include <cmath>

namespace namo {

namespace {

/// Recursive means-end searcher for a single sub-goal.
class SubgoalSearch {
public:
    SubgoalSearch(const PathFootprint& footprint, int target_id, const PlannerConfig& config,
                  PushBudget* budget, SubgoalStats* stats, const PhysicsConfig& physics,
                  const Deadline& deadline)
        : footprint_(footprint),
          target_id_(target_id),
          config_(config),
          budget_(budget),
          stats_(stats),
          physics_(physics),
          deadline_(deadline),
          directions_(push_directions(config.push_directions)) {}

    std::optional<SubgoalResult> run(const WorldState& entry, int depth_limit) {
        entry_ = &entry;
        const std::vector<PlannedPush> no_trail;
        return solve(entry, target_id_, depth_limit, no_trail, {});
    }

private:
    /// One blocked push awaiting re-attempt: the alternatives share an
    /// object id and are tried in order (the originally blocked direction
    /// first; all g directions when widening is enabled).
    struct ReattemptSlot {
        int object_id;
        std::vector<PushAction> alternatives;
    };

    PushOutcome simulate(const WorldState& state, const PushAction& action) {
        if (stats_) ++stats_->nodes;
        return simulate_push(state, action, footprint_.polygons, physics_);
    }

    bool target_off_footprint(const WorldState& state) const {
        const ConvexPolygon placed = state.object(target_id_).placed();
        for (const ConvexPolygon& poly : footprint_.polygons) {
            if (intersects(placed, poly)) return false;
        }
        return true;
    }

    bool budget_allows(int object_id, const std::vector<PlannedPush>& trail) const {
        if (!budget_ || budget_->per_object_cap <= 0) return true;
        int count = budget_->used_for(object_id);
        for (const PlannedPush& p : trail) {
            if (p.action.object_id == object_id) ++count;
        }
        return count < budget_->per_object_cap;
    }

    bool goal_reached(const WorldState& state) const {
        return target_off_footprint(state) && subgoal_test(*entry_, state, footprint_);
    }

    /// Replay the stack of blocked pushes, innermost blocker first. Each
    /// slot tries its alternatives in order; the chain succeeds when every
    /// slot was replayed and the sub-goal is reached.
    std::optional<SubgoalResult> replay_chain(const WorldState& state,
                                              std::span<const ReattemptSlot> slots,
                                              const std::vector<PlannedPush>& trail) {
        if (slots.empty()) {
            if (goal_reached(state)) return SubgoalResult{state, trail};
            return std::nullopt;
        }
        const ReattemptSlot& slot = slots.front();
        if (!budget_allows(slot.object_id, trail)) return std::nullopt;
        for (const PushAction& action : slot.alternatives) {
            PushOutcome out = simulate(state, action);
            if (out.termination == PushTermination::kInfeasiblePlacement) continue;
            std::vector<PlannedPush> next_trail = trail;
            next_trail.push_back({action, std::move(out)});
            if (auto result = replay_chain(next_trail.back().outcome.new_state,
                                           slots.subspan(1), next_trail)) {
                return result;
            }
        }
        return std::nullopt;
    }

    ReattemptSlot make_slot(const PushAction& blocked) const {
        ReattemptSlot slot{blocked.object_id, {blocked}};
        if (config_.widen_reattempt) {
            for (const double phi : directions_) {
                if (phi != blocked.phi) slot.alternatives.push_back(
                    PushAction(blocked.object_id, phi));
            }
        }
        return slot;
    }

    std::optional<SubgoalResult> solve(const WorldState& state, int object_id, int depth,
                                       const std::vector<PlannedPush>& trail,
                                       std::vector<ReattemptSlot> slots) {
        if (depth < 1 || deadline_.expired()) return std::nullopt;

        struct Probe {
            PushAction action;
            PushTermination termination;
            std::optional<int> blocking_id;
        };
        std::vector<Probe> probes;
        probes.reserve(directions_.size());

        // Breadth first over this object's pushes, each followed by the
        // pending re-attempt chain.
        for (const double phi : directions_) {
            const PushAction action(object_id, phi);
            if (!budget_allows(object_id, trail)) break;
            PushOutcome out = simulate(state, action);
            probes.push_back({action, out.termination, out.blocking_id});
            if (out.termination == PushTermination::kInfeasiblePlacement) continue;
            std::vector<PlannedPush> branch = trail;
            branch.push_back({action, std::move(out)});
            if (auto result =
                    replay_chain(branch.back().outcome.new_state, slots, branch)) {
                return result;
            }
        }

        if (depth < 2) return std::nullopt;

        // Means-end: a wall-blocked push with a foreign blocker spawns a
        // deeper search that clears the blocker, then re-attempts here.
        for (const Probe& probe : probes) {
            if (probe.termination != PushTermination::kWallContact) continue;
            const int blocker = probe.blocking_id.value();
            if (blocker == object_id) continue;
            if (std::any_of(slots.begin(), slots.end(), [&](const ReattemptSlot& s) {
                    return s.object_id == blocker;
                })) {
                continue;  // already being cleared along this chain
            }
            std::vector<ReattemptSlot> deeper;
            deeper.reserve(slots.size() + 1);
            deeper.push_back(make_slot(probe.action));
            deeper.insert(deeper.end(), slots.begin(), slots.end());
            if (auto result = solve(state, blocker, depth - 1, trail, std::move(deeper))) {
                return result;
            }
        }
        return std::nullopt;
    }

    const PathFootprint& footprint_;
    int target_id_;
    const PlannerConfig& config_;
    PushBudget* budget_;
    SubgoalStats* stats_;
    const PhysicsConfig& physics_;
    const Deadline& deadline_;
    std::vector<double> directions_;
    const WorldState* entry_ = nullptr;
};

}  // namespace

std::vector<int> overlapping_objects(const WorldState& state,
                                     const PathFootprint& footprint) {
    struct Entry {
        int id;
        double dist;
    };
    std::vector<Entry> entries;
    const Vec2 start = footprint.start.translation();
    for (const MovableObject& obj : state.objects) {
        const ConvexPolygon placed = obj.placed();
        for (const ConvexPolygon& poly : footprint.polygons) {
            if (intersects(placed, poly)) {
                entries.push_back({obj.id, (obj.pose.translation() - start).norm()});
                break;
            }
        }
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.dist < b.dist; });
    std::vector<int> ids;
    ids.reserve(entries.size());
    for (const Entry& e : entries) ids.push_back(e.id);
    return ids;
}

bool subgoal_test(const WorldState& before, const WorldState& after,
                  const PathFootprint& footprint) {
    const std::size_t count_before = overlapping_objects(before, footprint).size();
    const std::size_t count_after = overlapping_objects(after, footprint).size();
    if (count_after >= count_before) return false;
    const ValidityReport report = validate_terminal(after, {});
    return report.intersecting_pairs.empty() && report.out_of_room.empty();
}

std::optional<SubgoalResult> clear_subgoal(const WorldState& state, int target_id,
                                           const PathFootprint& footprint, int depth_limit,
                                           const PlannerConfig& config, PushBudget* budget,
                                           SearchStats* stats, const PhysicsConfig& physics,
                                           const Deadline& deadline) {
    SubgoalStats* subgoal_stats = nullptr;
    if (stats) {
        const double n = static_cast<double>(state.objects.size());
        const double g = static_cast<double>(config.push_directions);
        stats->subgoals.push_back(
            {target_id, depth_limit, 0, std::pow(n * g, static_cast<double>(depth_limit))});
        subgoal_stats = &stats->subgoals.back();
    }

    SubgoalSearch search(footprint, target_id, config, budget, subgoal_stats, physics,
                         deadline);
    // Iterative deepening inside the sub-goal keeps solutions shallowest
    // first regardless of enumeration order in deeper subtrees.
    std::optional<SubgoalResult> result;
    for (int depth = 1; depth <= depth_limit && !result; ++depth) {
        result = search.run(state, depth);
    }
    if (stats && subgoal_stats) stats->total_nodes += subgoal_stats->nodes;
    return result;
}

std::optional<PushPlan> plan_clear_path(const Scenario& scenario,
                                        std::span<const PathFootprint> footprints,
                                        const PlannerConfig& config,
                                        const PhysicsConfig& physics, SearchStats* stats,
                                        const Deadline& deadline) {
    const int candidate_count =
        std::min<int>(config.candidates_per_level, static_cast<int>(footprints.size()));

    for (int level = 0; level <= config.max_depth; ++level) {
        for (int c = 0; c < candidate_count; ++c) {
            if (deadline.expired()) return std::nullopt;
            const PathFootprint& footprint = footprints[static_cast<std::size_t>(c)];
            const std::vector<int> initial_overlaps =
                overlapping_objects(scenario.state, footprint);

            if (level == 0) {
                if (initial_overlaps.empty() &&
                    validate_terminal(scenario.state, footprint.polygons).valid()) {
                    return PushPlan{footprint, {}, scenario.state, 0};
                }
                continue;
            }
            if (initial_overlaps.empty()) continue;  // handled at L = 0

            PushBudget budget;
            budget.per_object_cap = config.pushes_per_object > 0
                                        ? config.pushes_per_object
                                        : static_cast<int>(initial_overlaps.size());
            budget.used.assign(scenario.state.objects.size(), 0);

            WorldState running = scenario.state;
            std::vector<PlannedPush> plan_pushes;
            bool failed = false;
            // Sub-goals are re-derived from the running state so collateral
            // overlaps introduced by earlier pushes become sub-goals too.
            for (;;) {
                const std::vector<int> remaining = overlapping_objects(running, footprint);
                if (remaining.empty()) break;
                const int target = remaining.front();
                auto result = clear_subgoal(running, target, footprint, level, config,
                                            &budget, stats, physics, deadline);
                if (!result) {
                    failed = true;
                    break;
                }
                for (const PlannedPush& p : result->pushes) {
                    budget.used[static_cast<std::size_t>(p.action.object_id)] += 1;
                }
                plan_pushes.insert(plan_pushes.end(),
                                   std::make_move_iterator(result->pushes.begin()),
                                   std::make_move_iterator(result->pushes.end()));
                running = std::move(result->state);
            }
            if (failed) continue;
            if (!validate_terminal(running, footprint.polygons).valid()) continue;
            return PushPlan{footprint, std::move(plan_pushes), std::move(running), level};
        }
    }
    return std::nullopt;
}

}  // namespace namo
