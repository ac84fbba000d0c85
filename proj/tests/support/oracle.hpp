#pragma once

#include <optional>
#include <vector>

#include "namo/push_physics.hpp"
#include "namo/push_planner.hpp"

namespace namo::testing {

struct OracleResult {
    bool solvable = false;
    int min_pushes = 0;
};

/// Exhaustive breadth-first enumeration over push sequences, independent of
/// the planner's means-end search: every (object, direction) pair at every
/// step, subject to the same per-object budget. A sequence succeeds when no
/// object overlaps the footprint and the state is terminal-valid. Returns
/// the minimum sequence length, searching lengths 0..max_len.
inline OracleResult exhaustive_push_oracle(const WorldState& initial,
                                           const PathFootprint& footprint, int g,
                                           int max_len, int per_object_cap,
                                           const PhysicsConfig& physics = {}) {
    struct Node {
        WorldState state;
        std::vector<int> used;  // pushes spent per object id
    };

    auto cleared = [&](const WorldState& state) {
        return overlapping_objects(state, footprint).empty() &&
               validate_terminal(state, footprint.polygons).valid();
    };

    std::vector<Node> frontier;
    frontier.push_back({initial, std::vector<int>(initial.objects.size(), 0)});
    if (cleared(initial)) return {true, 0};

    const std::vector<double> directions = push_directions(g);
    for (int length = 1; length <= max_len; ++length) {
        std::vector<Node> next;
        for (const Node& node : frontier) {
            for (const MovableObject& obj : node.state.objects) {
                if (obj.immovable) continue;
                if (per_object_cap > 0 &&
                    node.used[static_cast<std::size_t>(obj.id)] >= per_object_cap) {
                    continue;
                }
                for (const double phi : directions) {
                    PushOutcome out = simulate_push(node.state, PushAction(obj.id, phi),
                                                    footprint.polygons, physics);
                    if (out.termination == PushTermination::kInfeasiblePlacement) continue;
                    if (out.realized_distance == 0.0) continue;  // no-op
                    if (cleared(out.new_state)) return {true, length};
                    Node child{std::move(out.new_state), node.used};
                    child.used[static_cast<std::size_t>(obj.id)] += 1;
                    next.push_back(std::move(child));
                }
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return {false, 0};
}

}  // namespace namo::testing
