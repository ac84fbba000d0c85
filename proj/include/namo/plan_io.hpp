#pragma once

#include <string>

#include "namo/push_planner.hpp"

namespace namo {

/// On-disk form of one push: the action plus the outcome summary and the
/// resulting pose of every object, enough for bit-exact replay checking
/// without embedding whole world states.
struct StoredPush {
    PushAction action;
    double realized_distance = 0.0;
    PushTermination termination = PushTermination::kInfeasiblePlacement;
    std::optional<int> blocking_id;
    std::vector<int> moved_ids;
    std::vector<Pose2> poses_after;  // indexed by object id

    bool operator==(const StoredPush&) const = default;
};

/// Plan files are JSON, schema version 1: footprint (kind, start/goal,
/// shrink iterations, polygons), ordered pushes, final poses, level used.
struct StoredPlan {
    PathFootprint footprint;
    std::vector<StoredPush> pushes;
    std::vector<Pose2> final_poses;  // indexed by object id
    int levels_used = 0;

    bool operator==(const StoredPlan&) const = default;
};

StoredPlan to_stored(const PushPlan& plan);

void save_plan(const PushPlan& plan, const std::string& path);
void save_plan(const StoredPlan& plan, const std::string& path);
StoredPlan load_plan(const std::string& path);

std::string plan_to_json(const StoredPlan& plan);
StoredPlan plan_from_json(const std::string& text);

}  // namespace namo
