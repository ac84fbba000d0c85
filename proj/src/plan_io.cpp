#include "namo/plan_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace namo {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json pose_to_json(const Pose2& p) {
    return {{"x", p.x}, {"y", p.y}, {"theta", p.theta}};
}

Pose2 pose_from_json(const json& j) {
    return Pose2{j.at("x").get<double>(), j.at("y").get<double>(),
                 j.at("theta").get<double>()};
}

json polygons_to_json(const std::vector<ConvexPolygon>& polys) {
    json arr = json::array();
    for (const ConvexPolygon& poly : polys) {
        json pts = json::array();
        for (const Vec2& v : poly.vertices()) pts.push_back(json::array({v.x, v.y}));
        arr.push_back(std::move(pts));
    }
    return arr;
}

std::vector<ConvexPolygon> polygons_from_json(const json& arr) {
    std::vector<ConvexPolygon> out;
    for (const json& pts : arr) {
        std::vector<Vec2> verts;
        for (const json& p : pts) verts.push_back({p[0].get<double>(), p[1].get<double>()});
        out.emplace_back(std::move(verts));
    }
    return out;
}

PushTermination termination_from_name(const std::string& name) {
    if (name == "CLEARED_FOOTPRINT") return PushTermination::kClearedFootprint;
    if (name == "WALL_CONTACT") return PushTermination::kWallContact;
    if (name == "MAX_DISTANCE") return PushTermination::kMaxDistance;
    if (name == "INFEASIBLE_PLACEMENT") return PushTermination::kInfeasiblePlacement;
    throw Error(ErrorCode::kParseError, "unknown push termination '" + name + "'");
}

}  // namespace

StoredPlan to_stored(const PushPlan& plan) {
    StoredPlan stored;
    stored.footprint = plan.footprint;
    stored.levels_used = plan.levels_used;
    for (const PlannedPush& push : plan.pushes) {
        StoredPush sp;
        sp.action = push.action;
        sp.realized_distance = push.outcome.realized_distance;
        sp.termination = push.outcome.termination;
        sp.blocking_id = push.outcome.blocking_id;
        sp.moved_ids = push.outcome.moved_ids;
        for (const MovableObject& obj : push.outcome.new_state.objects) {
            sp.poses_after.push_back(obj.pose);
        }
        stored.pushes.push_back(std::move(sp));
    }
    for (const MovableObject& obj : plan.final_state.objects) {
        stored.final_poses.push_back(obj.pose);
    }
    return stored;
}

std::string plan_to_json(const StoredPlan& plan) {
    json j;
    j["version"] = kSchemaVersion;
    j["levels_used"] = plan.levels_used;
    j["footprint"] = {
        {"kind", plan.footprint.kind == FootprintKind::kStraightLine ? "straight_line"
                                                                     : "swept_body"},
        {"start", pose_to_json(plan.footprint.start)},
        {"goal", pose_to_json(plan.footprint.goal)},
        {"shrink_iterations", plan.footprint.shrink_iterations},
        {"polygons", polygons_to_json(plan.footprint.polygons)},
    };
    json pushes = json::array();
    for (const StoredPush& push : plan.pushes) {
        json p;
        p["object_id"] = push.action.object_id;
        p["phi"] = push.action.phi;
        if (std::isfinite(push.action.max_distance)) {
            p["max_distance"] = push.action.max_distance;
        } else {
            p["max_distance"] = "unbounded";
        }
        p["realized_distance"] = push.realized_distance;
        p["termination"] = push_termination_name(push.termination);
        if (push.blocking_id) p["blocking_id"] = *push.blocking_id;
        p["moved_ids"] = push.moved_ids;
        json poses = json::array();
        for (const Pose2& pose : push.poses_after) poses.push_back(pose_to_json(pose));
        p["poses_after"] = std::move(poses);
        pushes.push_back(std::move(p));
    }
    j["pushes"] = std::move(pushes);
    json finals = json::array();
    for (const Pose2& pose : plan.final_poses) finals.push_back(pose_to_json(pose));
    j["final_poses"] = std::move(finals);
    return j.dump(2) + "\n";
}

StoredPlan plan_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::kParseError, std::string("plan parse: ") + e.what());
    }
    try {
        if (!j.contains("version") || !j["version"].is_number_integer()) {
            throw Error(ErrorCode::kParseError, "missing 'version'");
        }
        if (j["version"].get<int>() != kSchemaVersion) {
            throw Error(ErrorCode::kSchemaVersionMismatch,
                        "unsupported plan schema version " + j["version"].dump());
        }
        StoredPlan plan;
        plan.levels_used = j.at("levels_used").get<int>();
        const json& fp = j.at("footprint");
        plan.footprint.kind = fp.at("kind").get<std::string>() == "straight_line"
                                  ? FootprintKind::kStraightLine
                                  : FootprintKind::kSweptBody;
        plan.footprint.start = pose_from_json(fp.at("start"));
        plan.footprint.goal = pose_from_json(fp.at("goal"));
        plan.footprint.shrink_iterations = fp.at("shrink_iterations").get<int>();
        plan.footprint.polygons = polygons_from_json(fp.at("polygons"));
        for (const json& p : j.at("pushes")) {
            StoredPush push;
            push.action.object_id = p.at("object_id").get<int>();
            push.action.phi = p.at("phi").get<double>();
            push.action.max_distance = p.at("max_distance").is_string()
                                           ? kUnboundedDistance
                                           : p.at("max_distance").get<double>();
            push.realized_distance = p.at("realized_distance").get<double>();
            push.termination = termination_from_name(p.at("termination").get<std::string>());
            if (p.contains("blocking_id")) push.blocking_id = p.at("blocking_id").get<int>();
            push.moved_ids = p.at("moved_ids").get<std::vector<int>>();
            for (const json& pose : p.at("poses_after")) {
                push.poses_after.push_back(pose_from_json(pose));
            }
            plan.pushes.push_back(std::move(push));
        }
        for (const json& pose : j.at("final_poses")) {
            plan.final_poses.push_back(pose_from_json(pose));
        }
        return plan;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::kParseError, std::string("plan parse: ") + e.what());
    }
}

void save_plan(const StoredPlan& plan, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::kIoError, "cannot open for write: " + path);
    out << plan_to_json(plan);
    if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path);
}

void save_plan(const PushPlan& plan, const std::string& path) {
    save_plan(to_stored(plan), path);
}

StoredPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kIoError, "cannot open for read: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return plan_from_json(buf.str());
}

}  // namespace namo
