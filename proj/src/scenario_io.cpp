#include "namo/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace namo {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json points_to_json(const std::vector<Vec2>& pts) {
    json arr = json::array();
    for (const Vec2& p : pts) arr.push_back(json::array({p.x, p.y}));
    return arr;
}

std::vector<Vec2> points_from_json(const json& arr, const char* field) {
    if (!arr.is_array()) {
        throw Error(ErrorCode::kParseError, std::string("field '") + field + "' must be an array");
    }
    std::vector<Vec2> pts;
    for (const json& p : arr) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw Error(ErrorCode::kParseError,
                        std::string("field '") + field + "' must hold [x, y] pairs");
        }
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return pts;
}

double number_field(const json& obj, const char* field) {
    if (!obj.contains(field) || !obj[field].is_number()) {
        throw Error(ErrorCode::kParseError, std::string("missing numeric field '") + field + "'");
    }
    return obj[field].get<double>();
}

}  // namespace

std::string scenario_to_json(const Scenario& scenario) {
    json j;
    j["version"] = kSchemaVersion;
    j["seed"] = scenario.seed;
    j["room"] = {{"x_min", scenario.state.room.x_min},
                 {"y_min", scenario.state.room.y_min},
                 {"x_max", scenario.state.room.x_max},
                 {"y_max", scenario.state.room.y_max}};
    j["agent_shape"] = points_to_json(scenario.agent_shape.vertices());
    j["path_shape"] = points_to_json(scenario.straight_path_shape.vertices());
    json objs = json::array();
    for (const MovableObject& obj : scenario.state.objects) {
        json o;
        o["id"] = obj.id;
        o["shape"] = points_to_json(obj.shape.vertices());
        o["pose"] = {{"x", obj.pose.x}, {"y", obj.pose.y}, {"theta", obj.pose.theta}};
        if (obj.immovable) o["immovable"] = true;
        objs.push_back(std::move(o));
    }
    j["objects"] = std::move(objs);
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::kParseError, std::string("scenario parse: ") + e.what());
    }
    try {
        if (!j.contains("version") || !j["version"].is_number_integer()) {
            throw Error(ErrorCode::kParseError, "missing 'version'");
        }
        if (j["version"].get<int>() != kSchemaVersion) {
            throw Error(ErrorCode::kSchemaVersionMismatch,
                        "unsupported scenario schema version " + j["version"].dump());
        }
        const json& room = j.at("room");
        WorldState state;
        state.room = Room{number_field(room, "x_min"), number_field(room, "y_min"),
                          number_field(room, "x_max"), number_field(room, "y_max")};
        for (const json& o : j.at("objects")) {
            MovableObject obj{
                o.at("id").get<int>(),
                ConvexPolygon(points_from_json(o.at("shape"), "shape")),
                Pose2{number_field(o.at("pose"), "x"), number_field(o.at("pose"), "y"),
                      number_field(o.at("pose"), "theta")},
                o.value("immovable", false),
            };
            state.objects.push_back(std::move(obj));
        }
        Scenario scenario{
            j.at("seed").get<std::uint64_t>(),
            std::move(state),
            0.0,
            ConvexPolygon(points_from_json(j.at("agent_shape"), "agent_shape")),
            ConvexPolygon(points_from_json(j.at("path_shape"), "path_shape")),
        };
        validate_world(scenario.state);
        scenario.clutter = clutter_percentage(scenario.state);
        return scenario;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::kParseError, std::string("scenario parse: ") + e.what());
    }
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::kIoError, "cannot open for write: " + path);
    out << scenario_to_json(scenario);
    if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kIoError, "cannot open for read: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

}  // namespace namo
