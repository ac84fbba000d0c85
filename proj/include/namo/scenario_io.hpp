#pragma once

#include <string>

#include "namo/world.hpp"

namespace namo {

/// Scenario files are UTF-8 JSON, schema version 1:
///   {version, seed, room:{x_min,y_min,x_max,y_max}, agent_shape:[[x,y]...],
///    path_shape:[[x,y]...], objects:[{id, shape:[[x,y]...],
///    pose:{x,y,theta}}...]}
/// Lengths in cm, angles in radians. Doubles are emitted with shortest
/// round-trip representation, so load(save(s)) == s exactly.
void save_scenario(const Scenario& scenario, const std::string& path);
Scenario load_scenario(const std::string& path);

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

}  // namespace namo
