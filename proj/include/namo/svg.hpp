#pragma once

#include <span>
#include <string>

#include "namo/push_planner.hpp"

namespace namo {

/// Render a scenario frame to a standalone SVG at 10 px/cm: room border,
/// translucent footprint, initial object outlines dashed, final objects
/// solid, numbered push arrows along each push direction, and an optional
/// waypoint polyline. Output is byte-identical for identical inputs.
std::string render_svg(const Scenario& scenario, const PushPlan* plan,
                       std::span<const Pose2> waypoints,
                       const PhysicsConfig& physics = {});

void emit_svg(const Scenario& scenario, const PushPlan& plan, const std::string& out_path,
              const PhysicsConfig& physics = {});
void emit_svg(const Scenario& scenario, std::span<const Pose2> waypoints,
              const std::string& out_path, const PhysicsConfig& physics = {});

}  // namespace namo
