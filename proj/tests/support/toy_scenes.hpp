#pragma once

#include <string>
#include <vector>

#include "namo/path_planners.hpp"
#include "namo/rng.hpp"
#include "namo/world.hpp"

namespace namo::testing {

/// One toy scene for planner-vs-oracle comparison: a small room, at most
/// three objects, and a fixed footprint.
struct ToyScene {
    std::string name;
    Scenario scenario;
    PathFootprint footprint;
};

inline MovableObject toy_square(int id, double side, double x, double y,
                                bool immovable = false) {
    return MovableObject{id, ConvexPolygon::rectangle(side, side), Pose2{x, y, 0}, immovable};
}

inline Scenario toy_scenario(Room room, std::vector<MovableObject> objects) {
    WorldState state{room, std::move(objects)};
    Scenario scenario{0,
                      std::move(state),
                      0.0,
                      ConvexPolygon::rectangle(kAgentLength, kAgentWidth),
                      ConvexPolygon::rectangle(kPathLength, kPathWidth)};
    scenario.clutter = clutter_percentage(scenario.state);
    return scenario;
}

inline PathFootprint band_footprint(Vec2 a, Vec2 b, double width) {
    return straight_footprint(a, b, width);
}

/// Level-0 scene: the footprint touches nothing.
inline ToyScene make_clear_scene(Rng& rng, int index) {
    const Room room{0, 0, 20, 10};
    const double jx = rng.uniform(-0.5, 0.5);
    std::vector<MovableObject> objects;
    objects.push_back(toy_square(0, 2.0, 10 + jx, 8.3 + rng.uniform(-0.2, 0.2)));
    ToyScene scene{"clear_" + std::to_string(index), toy_scenario(room, std::move(objects)),
                   band_footprint({1, 4}, {19, 4}, 2.0)};
    return scene;
}

/// Level-1 scene: one overlapping square escapes the band with one push.
inline ToyScene make_level1_scene(Rng& rng, int index) {
    const Room room{0, 0, 20, 10};
    const double tx = rng.uniform(7.0, 13.0);
    const double ty = rng.uniform(4.6, 5.4);
    std::vector<MovableObject> objects;
    objects.push_back(toy_square(0, 2.0, tx, ty));
    // A bystander well away from every push lane.
    if (index % 2 == 0) {
        objects.push_back(toy_square(1, 1.5, rng.uniform(2.0, 3.5), 8.6));
    }
    ToyScene scene{"level1_" + std::to_string(index),
                   toy_scenario(room, std::move(objects)),
                   band_footprint({1, 5}, {19, 5}, rng.uniform(1.2, 1.8))};
    return scene;
}

/// Level-2 means-end scene (room 20x10, band y in [2,6] over x in [1,17]):
/// the target at (tx, 5) cannot leave the band on its own. Going north it
/// walls out against the immovable block (which sits above the 4 cm pusher
/// sweep, so east/west pushes stay feasible); south and west it reaches a
/// wall while still on the band; east it chains into the neighbor, which
/// hits the east wall first. Clearing the neighbor (north, off the band)
/// and re-attempting the east push yields a two-level, two-push plan.
inline ToyScene make_level2_scene(Rng& rng, int index) {
    const Room room{0, 0, 20, 10};
    const double tx = 9.0 + rng.uniform(-0.3, 0.3);
    std::vector<MovableObject> objects;
    objects.push_back(toy_square(0, 2.0, tx, 5.0));                // target
    objects.push_back(toy_square(1, 2.0, tx + 3.5, 5.0));          // neighbor
    objects.push_back(toy_square(2, 2.0, tx + 0.2, 8.1, true));    // block above the sweep
    ToyScene scene{"level2_" + std::to_string(index),
                   toy_scenario(room, std::move(objects)),
                   band_footprint({1, 4}, {17, 4}, 4.0)};
    return scene;
}

/// Two far-apart overlapping squares, each one push from freedom.
inline ToyScene make_two_subgoal_scene(Rng& rng, int index) {
    const Room room{0, 0, 20, 10};
    std::vector<MovableObject> objects;
    objects.push_back(toy_square(0, 2.0, rng.uniform(4.5, 5.5), 5.0));
    objects.push_back(toy_square(1, 2.0, rng.uniform(14.5, 15.5), 5.0));
    ToyScene scene{"two_subgoals_" + std::to_string(index),
                   toy_scenario(room, std::move(objects)),
                   band_footprint({1, 5}, {19, 5}, 1.5)};
    return scene;
}

/// Unsolvable: the target sits in a corner pocket; sub-pusher gaps to the
/// walls and immovable neighbors make every placement infeasible.
inline ToyScene make_walled_scene(Rng& rng, int index) {
    const Room room{0, 0, 20, 10};
    const double gap = rng.uniform(0.3, 0.8);  // < pusher depth (1 cm)
    std::vector<MovableObject> objects;
    objects.push_back(toy_square(0, 2.0, 1.0 + gap, 1.0 + gap));       // corner target
    objects.push_back(toy_square(1, 2.0, 1.0 + gap, 3.0 + 2 * gap, true));  // north cap
    objects.push_back(toy_square(2, 2.0, 3.0 + 2 * gap, 1.0 + gap, true));  // east cap
    ToyScene scene{"walled_" + std::to_string(index),
                   toy_scenario(room, std::move(objects)),
                   band_footprint({1, 1.0 + gap}, {19, 1.0 + gap}, 2.0)};
    return scene;
}

/// The full comparison suite; >= 50 scenes spanning already-clear, one-push,
/// means-end two-push, multi-sub-goal, and unsolvable cases.
inline std::vector<ToyScene> oracle_suite() {
    std::vector<ToyScene> scenes;
    Rng rng(2024);
    for (int i = 0; i < 6; ++i) scenes.push_back(make_clear_scene(rng, i));
    for (int i = 0; i < 16; ++i) scenes.push_back(make_level1_scene(rng, i));
    for (int i = 0; i < 12; ++i) scenes.push_back(make_level2_scene(rng, i));
    for (int i = 0; i < 10; ++i) scenes.push_back(make_two_subgoal_scene(rng, i));
    for (int i = 0; i < 8; ++i) scenes.push_back(make_walled_scene(rng, i));
    return scenes;
}

}  // namespace namo::testing
