#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "namo/path_planners.hpp"
#include "namo/scenario_io.hpp"

using namespace namo;

namespace {

constexpr double kPi = std::numbers::pi;

WorldState empty_bench_room() { return WorldState{kBenchRoom, {}}; }

MovableObject square(int id, double side, double x, double y, bool immovable = false) {
    return MovableObject{id, ConvexPolygon::rectangle(side, side), Pose2{x, y, 0}, immovable};
}

bool pose_clear(const WorldState& state, const ConvexPolygon& body, const Pose2& pose) {
    const ConvexPolygon placed = transform(body, pose);
    if (!contains_in_room(placed, state.room)) return false;
    for (const MovableObject& obj : state.objects) {
        if (intersects(placed, obj.placed())) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("sample_endpoints respects the 2 cm bands") {
    Rng rng(3);
    const ConvexPolygon agent = ConvexPolygon::rectangle(kAgentLength, kAgentWidth);
    for (int i = 0; i < 200; ++i) {
        const auto [start, goal] =
            sample_endpoints(kBenchRoom, agent, rng, EndpointMode::kBody);
        CHECK(start.x >= 0.0);
        CHECK(start.x <= 2.0);
        CHECK(goal.x >= 36.0);
        CHECK(goal.x <= 38.0);
        CHECK(contains_in_room(transform(agent, start), kBenchRoom));
        CHECK(contains_in_room(transform(agent, goal), kBenchRoom));
    }
}

TEST_CASE("sample_endpoints straight mode keeps the rectangle in-room") {
    Rng rng(5);
    const ConvexPolygon path_shape = ConvexPolygon::rectangle(kPathLength, kPathWidth);
    for (int i = 0; i < 200; ++i) {
        const auto [start, goal] = sample_endpoints(kBenchRoom, path_shape, rng,
                                                    EndpointMode::kStraightPath, kPathWidth);
        const ConvexPolygon rect =
            straight_rect(start.translation(), goal.translation(), kPathWidth);
        CHECK(contains_in_room(rect, kBenchRoom));
        CHECK(start.theta == doctest::Approx(std::atan2(goal.y - start.y, goal.x - start.x)));
    }
}

TEST_CASE("sample_endpoints exhausts in an impossible room") {
    Rng rng(7);
    // Room narrower than the path width.
    const Room slit{0, 0, 38, 1.0};
    const ConvexPolygon path_shape = ConvexPolygon::rectangle(kPathLength, kPathWidth);
    CHECK_THROWS_AS(
        sample_endpoints(slit, path_shape, rng, EndpointMode::kStraightPath, kPathWidth),
        Error);
}

TEST_CASE("sample_endpoints is deterministic per seed") {
    const ConvexPolygon agent = ConvexPolygon::rectangle(kAgentLength, kAgentWidth);
    Rng rng_a(99);
    Rng rng_b(99);
    const auto a = sample_endpoints(kBenchRoom, agent, rng_a, EndpointMode::kBody);
    const auto b = sample_endpoints(kBenchRoom, agent, rng_b, EndpointMode::kBody);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
}

TEST_CASE("straight path candidates are ranked by ascending overlap") {
    WorldState state = empty_bench_room();
    state.objects.push_back(square(0, 6.0, 19, 6));  // central obstacle, lower half

    Rng rng(21);
    const ConvexPolygon path_shape = ConvexPolygon::rectangle(kPathLength, kPathWidth);
    const std::vector<ScoredFootprint> ranked =
        sample_straight_path(state, path_shape, 50, rng);
    REQUIRE(ranked.size() == 50);
    for (std::size_t i = 1; i < ranked.size(); ++i) {
        CHECK(ranked[i - 1].overlap <= ranked[i].overlap);
    }
    // A clear corridor exists above the obstacle, so the best candidate
    // avoids it entirely.
    CHECK(ranked.front().overlap == 0.0);
    const Aabb best_box = ranked.front().footprint.polygons.front().aabb();
    CHECK(best_box.lo.y > 9.0);

    // Empty room: the first candidate trivially has zero overlap.
    Rng rng2(22);
    const std::vector<ScoredFootprint> empty_ranked =
        sample_straight_path(empty_bench_room(), path_shape, 20, rng2);
    REQUIRE(empty_ranked.size() == 20);
    CHECK(empty_ranked.front().overlap == 0.0);

    // Determinism: same seed, same candidate order.
    Rng rng3(21);
    const std::vector<ScoredFootprint> again = sample_straight_path(state, path_shape, 50, rng3);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        CHECK(again[i].footprint == ranked[i].footprint);
        CHECK(again[i].overlap == ranked[i].overlap);
    }
}

TEST_CASE("rrt_connect finds a path in an empty room and validates it") {
    const WorldState state = empty_bench_room();
    const ConvexPolygon body = ConvexPolygon::rectangle(kAgentLength, kAgentWidth);
    const Pose2 start{3, 9.5, 0};
    const Pose2 goal{35, 9.5, 0};
    RrtParams params;
    params.rng_seed = 1;
    const RrtResult result = rrt_connect(state, body, start, goal, params);
    REQUIRE(result.found());
    REQUIRE(result.waypoints.size() >= 2);
    CHECK(result.waypoints.front() == start);
    CHECK(result.waypoints.back() == goal);
    // Independent pose-by-pose revalidation of the interpolated sweep.
    for (const Pose2& pose : swept_poses(body, result.waypoints)) {
        CHECK(pose_clear(state, body, pose));
    }
}

TEST_CASE("rrt_connect around an obstacle wall gap") {
    WorldState state = empty_bench_room();
    // A wall of squares across the room with one gap near the top.
    for (int i = 0; i < 4; ++i) {
        state.objects.push_back(square(i, 3.4, 19, 2.0 + i * 3.5));
    }
    const ConvexPolygon body = ConvexPolygon::rectangle(kAgentLength, kAgentWidth);
    const Pose2 start{3, 9.5, 0};
    const Pose2 goal{35, 9.5, 0};
    RrtParams params;
    params.rng_seed = 4;
    const RrtResult result = rrt_connect(state, body, start, goal, params);
    REQUIRE(result.found());
    for (const Pose2& pose : swept_poses(body, result.waypoints)) {
        CHECK(pose_clear(state, body, pose));
    }
}

TEST_CASE("rrt_connect reports blocked endpoints and blocked rooms") {
    WorldState state = empty_bench_room();
    state.objects.push_back(square(0, 4.0, 3, 9.5));
    const ConvexPolygon body = ConvexPolygon::rectangle(kAgentLength, kAgentWidth);
    RrtParams params;
    const RrtResult bad_start =
        rrt_connect(state, body, Pose2{3, 9.5, 0}, Pose2{35, 9.5, 0}, params);
    CHECK(bad_start.status == RrtResult::Status::kInvalidEndpoints);

    // A full-height immovable wall of objects bisects the room.
    WorldState walled = empty_bench_room();
    for (int i = 0; i < 7; ++i) {
        walled.objects.push_back(square(i, 3.0, 19, 1.5 + i * 2.7, true));
    }
    RrtParams limited;
    limited.max_nodes = 4000;
    limited.rng_seed = 2;
    const RrtResult blocked =
        rrt_connect(walled, body, Pose2{3, 9.5, 0}, Pose2{35, 9.5, 0}, limited);
    CHECK(blocked.status == RrtResult::Status::kNoPath);
}

TEST_CASE("rrt_connect is deterministic for a fixed seed") {
    WorldState state = empty_bench_room();
    state.objects.push_back(square(0, 5.0, 15, 8));
    state.objects.push_back(square(1, 5.0, 24, 12));
    const ConvexPolygon body = ConvexPolygon::rectangle(kAgentLength, kAgentWidth);
    RrtParams params;
    params.rng_seed = 77;
    const RrtResult a = rrt_connect(state, body, Pose2{2, 4, kPi / 2}, Pose2{36.5, 15, kPi / 2},
                                    params);
    const RrtResult b = rrt_connect(state, body, Pose2{2, 4, kPi / 2}, Pose2{36.5, 15, kPi / 2},
                                    params);
    REQUIRE(a.found());
    REQUIRE(b.found());
    CHECK(a.waypoints == b.waypoints);
}

TEST_CASE("shrink_and_plan: no shrinking needed in the open") {
    const WorldState state = empty_bench_room();
    const ConvexPolygon body = ConvexPolygon::rectangle(kAgentLength, kAgentWidth);
    RrtParams params;
    params.rng_seed = 5;
    const auto fp = shrink_and_plan(state, body, Pose2{3, 9.5, 0}, Pose2{35, 9.5, 0}, params);
    REQUIRE(fp.has_value());
    CHECK(fp->shrink_iterations == 0);
    CHECK(fp->kind == FootprintKind::kSweptBody);
    CHECK_FALSE(fp->polygons.empty());
}

TEST_CASE("shrink_and_plan shrinks until a corridor fits") {
    WorldState state = empty_bench_room();
    // Two rows of immovable blocks leaving a 1.6 cm horizontal corridor at
    // y = 9.5: the full 2.25-wide body cannot pass, a shrunken one can.
    for (int i = 0; i < 5; ++i) {
        state.objects.push_back(square(i, 7.0, 5.5 + i * 7.2, 5.15, true));
        state.objects.push_back(square(5 + i, 7.0, 5.5 + i * 7.2, 13.85, true));
    }
    const ConvexPolygon body = ConvexPolygon::rectangle(kAgentLength, kAgentWidth);
    RrtParams params;
    params.rng_seed = 11;
    const Pose2 start{1.5, 9.5, 0};
    const Pose2 goal{36.5, 9.5, 0};
    const auto fp = shrink_and_plan(state, body, start, goal, params);
    REQUIRE(fp.has_value());
    // Linear width 2.25 * 0.9^(i/2) < 1.6 requires i >= 7.
    CHECK(fp->shrink_iterations >= 7);
    // The footprint is the full-size body, so it overlaps the blocks.
    bool overlaps_blocks = false;
    for (const ConvexPolygon& poly : fp->polygons) {
        for (const MovableObject& obj : state.objects) {
            if (intersects(poly, obj.placed())) overlaps_blocks = true;
        }
    }
    CHECK(overlaps_blocks);
}

TEST_CASE("shrink_and_plan gives up at the point-robot cutoff") {
    WorldState state = empty_bench_room();
    for (int i = 0; i < 7; ++i) {
        state.objects.push_back(square(i, 3.2, 19, 1.4 + i * 2.72, true));
    }
    const ConvexPolygon body = ConvexPolygon::rectangle(kAgentLength, kAgentWidth);
    RrtParams params;
    params.max_nodes = 1500;  // keep the 44 shrink iterations quick
    params.rng_seed = 6;
    const auto fp = shrink_and_plan(state, body, Pose2{3, 9.5, 0}, Pose2{35, 9.5, 0}, params);
    CHECK_FALSE(fp.has_value());
}

TEST_CASE("adding clutter never lets the body shrink less") {
    // Nested scenes: the corridor in scene B is a strict subset of the one
    // in scene A, so the successful reduction index cannot go down.
    WorldState scene_a = empty_bench_room();
    for (int i = 0; i < 5; ++i) {
        scene_a.objects.push_back(square(2 * i, 7.0, 5.5 + i * 7.2, 5.15, true));
        scene_a.objects.push_back(square(2 * i + 1, 7.0, 5.5 + i * 7.2, 13.85, true));
    }
    WorldState scene_b = scene_a;  // corridor narrowed from 1.6 to ~1.0 cm
    for (int i = 0; i < 5; ++i) {
        scene_b.objects[static_cast<std::size_t>(2 * i)].pose.y += 0.3;
        scene_b.objects[static_cast<std::size_t>(2 * i + 1)].pose.y -= 0.3;
    }
    const ConvexPolygon body = ConvexPolygon::rectangle(kAgentLength, kAgentWidth);
    RrtParams params;
    params.rng_seed = 21;
    const Pose2 start{1.5, 9.5, 0};
    const Pose2 goal{36.5, 9.5, 0};
    const auto fp_a = shrink_and_plan(scene_a, body, start, goal, params);
    const auto fp_b = shrink_and_plan(scene_b, body, start, goal, params);
    REQUIRE(fp_a.has_value());
    REQUIRE(fp_b.has_value());
    CHECK(fp_b->shrink_iterations >= fp_a->shrink_iterations);
}

TEST_CASE("area shrink schedule matches the 0.9 recurrence") {
    const ConvexPolygon body = ConvexPolygon::rectangle(kAgentLength, kAgentWidth);
    const double full = body.area();
    for (int i = 0; i < 20; ++i) {
        const double area = body.scaled(std::pow(0.9, 0.5 * i)).area();
        CHECK(area == doctest::Approx(full * std::pow(0.9, i)).epsilon(1e-9));
    }
    // An 84% area reduction lands near 18 iterations of the recurrence.
    CHECK(std::pow(0.9, 17) > 0.16);
    CHECK(std::pow(0.9, 18) < 0.16);
}
