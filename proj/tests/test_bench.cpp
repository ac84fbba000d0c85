#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "namo/bench.hpp"
#include "namo/scenario_io.hpp"

using namespace namo;

namespace {

namespace fs = std::filesystem;

/// Low-clutter sweep settings that keep unit runtime small.
SweepOptions quick_options(const std::string& out_dir) {
    SweepOptions options;
    options.clutter_levels_percent = {18};
    options.trials_per_level = 2;
    options.out_dir = out_dir;
    options.config.workers = 2;
    options.config.timeout_seconds = 60.0;
    return options;
}

}  // namespace

TEST_CASE("trial endpoints are deterministic and shared-constraint valid") {
    const Scenario scenario = generate_scenario(3, side_for_clutter(0.18));
    const auto a = sample_trial_endpoints(scenario, 3);
    const auto b = sample_trial_endpoints(scenario, 3);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    CHECK(a.first.x <= 2.0);
    CHECK(a.second.x >= 36.0);
    CHECK(contains_in_room(transform(scenario.agent_shape, a.first), scenario.state.room));
    CHECK(contains_in_room(
        straight_rect(a.first.translation(), a.second.translation(), kPathWidth),
        scenario.state.room));
}

TEST_CASE("run_sweep emits records, csv, table, and replayable artifacts") {
    const std::string out_dir = "test_sweep_out";
    fs::remove_all(out_dir);
    const SweepOptions options = quick_options(out_dir);
    const std::vector<TrialRecord> records = run_sweep(options);

    // 1 level x 2 trials x 3 planners.
    REQUIRE(records.size() == 6);
    for (const TrialRecord& r : records) {
        CHECK(r.clutter_target == 18.0);
        CHECK(r.clutter_actual == doctest::Approx(18.0).epsilon(0.01));
        if (r.planner == PlannerKind::kRrtConnect) CHECK(r.pushes == 0);
        CHECK(r.node_bound_ok);
    }

    CHECK(fs::exists(out_dir + "/results.csv"));
    CHECK(fs::exists(out_dir + "/table.txt"));

    std::ifstream csv(out_dir + "/results.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header ==
          "clutter_target,clutter_actual,seed,planner,success,pushes,levels_used,"
          "shrink_iterations,wall_time");

    // Every success artifact must replay exactly.
    int replayed = 0;
    for (const TrialRecord& r : records) {
        if (!r.success) continue;
        char tag[64];
        std::snprintf(tag, sizeof(tag), "L%02d_t%02d", 18,
                      static_cast<int>(r.seed - options.config.base_seed));
        const std::string plan_path =
            out_dir + "/plan_" + std::string(tag) + "_" + planner_name(r.planner) + ".json";
        const std::string scenario_path = out_dir + "/scenario_" + std::string(tag) + ".json";
        REQUIRE(fs::exists(plan_path));
        REQUIRE(fs::exists(scenario_path));
        const ReplayResult replayed_plan = replay_files(plan_path, scenario_path);
        CHECK(replayed_plan.valid());
        ++replayed;
    }
    CHECK(replayed > 0);
    fs::remove_all(out_dir);
}

TEST_CASE("sweep reruns with identical seeds produce identical tables") {
    const std::string out_a = "test_sweep_a";
    const std::string out_b = "test_sweep_b";
    fs::remove_all(out_a);
    fs::remove_all(out_b);
    SweepOptions options = quick_options(out_a);
    options.write_svg = false;
    const std::vector<TrialRecord> first = run_sweep(options);
    options.out_dir = out_b;
    const std::vector<TrialRecord> second = run_sweep(options);

    CHECK(format_success_table(first) == format_success_table(second));
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].success == second[i].success);
        CHECK(first[i].pushes == second[i].pushes);
        CHECK(first[i].levels_used == second[i].levels_used);
        CHECK(first[i].shrink_iterations == second[i].shrink_iterations);
    }
    fs::remove_all(out_a);
    fs::remove_all(out_b);
}

TEST_CASE("empty trial count gives a header-only table") {
    SweepOptions options;
    options.clutter_levels_percent = {18};
    options.trials_per_level = 0;
    options.out_dir.clear();
    const std::vector<TrialRecord> records = run_sweep(options);
    CHECK(records.empty());
    CHECK(format_success_table(records) ==
          "Clutter | RRT-Connect | Straight-Line | Min. Collision\n");
    const std::string csv = format_results_csv(records);
    CHECK(csv.find('\n') == csv.size() - 1);
}

TEST_CASE("rrt-only sweep records zero pushes") {
    SweepOptions options;
    options.clutter_levels_percent = {18};
    options.trials_per_level = 2;
    options.planners = {PlannerKind::kRrtConnect};
    options.out_dir.clear();
    const std::vector<TrialRecord> records = run_sweep(options);
    REQUIRE(records.size() == 2);
    for (const TrialRecord& r : records) {
        CHECK(r.pushes == 0);
        CHECK(r.planner == PlannerKind::kRrtConnect);
    }
}
