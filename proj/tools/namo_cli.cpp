#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "namo/bench.hpp"
#include "namo/scenario_io.hpp"
#include "namo/svg.hpp"

namespace {

using namo::BenchConfig;
using namo::Error;
using namo::PlannerKind;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoPlan = 2;

BenchConfig load_config(const std::string& path) {
    BenchConfig config;
    if (path.empty()) return config;
    std::ifstream in(path);
    if (!in) throw Error(namo::ErrorCode::kIoError, "cannot open config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(namo::ErrorCode::kParseError, std::string("config parse: ") + e.what());
    }
    config.planner.push_directions = j.value("push_directions", config.planner.push_directions);
    config.planner.max_depth = j.value("max_depth", config.planner.max_depth);
    config.planner.candidates_per_level =
        j.value("candidates_per_level", config.planner.candidates_per_level);
    config.planner.pushes_per_object =
        j.value("pushes_per_object", config.planner.pushes_per_object);
    config.planner.widen_reattempt =
        j.value("widen_reattempt", config.planner.widen_reattempt);
    if (j.contains("rrt")) {
        const nlohmann::json& r = j["rrt"];
        config.rrt.max_nodes = r.value("max_nodes", config.rrt.max_nodes);
        config.rrt.step_size = r.value("step_size", config.rrt.step_size);
        config.rrt.goal_bias = r.value("goal_bias", config.rrt.goal_bias);
        config.rrt.angle_weight = r.value("angle_weight", config.rrt.angle_weight);
    }
    config.physics.step = j.value("physics_step", config.physics.step);
    config.grid_resolution = j.value("grid_resolution", config.grid_resolution);
    config.timeout_seconds = j.value("timeout_seconds", config.timeout_seconds);
    config.workers = j.value("workers", config.workers);
    config.base_seed = j.value("base_seed", config.base_seed);
    return config;
}

PlannerKind planner_from_flag(const std::string& name) {
    if (name == "rrt") return PlannerKind::kRrtConnect;
    if (name == "straight") return PlannerKind::kStraightLine;
    if (name == "mincol") return PlannerKind::kMinCollision;
    throw Error(namo::ErrorCode::kParseError, "unknown planner '" + name + "'");
}

int cmd_generate(std::uint64_t seed, double clutter_percent, const std::string& out) {
    const double side = namo::side_for_clutter(clutter_percent / 100.0);
    const namo::Scenario scenario = namo::generate_scenario(seed, side);
    namo::save_scenario(scenario, out);
    std::printf("scenario seed=%llu side=%.4f clutter=%.2f%% -> %s\n",
                static_cast<unsigned long long>(seed), side, scenario.clutter * 100.0,
                out.c_str());
    return kExitOk;
}

int cmd_plan(const std::string& scenario_path, const std::string& planner_flag,
             const std::string& out_dir, bool svg, const std::string& config_path) {
    const BenchConfig config = load_config(config_path);
    const namo::Scenario scenario = namo::load_scenario(scenario_path);
    const PlannerKind kind = planner_from_flag(planner_flag);
    const auto [start, goal] = namo::sample_trial_endpoints(scenario, scenario.seed);

    const namo::PlannerRun run =
        namo::run_planner(scenario, kind, start, goal, config, scenario.seed);
    if (!run.success) {
        std::printf("no plan (%s)\n", namo::planner_name(kind));
        return kExitNoPlan;
    }

    std::filesystem::create_directories(out_dir);
    const std::string stem = out_dir + "/plan_" + namo::planner_name(kind);
    namo::save_plan(*run.plan, stem + ".json");
    std::printf("plan found: %d pushes, level %d, shrink %d -> %s.json\n", run.pushes,
                run.levels_used, run.shrink_iterations, stem.c_str());
    if (svg) {
        if (kind == PlannerKind::kRrtConnect) {
            namo::emit_svg(scenario, run.waypoints, stem + ".svg", config.physics);
        } else {
            namo::PushPlan render_plan{run.plan->footprint, {}, scenario.state,
                                       run.plan->levels_used};
            namo::WorldState cur = scenario.state;
            for (const namo::StoredPush& sp : run.plan->pushes) {
                namo::PushOutcome out = namo::simulate_push(
                    cur, sp.action, run.plan->footprint.polygons, config.physics);
                cur = out.new_state;
                render_plan.pushes.push_back({sp.action, std::move(out)});
            }
            render_plan.final_state = cur;
            namo::emit_svg(scenario, render_plan, stem + ".svg", config.physics);
        }
        std::printf("trace -> %s.svg\n", stem.c_str());
    }
    return kExitOk;
}

int cmd_sweep(const std::string& levels_csv, int trials, const std::string& out_dir,
              const std::string& planners_csv, const std::string& config_path,
              int workers_override) {
    namo::SweepOptions options;
    options.config = load_config(config_path);
    if (workers_override > 0) options.config.workers = workers_override;
    options.out_dir = out_dir;
    options.trials_per_level = trials;

    options.clutter_levels_percent.clear();
    std::stringstream levels(levels_csv);
    for (std::string item; std::getline(levels, item, ',');) {
        options.clutter_levels_percent.push_back(std::stod(item));
    }
    if (!planners_csv.empty()) {
        options.planners.clear();
        std::stringstream names(planners_csv);
        for (std::string item; std::getline(names, item, ',');) {
            options.planners.push_back(planner_from_flag(item));
        }
    }

    const std::vector<namo::TrialRecord> records = namo::run_sweep(options);
    std::cout << namo::format_success_table(records);
    std::printf("results -> %s/results.csv\n", out_dir.c_str());
    return kExitOk;
}

int cmd_replay(const std::string& plan_path, const std::string& scenario_path) {
    const namo::ReplayResult result = namo::replay_files(plan_path, scenario_path);
    if (!result.match) {
        std::printf("REPLAY_MISMATCH: %s\n", result.mismatch_detail.c_str());
        return kExitError;
    }
    if (!result.final_validity.valid()) {
        std::printf("replay matched but final state is invalid: %zu intersections, "
                    "%zu out of room, %zu footprint overlaps\n",
                    result.final_validity.intersecting_pairs.size(),
                    result.final_validity.out_of_room.size(),
                    result.final_validity.footprint_overlaps.size());
        return kExitError;
    }
    std::printf("replay ok: exact match, terminal state valid\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Navigation-among-movable-obstacles push planning toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    double clutter = 18.0;
    std::string out_file = "scenario.json";
    CLI::App* generate = app.add_subcommand("generate", "generate a clutter scenario");
    generate->add_option("--seed", seed, "scenario seed");
    generate->add_option("--clutter", clutter, "target clutter percentage");
    generate->add_option("--out", out_file, "output scenario file")->required();

    std::string scenario_path;
    std::string planner_flag = "mincol";
    std::string out_dir = "plans";
    std::string config_path;
    bool svg = false;
    CLI::App* plan = app.add_subcommand("plan", "plan a single scenario");
    plan->add_option("--scenario", scenario_path, "scenario file")->required();
    plan->add_option("--planner", planner_flag, "rrt | straight | mincol");
    plan->add_option("--out", out_dir, "output directory");
    plan->add_option("--config", config_path, "config overrides (JSON)");
    plan->add_flag("--svg", svg, "emit an SVG trace");

    std::string levels_csv = "18,37,43,49,56";
    int trials = 10;
    std::string sweep_out = "sweep";
    std::string planners_csv;
    int workers = 0;
    CLI::App* sweep = app.add_subcommand("sweep", "run the clutter-sweep experiment");
    sweep->add_option("--levels", levels_csv, "comma-separated clutter percentages");
    sweep->add_option("--trials", trials, "trials per clutter level");
    sweep->add_option("--out", sweep_out, "output directory")->required();
    sweep->add_option("--planners", planners_csv, "subset: rrt,straight,mincol");
    sweep->add_option("--config", config_path, "config overrides (JSON)");
    sweep->add_option("--workers", workers, "worker threads");

    std::string plan_path;
    std::string replay_scenario;
    CLI::App* replay = app.add_subcommand("replay", "re-check a stored plan");
    replay->add_option("--plan", plan_path, "plan file")->required();
    replay->add_option("--scenario", replay_scenario, "scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(seed, clutter, out_file);
        if (plan->parsed()) return cmd_plan(scenario_path, planner_flag, out_dir, svg,
                                            config_path);
        if (sweep->parsed()) return cmd_sweep(levels_csv, trials, sweep_out, planners_csv,
                                              config_path, workers);
        if (replay->parsed()) return cmd_replay(plan_path, replay_scenario);
    } catch (const Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", namo::error_code_name(e.code()), e.what());
        return kExitError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
