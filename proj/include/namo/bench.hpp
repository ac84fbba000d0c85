#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "namo/path_planners.hpp"
#include "namo/plan_io.hpp"
#include "namo/push_planner.hpp"

namespace namo {

enum class PlannerKind { kRrtConnect, kStraightLine, kMinCollision };

const char* planner_name(PlannerKind kind);

/// Everything configurable about a benchmark run; the CLI config file
/// overrides these fields.
struct BenchConfig {
    PlannerConfig planner;
    RrtParams rrt;
    PhysicsConfig physics;
    double grid_resolution = 0.25;     // cm per cell
    double timeout_seconds = 120.0;    // per planner per trial; failure on expiry
    int workers = 2;
    std::uint64_t base_seed = 1;
};

struct TrialRecord {
    double clutter_target = 0.0;  // percent
    double clutter_actual = 0.0;  // percent
    std::uint64_t seed = 0;
    PlannerKind planner = PlannerKind::kRrtConnect;
    bool success = false;
    int pushes = 0;
    int levels_used = 0;
    int shrink_iterations = 0;
    double wall_time = 0.0;  // seconds
    // Instrumentation, not part of the CSV schema.
    bool node_bound_ok = true;
    long nodes_expanded = 0;
};

/// One planner applied to one scenario with fixed endpoints.
struct PlannerRun {
    bool success = false;
    std::optional<StoredPlan> plan;
    std::vector<Pose2> waypoints;  // RRT-Connect trace when available
    int pushes = 0;
    int levels_used = 0;
    int shrink_iterations = 0;
    bool node_bound_ok = true;
    long nodes_expanded = 0;
};

PlannerRun run_planner(const Scenario& scenario, PlannerKind kind, const Pose2& start,
                       const Pose2& goal, const BenchConfig& config,
                       std::uint64_t trial_seed);

/// Endpoints shared by all planners of one trial: agent poses in the 2 cm
/// start/goal bands whose bodies fit the room and whose connecting
/// straight rectangle fits too.
std::pair<Pose2, Pose2> sample_trial_endpoints(const Scenario& scenario,
                                               std::uint64_t trial_seed);

struct SweepOptions {
    std::vector<double> clutter_levels_percent{18, 37, 43, 49, 56};
    int trials_per_level = 10;
    std::vector<PlannerKind> planners{PlannerKind::kRrtConnect, PlannerKind::kStraightLine,
                                      PlannerKind::kMinCollision};
    std::string out_dir;
    bool write_artifacts = true;
    bool write_svg = true;
    BenchConfig config;
};

/// Clutter sweep: for every (level, trial) generate a scenario from a
/// deterministic seed, share one endpoint pair across the requested
/// planners, run each under the wall-clock budget, persist plan artifacts
/// and traces for successes, and emit results.csv plus a success-count
/// table. Trials run on a worker pool; output order is deterministic.
std::vector<TrialRecord> run_sweep(const SweepOptions& options);

std::string format_results_csv(const std::vector<TrialRecord>& records);
std::string format_success_table(const std::vector<TrialRecord>& records);

struct ReplayResult {
    bool match = true;              // recomputed pushes agree bit-exactly
    std::string mismatch_detail;
    ValidityReport final_validity;  // includes footprint clearance

    bool valid() const { return match && final_validity.valid(); }
};

/// Re-simulate a stored plan from a stored scenario and check both exact
/// agreement with the recorded states and terminal validity.
ReplayResult replay(const StoredPlan& plan, const Scenario& scenario,
                    const PhysicsConfig& physics = {});
ReplayResult replay_files(const std::string& plan_path, const std::string& scenario_path,
                          const PhysicsConfig& physics = {});

}  // namespace namo
