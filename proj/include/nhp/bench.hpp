#ifndef NHP_BENCH_HPP
#define NHP_BENCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "nhp/dataset_gen.hpp"
#include "nhp/edge_field.hpp"
#include "nhp/grid_map.hpp"
#include "nhp/planners.hpp"

namespace nhp {

enum class PlannerKind { rrt, rrt_star, bit_star };

const char* to_string(PlannerKind k);
PlannerKind planner_from_string(const std::string& name);

struct ExperimentConfig {
    PlannerKind planner = PlannerKind::rrt;
    PlanningProblem problem;
    std::optional<RegionMask> region; // heuristic region, absent = uniform
    double heuristic_bias = 0.0;
    int trials = 50;
    PlannerConfig planner_config; // per-trial seed = planner_config.seed + trial
};

struct TrialRow {
    int trial = 0;
    bool success = false;
    long iterations = 0;
    long nodes = 0;
    double cost = 0.0; // valid only when success
};

struct AggregateResult {
    double mean_iterations = 0.0; // over all trials
    double mean_nodes = 0.0;      // over all trials
    double mean_cost = 0.0;       // over successful trials only
    double success_rate = 0.0;
    std::vector<TrialRow> rows;
};

// Runs `trials` seeded trials (trials run concurrently, aggregation in trial
// order) and aggregates. Deterministic for a fixed config.
AggregateResult run_experiment(const ExperimentConfig& config);

// CSV columns: trial,success,iterations,nodes,cost (cost empty on failure).
void write_trials_csv(const AggregateResult& result, const std::string& path);
// JSON mirror of the aggregate fields plus the mean_cost convention note.
void write_aggregate_json(const AggregateResult& result, const ExperimentConfig& config,
                          const std::string& path);

struct BiasSweepRow {
    double bias = 0.0;
    AggregateResult result;
};

std::vector<BiasSweepRow> sweep_bias(const ExperimentConfig& config,
                                     const std::vector<double>& biases);

struct EvalGroupMetrics {
    std::string group;
    int cases = 0;
    double connectivity_rate = 0.0;
    double mean_false_negative_rate = 0.0;
};

// Decodes one prediction per manifest sample ("<id>_pred.efld" or
// "<id>_pred.npf" under predictions_dir) and scores it against the sample's
// ground truth, split by manifest group.
std::vector<EvalGroupMetrics> eval_predictions(const DatasetManifest& manifest,
                                               const std::string& predictions_dir,
                                               double threshold);

} // namespace nhp

#endif
