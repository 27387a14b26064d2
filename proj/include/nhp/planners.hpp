#ifndef NHP_PLANNERS_HPP
#define NHP_PLANNERS_HPP

#include <cstdint>
#include <vector>

#include "nhp/grid_map.hpp"
#include "nhp/heuristic.hpp"

namespace nhp {

struct PlannerConfig {
    double step_size = 10.0;
    int max_iterations = 5000;
    double rewire_radius = 20.0; // RRT* neighborhood (fixed radius)
    int batch_size = 30;         // BIT*
    int sample_limit = 1000;     // BIT*
    double time_limit_ms = 0.0;  // BIT*, 0 = disabled
    bool refine = false;         // RRT*: keep improving after the first solution
    std::uint64_t seed = 0;
};

struct PlannerResult {
    bool success = false;
    long iterations = 0;
    long node_count = 0;
    double cost = 0.0; // defined only on success
    Path path;
    // refine mode: best goal-connected cost after each improvement.
    std::vector<double> refine_costs;
};

// Search tree exposed for invariant checks in tests. parent[root] == -1.
struct Tree {
    std::vector<State> vertices;
    std::vector<int> parent;
    std::vector<double> cost_to_come;
};

PlannerResult rrt_plan(const PlanningProblem& problem, const PlannerConfig& config,
                       const HeuristicSampler& sampler, Tree* tree_out = nullptr);

PlannerResult rrt_star_plan(const PlanningProblem& problem, const PlannerConfig& config,
                            const HeuristicSampler& sampler, Tree* tree_out = nullptr);

PlannerResult bit_star_plan(const PlanningProblem& problem, const PlannerConfig& config,
                            const HeuristicSampler& sampler, Tree* tree_out = nullptr);

// Repeatedly removes interior states whose neighbors connect collision-free,
// until no further removal applies.
Path lsc_shorten(const Path& path, const GridMap& map);

} // namespace nhp

#endif
