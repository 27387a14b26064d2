#include "nhp/planners.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "nhp/errors.hpp"

namespace nhp {

namespace {

// Grid-bucket nearest-neighbor index over tree vertices. Bucket edge equals
// the bucket_size passed at construction; nearest() expands bucket rings
// until no closer vertex can exist. Ties resolve to the lowest vertex index.
class BucketIndex {
public:
    BucketIndex(int map_w, int map_h, double bucket_size)
        : bucket_(std::max(1.0, bucket_size)),
          cols_(std::max(1, static_cast<int>(std::ceil(map_w / bucket_)))),
          rows_(std::max(1, static_cast<int>(std::ceil(map_h / bucket_)))),
          cells_(static_cast<std::size_t>(cols_) * rows_) {}

    void insert(int index, const State& s) {
        cells_[cell_of(s)].push_back(index);
    }

    int nearest(const State& q, const std::vector<State>& vertices) const {
        const int qx = clamp_col(static_cast<int>(q.x / bucket_));
        const int qy = clamp_row(static_cast<int>(q.y / bucket_));
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        const int max_ring = std::max(cols_, rows_);
        for (int r = 0; r <= max_ring; ++r) {
            // Any vertex in ring r+1 is at least r * bucket_ away.
            if (best >= 0 && best_dist <= static_cast<double>(r) * bucket_) break;
            scan_ring(qx, qy, r, [&](int idx) {
                const double d = distance(q, vertices[idx]);
                if (d < best_dist || (d == best_dist && idx < best)) {
                    best_dist = d;
                    best = idx;
                }
            });
        }
        return best;
    }

    // Vertex indices within `radius` of q, ascending index order.
    std::vector<int> within(const State& q, double radius,
                            const std::vector<State>& vertices) const {
        std::vector<int> out;
        const int span = static_cast<int>(radius / bucket_) + 1;
        const int qx = static_cast<int>(q.x / bucket_);
        const int qy = static_cast<int>(q.y / bucket_);
        for (int by = std::max(0, qy - span); by <= std::min(rows_ - 1, qy + span); ++by)
            for (int bx = std::max(0, qx - span); bx <= std::min(cols_ - 1, qx + span); ++bx)
                for (int idx : cells_[static_cast<std::size_t>(by) * cols_ + bx])
                    if (distance(q, vertices[idx]) <= radius) out.push_back(idx);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    int clamp_col(int c) const { return std::clamp(c, 0, cols_ - 1); }
    int clamp_row(int r) const { return std::clamp(r, 0, rows_ - 1); }

    std::size_t cell_of(const State& s) const {
        const int bx = clamp_col(static_cast<int>(s.x / bucket_));
        const int by = clamp_row(static_cast<int>(s.y / bucket_));
        return static_cast<std::size_t>(by) * cols_ + bx;
    }

    template <typename Fn>
    void scan_ring(int qx, int qy, int r, Fn&& fn) const {
        for (int by = qy - r; by <= qy + r; ++by) {
            if (by < 0 || by >= rows_) continue;
            for (int bx = qx - r; bx <= qx + r; ++bx) {
                if (bx < 0 || bx >= cols_) continue;
                if (std::max(std::abs(bx - qx), std::abs(by - qy)) != r) continue;
                for (int idx : cells_[static_cast<std::size_t>(by) * cols_ + bx]) fn(idx);
            }
        }
    }

    double bucket_;
    int cols_;
    int rows_;
    std::vector<std::vector<int>> cells_;
};

State steer(const State& from, const State& toward, double step) {
    const double d = distance(from, toward);
    if (d <= step) return toward;
    const double f = step / d;
    return State{from.x + f * (toward.x - from.x), from.y + f * (toward.y - from.y)};
}

Path extract_path(const Tree& tree, int leaf, const PlanningProblem& problem) {
    Path path;
    for (int v = leaf; v >= 0; v = tree.parent[v]) path.states.push_back(tree.vertices[v]);
    std::reverse(path.states.begin(), path.states.end());
    const State& last = path.states.back();
    if ((last.x != problem.goal.x || last.y != problem.goal.y) &&
        free_edge(problem.map, last, problem.goal))
        path.states.push_back(problem.goal);
    return path;
}

// Draws sample/nearest/steer until the steered state is free, per the outer
// planning loop's repeat-until-free block.
struct SteerResult {
    State state;
    int nearest;
};

SteerResult sample_free_steer(const PlanningProblem& problem, const PlannerConfig& config,
                              const HeuristicSampler& sampler, Rng& rng,
                              const Tree& tree, const BucketIndex& index) {
    while (true) {
        const State x_rand = sampler.sample(rng);
        const int nearest = index.nearest(x_rand, tree.vertices);
        const State x_new = steer(tree.vertices[nearest], x_rand, config.step_size);
        if (free_state(problem.map, x_new)) return SteerResult{x_new, nearest};
    }
}

bool in_goal_ball(const State& s, const PlanningProblem& problem) {
    return distance(s, problem.goal) <= problem.goal_radius;
}

void validate(const PlanningProblem& problem, const PlannerConfig& config) {
    if (config.step_size <= 0.0 || config.max_iterations <= 0 || config.batch_size <= 0)
        throw ConfigError("step_size, max_iterations, and batch_size must be positive");
    if (problem.goal_radius <= 0.0) throw InvalidProblem("goal_radius must be positive");
    if (!free_state(problem.map, problem.start)) throw InvalidProblem("start in obstacle");
    if (!free_state(problem.map, problem.goal)) throw InvalidProblem("goal in obstacle");
}

PlannerResult trivial_result(const PlanningProblem& problem, Tree* tree_out) {
    PlannerResult result;
    result.success = true;
    result.iterations = 0;
    result.node_count = 1;
    result.path.states = {problem.start};
    if (problem.start.x != problem.goal.x || problem.start.y != problem.goal.y)
        result.path.states.push_back(problem.goal);
    result.cost = path_cost(result.path);
    if (tree_out) {
        tree_out->vertices = {problem.start};
        tree_out->parent = {-1};
        tree_out->cost_to_come = {0.0};
    }
    return result;
}

} // namespace

PlannerResult rrt_plan(const PlanningProblem& problem, const PlannerConfig& config,
                       const HeuristicSampler& sampler, Tree* tree_out) {
    validate(problem, config);
    if (in_goal_ball(problem.start, problem)) return trivial_result(problem, tree_out);

    Rng rng(config.seed);
    Tree tree;
    tree.vertices = {problem.start};
    tree.parent = {-1};
    tree.cost_to_come = {0.0};
    BucketIndex index(problem.map.width(), problem.map.height(), config.step_size);
    index.insert(0, problem.start);

    PlannerResult result;
    for (int iter = 1; iter <= config.max_iterations; ++iter) {
        result.iterations = iter;
        const auto [x_new, nearest] =
            sample_free_steer(problem, config, sampler, rng, tree, index);
        if (x_new.x == tree.vertices[nearest].x && x_new.y == tree.vertices[nearest].y)
            continue;
        if (!free_edge(problem.map, tree.vertices[nearest], x_new)) continue;
        const int v = static_cast<int>(tree.vertices.size());
        tree.vertices.push_back(x_new);
        tree.parent.push_back(nearest);
        tree.cost_to_come.push_back(tree.cost_to_come[nearest] +
                                    distance(tree.vertices[nearest], x_new));
        index.insert(v, x_new);
        if (in_goal_ball(x_new, problem)) {
            result.success = true;
            result.path = extract_path(tree, v, problem);
            result.cost = path_cost(result.path);
            break;
        }
    }
    result.node_count = static_cast<long>(tree.vertices.size());
    if (tree_out) *tree_out = std::move(tree);
    return result;
}

namespace {

// Re-parents `child` under `new_parent` and propagates the cost change to
// the whole subtree.
void reparent(Tree& tree, std::vector<std::vector<int>>& children, int child,
              int new_parent, double new_cost) {
    auto& old_list = children[tree.parent[child]];
    old_list.erase(std::find(old_list.begin(), old_list.end(), child));
    tree.parent[child] = new_parent;
    children[new_parent].push_back(child);
    const double delta = new_cost - tree.cost_to_come[child];
    std::vector<int> stack{child};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        tree.cost_to_come[v] += delta;
        for (int c : children[v]) stack.push_back(c);
    }
}

} // namespace

PlannerResult rrt_star_plan(const PlanningProblem& problem, const PlannerConfig& config,
                            const HeuristicSampler& sampler, Tree* tree_out) {
    validate(problem, config);
    if (in_goal_ball(problem.start, problem)) return trivial_result(problem, tree_out);

    Rng rng(config.seed);
    Tree tree;
    tree.vertices = {problem.start};
    tree.parent = {-1};
    tree.cost_to_come = {0.0};
    std::vector<std::vector<int>> children(1);
    BucketIndex index(problem.map.width(), problem.map.height(), config.step_size);
    index.insert(0, problem.start);

    std::vector<int> goal_vertices;
    double best_goal_cost = std::numeric_limits<double>::infinity();
    int best_goal_vertex = -1;

    PlannerResult result;
    for (int iter = 1; iter <= config.max_iterations; ++iter) {
        result.iterations = iter;
        const auto [x_new, nearest] =
            sample_free_steer(problem, config, sampler, rng, tree, index);
        if (x_new.x == tree.vertices[nearest].x && x_new.y == tree.vertices[nearest].y)
            continue;

        const std::vector<int> neighbors = index.within(x_new, config.rewire_radius, tree.vertices);
        // ChooseParent: cheapest collision-free connection among the
        // neighborhood, with the nearest vertex as fallback candidate.
        int parent = -1;
        double parent_cost = std::numeric_limits<double>::infinity();
        auto consider = [&](int cand) {
            const double c = tree.cost_to_come[cand] + distance(tree.vertices[cand], x_new);
            if (c < parent_cost && free_edge(problem.map, tree.vertices[cand], x_new)) {
                parent_cost = c;
                parent = cand;
            }
        };
        for (int cand : neighbors) consider(cand);
        if (std::find(neighbors.begin(), neighbors.end(), nearest) == neighbors.end())
            consider(nearest);
        if (parent < 0) continue;

        const int v = static_cast<int>(tree.vertices.size());
        tree.vertices.push_back(x_new);
        tree.parent.push_back(parent);
        tree.cost_to_come.push_back(parent_cost);
        children.emplace_back();
        children[parent].push_back(v);
        index.insert(v, x_new);

        // Rewire neighbors through the new vertex when that lowers their
        // cost-to-come.
        for (int nbr : neighbors) {
            const double through = tree.cost_to_come[v] + distance(x_new, tree.vertices[nbr]);
            if (through < tree.cost_to_come[nbr] &&
                free_edge(problem.map, x_new, tree.vertices[nbr]))
                reparent(tree, children, nbr, v, through);
        }

        if (in_goal_ball(x_new, problem)) {
            goal_vertices.push_back(v);
            if (!config.refine) {
                result.success = true;
                result.path = extract_path(tree, v, problem);
                result.cost = path_cost(result.path);
                break;
            }
        }
        if (config.refine && !goal_vertices.empty()) {
            for (int gv : goal_vertices) {
                if (tree.cost_to_come[gv] < best_goal_cost) {
                    best_goal_cost = tree.cost_to_come[gv];
                    best_goal_vertex = gv;
                }
            }
            if (result.refine_costs.empty() || best_goal_cost < result.refine_costs.back())
                result.refine_costs.push_back(best_goal_cost);
        }
    }
    if (config.refine && best_goal_vertex >= 0) {
        result.success = true;
        result.path = extract_path(tree, best_goal_vertex, problem);
        result.cost = path_cost(result.path);
    }
    result.node_count = static_cast<long>(tree.vertices.size());
    if (tree_out) *tree_out = std::move(tree);
    return result;
}

PlannerResult bit_star_plan(const PlanningProblem& problem, const PlannerConfig& config,
                            const HeuristicSampler& sampler, Tree* tree_out) {
    validate(problem, config);
    if (in_goal_ball(problem.start, problem)) return trivial_result(problem, tree_out);

    Rng rng(config.seed);
    Tree tree;
    tree.vertices = {problem.start};
    tree.parent = {-1};
    tree.cost_to_come = {0.0};

    struct Sample {
        State state;
        bool connected = false;
        bool is_goal = false;
    };
    std::vector<Sample> samples;
    samples.push_back(Sample{problem.goal, false, true}); // goal is always a target

    // Edge queue keyed by estimated solution cost through the edge:
    // g(v) + |v - x| + |x - goal|. Collision checks happen on pop.
    using QueueEntry = std::tuple<double, int, int>; // (f, vertex, sample slot)
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> queue;

    auto push_edges_from_vertex = [&](int v) {
        for (std::size_t s = 0; s < samples.size(); ++s) {
            if (samples[s].connected) continue;
            const double f = tree.cost_to_come[v] +
                             distance(tree.vertices[v], samples[s].state) +
                             distance(samples[s].state, problem.goal);
            queue.emplace(f, v, static_cast<int>(s));
        }
    };
    push_edges_from_vertex(0);

    const auto start_time = std::chrono::steady_clock::now();
    auto out_of_time = [&] {
        if (config.time_limit_ms <= 0.0) return false;
        const auto elapsed = std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start_time);
        return elapsed.count() > config.time_limit_ms;
    };

    PlannerResult result;
    int total_samples = 0;
    while (true) {
        if (queue.empty()) {
            if (total_samples >= config.sample_limit || out_of_time()) break;
            const int batch =
                std::min(config.batch_size, config.sample_limit - total_samples);
            const std::size_t first_new = samples.size();
            for (int k = 0; k < batch; ++k) {
                State s;
                do {
                    s = sampler.sample(rng);
                } while (!free_state(problem.map, s));
                samples.push_back(Sample{s, false, false});
                ++total_samples;
            }
            for (int v = 0; v < static_cast<int>(tree.vertices.size()); ++v) {
                for (std::size_t s = first_new; s < samples.size(); ++s) {
                    const double f = tree.cost_to_come[v] +
                                     distance(tree.vertices[v], samples[s].state) +
                                     distance(samples[s].state, problem.goal);
                    queue.emplace(f, v, static_cast<int>(s));
                }
            }
            continue;
        }

        const auto [f, v, slot] = queue.top();
        queue.pop();
        if (samples[slot].connected) continue;
        ++result.iterations;
        if ((result.iterations & 0xff) == 0 && out_of_time()) break;
        if (!free_edge(problem.map, tree.vertices[v], samples[slot].state)) continue;

        const int w = static_cast<int>(tree.vertices.size());
        tree.vertices.push_back(samples[slot].state);
        tree.parent.push_back(v);
        tree.cost_to_come.push_back(tree.cost_to_come[v] +
                                    distance(tree.vertices[v], samples[slot].state));
        samples[slot].connected = true;
        if (samples[slot].is_goal || in_goal_ball(samples[slot].state, problem)) {
            result.success = true;
            result.path = extract_path(tree, w, problem);
            result.cost = path_cost(result.path);
            break;
        }
        push_edges_from_vertex(w);
    }
    result.node_count = static_cast<long>(tree.vertices.size());
    if (tree_out) *tree_out = std::move(tree);
    return result;
}

Path lsc_shorten(const Path& path, const GridMap& map) {
    Path out = path;
    bool changed = true;
    while (changed) {
        changed = false;
        std::size_t i = 1;
        while (i + 1 < out.states.size()) {
            if (free_edge(map, out.states[i - 1], out.states[i + 1])) {
                out.states.erase(out.states.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
            } else {
                ++i;
            }
        }
    }
    return out;
}

} // namespace nhp
