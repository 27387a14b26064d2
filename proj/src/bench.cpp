#include "nhp/bench.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>

#include "nhp/errors.hpp"
#include "nhp/heuristic.hpp"
#include "nhp/region_graph.hpp"

namespace nhp {

const char* to_string(PlannerKind k) {
    switch (k) {
        case PlannerKind::rrt: return "rrt";
        case PlannerKind::rrt_star: return "rrt_star";
        case PlannerKind::bit_star: return "bit_star";
    }
    return "unknown";
}

PlannerKind planner_from_string(const std::string& name) {
    if (name == "rrt") return PlannerKind::rrt;
    if (name == "rrt_star") return PlannerKind::rrt_star;
    if (name == "bit_star") return PlannerKind::bit_star;
    throw ParseError("unknown planner: " + name);
}

AggregateResult run_experiment(const ExperimentConfig& config) {
    if (config.trials < 1) throw ConfigError("trials must be at least 1");
    if (config.heuristic_bias < 0.0 || config.heuristic_bias > 1.0)
        throw ConfigError("heuristic bias must lie in [0,1]");
    if (config.region && (config.region->width != config.problem.map.width() ||
                          config.region->height != config.problem.map.height()))
        throw DimensionMismatch("heuristic region does not match the map");

    const RegionMask empty(config.problem.map.width(), config.problem.map.height());
    const HeuristicSampler sampler(config.region ? *config.region : empty,
                                   config.region ? config.heuristic_bias : 0.0);

    AggregateResult agg;
    agg.rows.resize(static_cast<std::size_t>(config.trials));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int trial = 0; trial < config.trials; ++trial) {
        PlannerConfig pc = config.planner_config;
        pc.seed = config.planner_config.seed + static_cast<std::uint64_t>(trial);
        PlannerResult r;
        switch (config.planner) {
            case PlannerKind::rrt: r = rrt_plan(config.problem, pc, sampler); break;
            case PlannerKind::rrt_star: r = rrt_star_plan(config.problem, pc, sampler); break;
            case PlannerKind::bit_star: r = bit_star_plan(config.problem, pc, sampler); break;
        }
        auto& row = agg.rows[static_cast<std::size_t>(trial)];
        row.trial = trial;
        row.success = r.success;
        row.iterations = r.iterations;
        row.nodes = r.node_count;
        row.cost = r.cost;
    }

    long long iter_sum = 0;
    long long node_sum = 0;
    double cost_sum = 0.0;
    int successes = 0;
    for (const auto& row : agg.rows) {
        iter_sum += row.iterations;
        node_sum += row.nodes;
        if (row.success) {
            cost_sum += row.cost;
            ++successes;
        }
    }
    agg.mean_iterations = static_cast<double>(iter_sum) / config.trials;
    agg.mean_nodes = static_cast<double>(node_sum) / config.trials;
    agg.mean_cost = successes > 0 ? cost_sum / successes : 0.0;
    agg.success_rate = static_cast<double>(successes) / config.trials;
    return agg;
}

void write_trials_csv(const AggregateResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "trial,success,iterations,nodes,cost\n";
    char buf[64];
    for (const auto& row : result.rows) {
        out << row.trial << ',' << (row.success ? 1 : 0) << ',' << row.iterations << ','
            << row.nodes << ',';
        if (row.success) {
            std::snprintf(buf, sizeof(buf), "%.6f", row.cost);
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path);
}

void write_aggregate_json(const AggregateResult& result, const ExperimentConfig& config,
                          const std::string& path) {
    nlohmann::json j;
    j["planner"] = to_string(config.planner);
    j["trials"] = config.trials;
    j["heuristic_bias"] = config.heuristic_bias;
    j["seed"] = config.planner_config.seed;
    j["mean_iterations"] = result.mean_iterations;
    j["mean_nodes"] = result.mean_nodes;
    j["mean_cost"] = result.mean_cost;
    j["mean_cost_convention"] = "averaged over successful trials only";
    j["success_rate"] = result.success_rate;
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw IoError("failed writing " + path);
}

std::vector<BiasSweepRow> sweep_bias(const ExperimentConfig& config,
                                     const std::vector<double>& biases) {
    std::vector<BiasSweepRow> rows;
    for (double bias : biases) {
        ExperimentConfig c = config;
        c.heuristic_bias = bias;
        if (bias == 0.0) c.region.reset(); // degenerates to the plain algorithm
        rows.push_back(BiasSweepRow{bias, run_experiment(c)});
    }
    return rows;
}

std::vector<EvalGroupMetrics> eval_predictions(const DatasetManifest& manifest,
                                               const std::string& predictions_dir,
                                               double threshold) {
    namespace fs = std::filesystem;
    struct GroupAccum {
        std::vector<RegionMask> regions;
        std::vector<PlanningProblem> problems;
        double fnr_sum = 0.0;
        int cases = 0;
    };
    std::map<std::string, GroupAccum> groups;

    for (const auto& entry : manifest.entries) {
        const fs::path efld = fs::path(predictions_dir) / (entry.id + "_pred.efld");
        const fs::path npf = fs::path(predictions_dir) / (entry.id + "_pred.npf");
        RegionMask pred;
        if (fs::exists(efld)) {
            pred = decode_region(load_efld(efld.string()), threshold);
        } else if (fs::exists(npf)) {
            const EdgeField raw = load_efld(npf.string());
            NodePairField np(raw.width, raw.height);
            np.c1 = raw.px;
            np.c2 = raw.py;
            pred = decode_region_nodepair(np);
        } else {
            throw MissingPrediction("no prediction for sample " + entry.id);
        }
        const RegionMask truth = load_region_pgm(entry.region_file);
        const PlanningProblem problem = load_problem(entry.map_file, entry.problem_file);
        auto& acc = groups[entry.group];
        acc.fnr_sum += false_negative_rate(pred, truth);
        acc.regions.push_back(std::move(pred));
        acc.problems.push_back(problem);
        ++acc.cases;
    }

    std::vector<EvalGroupMetrics> out;
    for (auto& [name, acc] : groups) {
        std::vector<std::pair<const RegionMask*, const PlanningProblem*>> cases;
        for (std::size_t k = 0; k < acc.regions.size(); ++k)
            cases.emplace_back(&acc.regions[k], &acc.problems[k]);
        EvalGroupMetrics m;
        m.group = name;
        m.cases = acc.cases;
        m.connectivity_rate = connectivity_rate(cases);
        m.mean_false_negative_rate = acc.fnr_sum / acc.cases;
        out.push_back(m);
    }
    return out;
}

} // namespace nhp
