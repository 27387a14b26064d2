// nhplan: planning, loss, dataset, and benchmark driver.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nhp/bench.hpp"
#include "nhp/dataset_gen.hpp"
#include "nhp/errors.hpp"
#include "nhp/fixtures.hpp"
#include "nhp/losses.hpp"
#include "nhp/region_graph.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string bias_tag(double b) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", b);
    std::string s(buf);
    for (auto& c : s)
        if (c == '.') c = 'p';
    return s;
}

struct BenchArgs {
    std::string planner = "rrt";
    std::string map_path;
    std::string problem_path;
    std::string region_path;
    double hb = 0.5;
    int trials = 50;
    std::uint64_t seed = 0;
    int max_iterations = 5000;
    double step = 10.0;
    std::string out_dir = "bench_out";
};

void add_bench_common(CLI::App* cmd, BenchArgs& a) {
    cmd->add_option("--planner", a.planner, "rrt | rrt_star | bit_star")
        ->check(CLI::IsMember({"rrt", "rrt_star", "bit_star"}));
    cmd->add_option("--map", a.map_path, "occupancy grid (PGM)")->required();
    cmd->add_option("--problem", a.problem_path, "problem JSON")->required();
    cmd->add_option("--region", a.region_path, "promising-region PGM (heuristic)");
    cmd->add_option("--hb", a.hb, "heuristic sampling bias");
    cmd->add_option("--trials", a.trials, "trial count");
    cmd->add_option("--seed", a.seed, "base seed");
    cmd->add_option("--max-iter", a.max_iterations, "iteration budget");
    cmd->add_option("--step", a.step, "steer step size");
    cmd->add_option("--out", a.out_dir, "output directory")->required();
}

nhp::ExperimentConfig to_config(const BenchArgs& a) {
    nhp::ExperimentConfig config;
    config.planner = nhp::planner_from_string(a.planner);
    config.problem = nhp::load_problem(a.map_path, a.problem_path);
    if (!a.region_path.empty()) {
        config.region = nhp::load_region_pgm(a.region_path);
        config.heuristic_bias = a.hb;
    }
    config.trials = a.trials;
    config.planner_config.seed = a.seed;
    config.planner_config.max_iterations = a.max_iterations;
    config.planner_config.step_size = a.step;
    return config;
}

int run_bench_plan(const BenchArgs& a) {
    const nhp::ExperimentConfig config = to_config(a);
    const nhp::AggregateResult result = nhp::run_experiment(config);
    fs::create_directories(a.out_dir);
    nhp::write_trials_csv(result, a.out_dir + "/trials.csv");
    nhp::write_aggregate_json(result, config, a.out_dir + "/aggregate.json");
    std::printf("planner=%s trials=%d success_rate=%.3f mean_iter=%.1f mean_cost=%.3f\n",
                a.planner.c_str(), a.trials, result.success_rate, result.mean_iterations,
                result.mean_cost);
    return 0;
}

int run_bench_sweep(const BenchArgs& a, const std::vector<double>& biases) {
    if (a.region_path.empty())
        throw nhp::ConfigError("sweep requires --region");
    const nhp::ExperimentConfig config = to_config(a);
    const auto rows = nhp::sweep_bias(config, biases);
    fs::create_directories(a.out_dir);
    json summary = json::array();
    for (const auto& row : rows) {
        const std::string tag = bias_tag(row.bias);
        nhp::write_trials_csv(row.result, a.out_dir + "/trials_hb" + tag + ".csv");
        summary.push_back({{"bias", row.bias},
                           {"success_rate", row.result.success_rate},
                           {"mean_iterations", row.result.mean_iterations},
                           {"mean_nodes", row.result.mean_nodes},
                           {"mean_cost", row.result.mean_cost}});
        std::printf("hb=%.2f success_rate=%.3f mean_iter=%.1f mean_cost=%.3f\n", row.bias,
                    row.result.success_rate, row.result.mean_iterations,
                    row.result.mean_cost);
    }
    std::ofstream out(a.out_dir + "/sweep.json");
    out << summary.dump(2) << "\n";
    return 0;
}

int run_bench_eval(const std::string& manifest_path, const std::string& pred_dir,
                   double threshold, const std::string& out_path) {
    const nhp::DatasetManifest manifest = nhp::load_manifest(manifest_path);
    const auto groups = nhp::eval_predictions(manifest, pred_dir, threshold);
    json report = json::array();
    for (const auto& g : groups) {
        report.push_back({{"group", g.group},
                          {"cases", g.cases},
                          {"connectivity_rate", g.connectivity_rate},
                          {"mean_false_negative_rate", g.mean_false_negative_rate}});
        std::printf("%-10s cases=%d connectivity_rate=%.3f fnr=%.3f\n", g.group.c_str(),
                    g.cases, g.connectivity_rate, g.mean_false_negative_rate);
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << report.dump(2) << "\n";
    }
    return 0;
}

int run_loss(const std::string& truth_path, const std::string& pred_path,
             const std::string& region_path, const std::string& out_path,
             const std::string& grad_out, bool grad_check) {
    const nhp::EdgeField truth = nhp::load_efld(truth_path);
    const nhp::EdgeField pred = nhp::load_efld(pred_path);
    const nhp::RegionMask region = nhp::load_region_pgm(region_path);

    const nhp::LossOutput bce = nhp::bce_xy(truth, pred);
    const nhp::LossOutput dice = nhp::dice_xy(truth, pred);
    const nhp::LossOutput conn = nhp::connectivity_loss(region, pred);
    const nhp::LossOutput total = nhp::total_loss(truth, region, pred);

    json report{{"bce", bce.value},
                {"dice", dice.value},
                {"conn", conn.value},
                {"total", total.value}};

    if (grad_check) {
        // central finite differences on the total loss, non-padding entries
        const double step = 1e-5;
        double worst = 0.0;
        nhp::EdgeField probe = pred;
        auto probe_entry = [&](std::vector<double>& channel, std::size_t k, double g) {
            if (std::abs(g) <= 1e-8) return;
            const double saved = channel[k];
            channel[k] = saved + step;
            const double up = nhp::serial::total_loss(truth, region, probe).value;
            channel[k] = saved - step;
            const double down = nhp::serial::total_loss(truth, region, probe).value;
            channel[k] = saved;
            const double fd = (up - down) / (2.0 * step);
            worst = std::max(worst, std::abs(fd - g) / std::abs(g));
        };
        for (int i = 0; i < pred.height; ++i)
            for (int j = 0; j < pred.width; ++j) {
                const std::size_t k = pred.idx(i, j);
                if (j + 1 < pred.width) probe_entry(probe.px, k, total.grad_x[k]);
                if (i + 1 < pred.height) probe_entry(probe.py, k, total.grad_y[k]);
            }
        report["max_rel_grad_error"] = worst;
        std::printf("max relative gradient error: %.3e\n", worst);
    }

    if (!grad_out.empty()) {
        nhp::EdgeField grad(pred.width, pred.height);
        grad.px = total.grad_x;
        grad.py = total.grad_y;
        nhp::save_efld(grad, grad_out);
    }

    if (out_path.empty())
        std::cout << report.dump(2) << "\n";
    else {
        std::ofstream out(out_path);
        out << report.dump(2) << "\n";
    }
    return 0;
}

int run_gen_maps(const std::string& category, int count, int size, std::uint64_t seed,
                 const std::string& out_dir) {
    fs::create_directories(out_dir);
    for (int k = 0; k < count; ++k) {
        nhp::MapRecipe recipe;
        recipe.category = nhp::category_from_string(category);
        recipe.width = size;
        recipe.height = size;
        recipe.seed = seed + static_cast<std::uint64_t>(k);
        const nhp::GeneratedMap g = nhp::gen_map(recipe);
        char name[64];
        std::snprintf(name, sizeof(name), "%s_%03d.pgm", category.c_str(), k);
        nhp::save_map_pgm(g.map, out_dir + "/" + name);
        std::printf("wrote %s/%s\n", out_dir.c_str(), name);
    }
    return 0;
}

int run_gen_gt(const std::vector<std::string>& categories, int count, int size, int runs,
               int stroke, std::uint64_t seed, const std::string& out_dir) {
    std::vector<nhp::MapRecipe> recipes;
    std::uint64_t next_seed = seed;
    for (const auto& cat : categories)
        for (int k = 0; k < count; ++k) {
            nhp::MapRecipe recipe;
            recipe.category = nhp::category_from_string(cat);
            recipe.width = size;
            recipe.height = size;
            recipe.seed = next_seed++;
            recipes.push_back(recipe);
        }
    const nhp::DatasetManifest manifest =
        nhp::gen_dataset(recipes, 1, runs, stroke, out_dir);
    nhp::save_manifest(manifest, out_dir + "/manifest.json");
    std::printf("wrote %zu samples under %s\n", manifest.entries.size(), out_dir.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"connectivity-aware heuristic path planning toolkit"};
    app.require_subcommand(1);

    // bench plan/sweep/eval
    CLI::App* bench = app.add_subcommand("bench", "benchmark harness");
    bench->require_subcommand(1);

    BenchArgs plan_args;
    CLI::App* plan = bench->add_subcommand("plan", "run a seeded trial batch");
    add_bench_common(plan, plan_args);

    BenchArgs sweep_args;
    std::vector<double> biases{0.0, 0.3, 0.6, 0.9};
    CLI::App* sweep = bench->add_subcommand("sweep", "bias sweep");
    add_bench_common(sweep, sweep_args);
    sweep->add_option("--biases", biases, "h_b values")->delimiter(',');

    std::string manifest_path, pred_dir, eval_out;
    double threshold = 0.09;
    CLI::App* eval = bench->add_subcommand("eval", "score predictions against a dataset");
    eval->add_option("--manifest", manifest_path, "dataset manifest JSON")->required();
    eval->add_option("--pred", pred_dir, "directory of <id>_pred.efld / .npf files")
        ->required();
    eval->add_option("--threshold", threshold, "region decode threshold");
    eval->add_option("--out", eval_out, "report JSON path");

    // loss
    std::string truth_path, pred_path, region_path, loss_out, grad_out;
    bool grad_check = false;
    CLI::App* loss = app.add_subcommand("loss", "evaluate the training losses");
    loss->add_option("--truth", truth_path, "ground-truth EFLD")->required();
    loss->add_option("--pred", pred_path, "predicted EFLD")->required();
    loss->add_option("--region", region_path, "ground-truth region PGM")->required();
    loss->add_option("--out", loss_out, "report JSON path (default: stdout)");
    loss->add_option("--grad-out", grad_out, "write the total-loss gradient as EFLD");
    loss->add_flag("--grad-check", grad_check, "finite-difference gradient audit");

    // gen-maps / gen-gt
    std::string category = "blocks";
    int count = 10, size = 256, runs = 50, stroke = 2;
    std::uint64_t gen_seed = 0;
    std::string gen_out = "maps";
    CLI::App* gen_maps = app.add_subcommand("gen-maps", "generate obstacle maps");
    gen_maps->add_option("--category", category,
                         "blocks | walls | blobs | dead_ends | clutter");
    gen_maps->add_option("--count", count, "maps to generate");
    gen_maps->add_option("--size", size, "map side length");
    gen_maps->add_option("--seed", gen_seed, "base seed");
    gen_maps->add_option("--out", gen_out, "output directory")->required();

    std::vector<std::string> gt_categories{"blocks", "walls", "blobs", "dead_ends",
                                           "clutter"};
    int gt_count = 2, gt_size = 256;
    std::uint64_t gt_seed = 0;
    std::string gt_out = "dataset";
    CLI::App* gen_gt = app.add_subcommand("gen-gt", "generate a ground-truth dataset");
    gen_gt->add_option("--category", gt_categories, "obstacle families")->delimiter(',');
    gen_gt->add_option("--count", gt_count, "maps per category");
    gen_gt->add_option("--size", gt_size, "map side length");
    gen_gt->add_option("--runs", runs, "RRT solutions per sample");
    gen_gt->add_option("--stroke", stroke, "rasterization stroke width");
    gen_gt->add_option("--seed", gt_seed, "base seed");
    gen_gt->add_option("--out", gt_out, "output directory")->required();

    // fixtures
    std::string fixtures_out = "fixtures";
    CLI::App* fixtures = app.add_subcommand("fixtures", "write the benchmark fixtures");
    fixtures->add_option("--out", fixtures_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan->parsed()) return run_bench_plan(plan_args);
        if (sweep->parsed()) return run_bench_sweep(sweep_args, biases);
        if (eval->parsed())
            return run_bench_eval(manifest_path, pred_dir, threshold, eval_out);
        if (loss->parsed())
            return run_loss(truth_path, pred_path, region_path, loss_out, grad_out,
                            grad_check);
        if (gen_maps->parsed())
            return run_gen_maps(category, count, size, gen_seed, gen_out);
        if (gen_gt->parsed())
            return run_gen_gt(gt_categories, gt_count, gt_size, runs, stroke, gt_seed,
                              gt_out);
        if (fixtures->parsed()) {
            fs::create_directories(fixtures_out);
            nhp::fixtures::write_all(fixtures_out);
            std::printf("wrote fixtures under %s\n", fixtures_out.c_str());
            return 0;
        }
    } catch (const nhp::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
