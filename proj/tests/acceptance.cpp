// Acceptance gate. Each criterion prints exactly one pass/fail line; the
// process exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nhp/bench.hpp"
#include "nhp/dataset_gen.hpp"
#include "nhp/fixtures.hpp"
#include "nhp/losses.hpp"
#include "nhp/mst_cbpt.hpp"
#include "nhp/planners.hpp"
#include "nhp/region_graph.hpp"
#include "oracles.hpp"

using namespace nhp;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", criterion, ok ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- criterion 1: finite-difference gradient oracle ---------------------
void criterion_gradients() {
    const auto t0 = Clock::now();
    Rng rng(100);
    double worst = 0.0;
    int fields = 0;

    for (int k = 0; k < 6; ++k) {
        const RegionMask m = oracles::random_mask(16, 16, 0.4, rng);
        const EdgeField truth = node_to_edge_labels(m);
        const EdgeField pred = oracles::random_field(16, 16, 0.05, 0.95, rng);
        const LossOutput bce = bce_xy(truth, pred);
        worst = std::max(worst, oracles::max_rel_grad_error(
                                    [&](const EdgeField& p) {
                                        return serial::bce_xy(truth, p).value;
                                    },
                                    pred, bce, 1e-5));
        const LossOutput dice = dice_xy(truth, pred);
        worst = std::max(worst, oracles::max_rel_grad_error(
                                    [&](const EdgeField& p) {
                                        return serial::dice_xy(truth, p).value;
                                    },
                                    pred, dice, 1e-5));
        fields += 2;
    }
    for (int k = 0; k < 6; ++k) {
        const RegionMask m = oracles::random_mask(12, 12, 0.5, rng);
        const EdgeField pred = oracles::random_field_separated(12, 12, rng);
        const LossOutput conn = connectivity_loss(m, pred);
        worst = std::max(worst, oracles::max_rel_grad_error(
                                    [&](const EdgeField& p) {
                                        return serial::connectivity_loss(m, p).value;
                                    },
                                    pred, conn, 1e-6));
        ++fields;
    }
    for (int k = 0; k < 8; ++k) {
        const RegionMask m = oracles::random_mask(16, 16, 0.4, rng);
        const EdgeField truth = node_to_edge_labels(m);
        const EdgeField pred = oracles::random_field(16, 16, 0.05, 0.95, rng);
        const LossOutput total = total_loss(truth, m, pred);
        worst = std::max(worst, oracles::max_rel_grad_error(
                                    [&](const EdgeField& p) {
                                        return serial::total_loss(truth, m, p).value;
                                    },
                                    pred, total, 1e-5));
        ++fields;
    }

    const double elapsed = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "gradient oracle: %d fields, max rel error %.2e (< 1e-4), %.1fs (< 60s)",
                  fields, worst, elapsed);
    report(1, fields >= 20 && worst < 1e-4 && elapsed < 60.0, buf);
}

// --- criterion 2: brute-force maximin weights ---------------------------
void criterion_maximin() {
    const auto t0 = Clock::now();
    Rng rng(200);
    int grids = 0, mismatches = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int w = 2 + static_cast<int>(rng.below(7));
        const int h = 2 + static_cast<int>(rng.below(7));
        const EdgeField f = oracles::random_field(w, h, 0.0, 1.0, rng);
        const RegionMask truth = oracles::random_mask(w, h, 0.55, rng);
        if (edge_weights(build_cbpt(f, truth)) !=
            oracles::brute_force_maximin_weights(f, truth))
            ++mismatches;
        ++grids;
    }
    const double elapsed = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "maximin weight oracle: %d grids up to 8x8, %d mismatches, %.1fs (< 30s)",
                  grids, mismatches, elapsed);
    report(2, grids >= 50 && mismatches == 0 && elapsed < 30.0, buf);
}

// --- criterion 3: loss anchors ------------------------------------------
void criterion_loss_anchors() {
    bool ok = true;
    std::string why = "loss anchors hold";

    Rng rng(300);
    for (int k = 0; k < 10000; ++k) {
        const int side = 3 + static_cast<int>(rng.below(4));
        const RegionMask m = oracles::random_mask(side, side, rng.uniform(), rng);
        const EdgeField pred = oracles::random_field(side, side, 0.0, 1.0, rng);
        const double v = connectivity_loss(m, pred).value;
        if (!(v >= 0.0 && v <= 1.0)) {
            ok = false;
            why = "connectivity loss left [0,1]";
            break;
        }
    }

    if (ok) {
        RegionMask full(4, 4);
        full.mask.assign(16, 1);
        EdgeField ones(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (j < 3) ones.px[ones.idx(i, j)] = 1.0;
                if (i < 3) ones.py[ones.idx(i, j)] = 1.0;
            }
        if (connectivity_loss(full, ones).value != 0.0) {
            ok = false;
            why = "p=1 forest gave nonzero connectivity loss";
        }
    }

    if (ok) {
        RegionMask pair(2, 1);
        pair.mask.assign(2, 1);
        for (double p : {0.0, 0.25, 0.5, 0.93}) {
            EdgeField f(2, 1);
            f.px[0] = p;
            if (connectivity_loss(pair, f).value != (1.0 - p) * (1.0 - p)) {
                ok = false;
                why = "single-edge case is not (1-p)^2";
                break;
            }
        }
    }

    if (ok) {
        RegionMask m(5, 5);
        for (int i = 1; i < 4; ++i)
            for (int j = 1; j < 4; ++j) m.set(i, j, true);
        const EdgeField truth = node_to_edge_labels(m);
        EdgeField disjoint(5, 5);
        disjoint.px[disjoint.idx(4, 0)] = 0.9;
        if (std::abs(dice_xy(truth, truth).value) > 1e-12 ||
            std::abs(dice_xy(truth, disjoint).value - 1.0) > 1e-12) {
            ok = false;
            why = "dice anchors (0 on match, 1 on disjoint) failed";
        }
    }

    report(3, ok, why);
}

// --- criterion 4: representation round-trip -----------------------------
// The literal precondition "masks whose promising nodes each have both owned
// edges promising" admits only the empty mask (the promising node maximizing
// i+j always owns an unpromising or padding edge). Checked instead as the
// exact computable invariant: decoding the encoded labels at t=0.09 yields
// precisely the nodes whose owned-label average clears t, which is a subset
// of the mask and fixes every interior node whose owned edges are promising.
void criterion_round_trip() {
    Rng rng(400);
    bool ok = true;
    std::string why =
        "decode(encode(m), 0.09) matches the owned-label rule on 100 masks "
        "(see analysis note in source)";
    for (int trial = 0; trial < 100 && ok; ++trial) {
        const int w = 3 + static_cast<int>(rng.below(10));
        const int h = 3 + static_cast<int>(rng.below(10));
        const RegionMask m = oracles::random_mask(w, h, 0.3 + 0.5 * rng.uniform(), rng);
        const EdgeField labels = node_to_edge_labels(m);
        const RegionMask decoded = decode_region(labels, 0.09);
        for (int i = 0; i < h && ok; ++i)
            for (int j = 0; j < w; ++j) {
                const double avg =
                    (labels.px[labels.idx(i, j)] + labels.py[labels.idx(i, j)]) / 2.0;
                const bool expect = avg > 0.09;
                if (decoded.at(i, j) != expect) {
                    ok = false;
                    why = "decoded mask deviates from the owned-label rule";
                    break;
                }
                if (decoded.at(i, j) && !m.at(i, j)) {
                    ok = false;
                    why = "decoded mask is not a subset of the source mask";
                    break;
                }
                const bool both_owned =
                    labels.px[labels.idx(i, j)] == 1.0 && labels.py[labels.idx(i, j)] == 1.0;
                if (both_owned && !decoded.at(i, j)) {
                    ok = false;
                    why = "node with both owned edges promising was dropped";
                    break;
                }
            }
    }
    report(4, ok, why);
}

// --- criterion 5: connectivity metric -----------------------------------
void criterion_connectivity_metric() {
    bool ok = true;
    std::string why;

    const PlanningProblem two = fixtures::two_passage_problem();
    const RegionMask connected = fixtures::two_passage_connected_region();
    const RegionMask cut = fixtures::two_passage_disconnected_region();
    const PlanningProblem dead = fixtures::dead_end_problem();
    const RegionMask dead_conn = fixtures::dead_end_connected_region();
    const RegionMask dead_cut = fixtures::dead_end_disconnected_region();

    const double rate_conn = connectivity_rate({{&connected, &two}, {&dead_conn, &dead}});
    const double rate_cut = connectivity_rate({{&cut, &two}, {&dead_cut, &dead}});
    if (rate_conn != 1.0 || rate_cut != 0.0) {
        ok = false;
        why = "hand-built masks misclassified";
    }

    int gt_connected = 0, gt_total = 0;
    if (ok) {
        std::vector<MapRecipe> recipes;
        std::uint64_t s = 500;
        for (MapCategory c : {MapCategory::blocks, MapCategory::walls, MapCategory::blobs,
                              MapCategory::dead_ends, MapCategory::clutter}) {
            MapRecipe r;
            r.category = c;
            r.width = 96;
            r.height = 96;
            r.seed = s++;
            recipes.push_back(r);
        }
        const std::string dir = "acceptance_dataset";
        std::filesystem::remove_all(dir);
        const DatasetManifest manifest = gen_dataset(recipes, 1, 5, 2, dir);
        for (const auto& e : manifest.entries) {
            const PlanningProblem p = load_problem(e.map_file, e.problem_file);
            const RegionMask region = load_region_pgm(e.region_file);
            ++gt_total;
            if (is_connected(region, p)) ++gt_connected;
        }
        std::filesystem::remove_all(dir);
        if (gt_connected != gt_total) ok = false;
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "connectivity metric: hand masks 1.0/0.0, ground-truth rate %d/%d",
                  gt_connected, gt_total);
    report(5, ok, ok ? buf : (why.empty() ? buf : why.c_str()));
}

// --- criterion 6: planner soundness -------------------------------------
void criterion_planner_soundness() {
    struct Case {
        PlanningProblem problem;
        const RegionMask* region;
        double hb;
    };
    const PlanningProblem open = fixtures::open_problem();
    const PlanningProblem two = fixtures::two_passage_problem();
    const PlanningProblem dead = fixtures::dead_end_problem();
    const RegionMask two_region = fixtures::two_passage_connected_region();
    const RegionMask dead_region = fixtures::dead_end_connected_region();
    const RegionMask open_empty(open.map.width(), open.map.height());

    std::vector<Case> cases{{open, &open_empty, 0.0},
                            {two, &two_region, 0.5},
                            {dead, &dead_region, 0.5}};

    int trials = 0, violations = 0, successes = 0;
    for (const auto& c : cases) {
        const HeuristicSampler sampler(*c.region, c.hb);
        for (int planner = 0; planner < 3; ++planner) {
            const int per = planner == 0 ? 30 : 20; // 3*(30+20+20)=210 trials
            for (int t = 0; t < per; ++t) {
                PlannerConfig config;
                config.seed = 600 + static_cast<std::uint64_t>(trials);
                const PlannerResult r =
                    planner == 0   ? rrt_plan(c.problem, config, sampler)
                    : planner == 1 ? rrt_star_plan(c.problem, config, sampler)
                                   : bit_star_plan(c.problem, config, sampler);
                ++trials;
                if (!r.success) continue;
                ++successes;
                bool sound = !r.path.states.empty() &&
                             r.path.states.front().x == c.problem.start.x &&
                             r.path.states.front().y == c.problem.start.y &&
                             distance(r.path.states.back(), c.problem.goal) <=
                                 c.problem.goal_radius &&
                             r.cost >= distance(c.problem.start, c.problem.goal) -
                                           c.problem.goal_radius - 1e-9;
                for (std::size_t i = 0; sound && i + 1 < r.path.states.size(); ++i)
                    sound = free_edge(c.problem.map, r.path.states[i], r.path.states[i + 1]);
                if (!sound) ++violations;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "planner soundness: %d trials, %d solutions audited, %d violations",
                  trials, successes, violations);
    report(6, trials >= 200 && successes > 0 && violations == 0, buf);
}

// --- criteria 7-9: directional benchmark reproductions ------------------
AggregateResult bench_two_passage(std::optional<RegionMask> region, double hb,
                                  std::uint64_t seed, PlannerKind kind) {
    ExperimentConfig config;
    config.planner = kind;
    config.problem = fixtures::two_passage_problem();
    config.region = std::move(region);
    config.heuristic_bias = hb;
    config.trials = 50;
    config.planner_config.seed = seed;
    return run_experiment(config);
}

void criterion_table2() {
    const auto t0 = Clock::now();
    const AggregateResult plain =
        bench_two_passage(std::nullopt, 0.0, 700, PlannerKind::rrt);
    const AggregateResult biased = bench_two_passage(
        fixtures::two_passage_connected_region(), 0.5, 700, PlannerKind::rrt);
    const double elapsed = seconds_since(t0);
    const bool ok = biased.mean_iterations <= 0.8 * plain.mean_iterations &&
                    biased.success_rate == 1.0 && elapsed < 300.0;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "two-passage, hb=0.5: biased mean iters %.1f vs plain %.1f (<= 0.8x), "
                  "success %.0f%%, %.1fs",
                  biased.mean_iterations, plain.mean_iterations,
                  100.0 * biased.success_rate, elapsed);
    report(7, ok, buf);
}

void criterion_bias_sweep() {
    const AggregateResult low = bench_two_passage(
        fixtures::two_passage_connected_region(), 0.3, 800, PlannerKind::rrt);
    const AggregateResult high = bench_two_passage(
        fixtures::two_passage_connected_region(), 0.9, 800, PlannerKind::rrt);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "bias sweep: mean iters %.1f at hb=0.9 < %.1f at hb=0.3",
                  high.mean_iterations, low.mean_iterations);
    report(8, high.mean_iterations < low.mean_iterations, buf);
}

void criterion_degradation() {
    ExperimentConfig config;
    config.planner = PlannerKind::rrt;
    config.problem = fixtures::dead_end_problem();
    config.heuristic_bias = 0.9;
    config.trials = 50;
    config.planner_config.seed = 900;

    config.region = fixtures::dead_end_connected_region();
    const AggregateResult connected = run_experiment(config);
    config.region = fixtures::dead_end_disconnected_region();
    const AggregateResult cut = run_experiment(config);

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "dead-end, hb=0.9: disconnected success %.0f%% < connected %.0f%%",
                  100.0 * cut.success_rate, 100.0 * connected.success_rate);
    report(9, cut.success_rate < connected.success_rate, buf);
}

// --- criterion 10: byte-identical reruns --------------------------------
void criterion_determinism() {
    const std::string dir = "acceptance_determinism";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);

    ExperimentConfig config;
    config.planner = PlannerKind::rrt;
    config.problem = fixtures::two_passage_problem();
    config.region = fixtures::two_passage_connected_region();
    config.heuristic_bias = 0.5;
    config.trials = 20;
    config.planner_config.seed = 1000;

    bool ok = true;
    for (int pass = 0; pass < 2; ++pass) {
        const AggregateResult result = run_experiment(config);
        const std::string tag = std::to_string(pass);
        write_trials_csv(result, dir + "/trials" + tag + ".csv");
        write_aggregate_json(result, config, dir + "/aggregate" + tag + ".json");

        MapRecipe recipe;
        recipe.category = MapCategory::walls;
        recipe.width = 96;
        recipe.height = 96;
        recipe.seed = 77;
        const GridMap map = gen_map(recipe).map;
        const PlanningProblem problem = sample_problem(map, 5.0, 40.0, 2);
        const DatasetSample sample = gen_ground_truth(map, problem, 4, 2, 5);
        save_efld(sample.edges, dir + "/edges" + tag + ".efld");
    }
    ok = ok && slurp(dir + "/trials0.csv") == slurp(dir + "/trials1.csv");
    ok = ok && slurp(dir + "/aggregate0.json") == slurp(dir + "/aggregate1.json");
    ok = ok && !slurp(dir + "/edges0.efld").empty() &&
         slurp(dir + "/edges0.efld") == slurp(dir + "/edges1.efld");
    std::filesystem::remove_all(dir);
    report(10, ok, "determinism: rerun CSV/JSON/EFLD outputs byte-identical");
}

} // namespace

int main() {
    criterion_gradients();
    criterion_maximin();
    criterion_loss_anchors();
    criterion_round_trip();
    criterion_connectivity_metric();
    criterion_planner_soundness();
    criterion_table2();
    criterion_bias_sweep();
    criterion_degradation();
    criterion_determinism();
    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
