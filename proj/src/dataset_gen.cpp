#include "nhp/dataset_gen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "nhp/errors.hpp"
#include "nhp/planners.hpp"
#include "nhp/region_graph.hpp"
#include "nhp/rng.hpp"

namespace nhp {

const char* to_string(MapCategory c) {
    switch (c) {
        case MapCategory::blocks: return "blocks";
        case MapCategory::walls: return "walls";
        case MapCategory::blobs: return "blobs";
        case MapCategory::dead_ends: return "dead_ends";
        case MapCategory::clutter: return "clutter";
    }
    return "unknown";
}

MapCategory category_from_string(const std::string& name) {
    if (name == "blocks") return MapCategory::blocks;
    if (name == "walls") return MapCategory::walls;
    if (name == "blobs") return MapCategory::blobs;
    if (name == "dead_ends") return MapCategory::dead_ends;
    if (name == "clutter") return MapCategory::clutter;
    throw ParseError("unknown map category: " + name);
}

namespace {

class Canvas {
public:
    Canvas(int w, int h) : w_(w), h_(h), occ_(static_cast<std::size_t>(w) * h, 0) {}

    void fill_rect(int x0, int y0, int x1, int y1) {
        for (int y = std::max(0, y0); y < std::min(h_, y1); ++y)
            for (int x = std::max(0, x0); x < std::min(w_, x1); ++x)
                occ_[static_cast<std::size_t>(y) * w_ + x] = 1;
    }

    void fill_ellipse(double cx, double cy, double a, double b, double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const double r = std::max(a, b);
        for (int y = std::max(0, static_cast<int>(cy - r)); y < std::min(h_, static_cast<int>(cy + r) + 1); ++y) {
            for (int x = std::max(0, static_cast<int>(cx - r)); x < std::min(w_, static_cast<int>(cx + r) + 1); ++x) {
                const double dx = x + 0.5 - cx;
                const double dy = y + 0.5 - cy;
                const double u = c * dx + s * dy;
                const double v = -s * dx + c * dy;
                if ((u * u) / (a * a) + (v * v) / (b * b) <= 1.0)
                    occ_[static_cast<std::size_t>(y) * w_ + x] = 1;
            }
        }
    }

    GridMap finish() const { return GridMap(w_, h_, occ_); }
    int width() const { return w_; }
    int height() const { return h_; }

private:
    int w_;
    int h_;
    std::vector<std::uint8_t> occ_;
};

// Largest 4-connected free component; returns its cells and marks them.
std::vector<int> largest_free_component(const GridMap& map) {
    const int w = map.width();
    const int h = map.height();
    std::vector<int> comp(static_cast<std::size_t>(w) * h, -1);
    std::vector<int> best;
    for (int start = 0; start < w * h; ++start) {
        if (comp[start] >= 0 || map.cells()[start]) continue;
        std::vector<int> cells;
        std::deque<int> queue{start};
        comp[start] = start;
        while (!queue.empty()) {
            const int cur = queue.front();
            queue.pop_front();
            cells.push_back(cur);
            const int cx = cur % w;
            const int cy = cur / w;
            const int nbrs[4][2] = {{cx + 1, cy}, {cx - 1, cy}, {cx, cy + 1}, {cx, cy - 1}};
            for (const auto& [nx, ny] : nbrs) {
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                const int n = ny * w + nx;
                if (comp[n] >= 0 || map.cells()[n]) continue;
                comp[n] = start;
                queue.push_back(n);
            }
        }
        if (cells.size() > best.size()) best = std::move(cells);
    }
    std::sort(best.begin(), best.end());
    return best;
}

void draw_blocks(Canvas& canvas, Rng& rng, int count) {
    for (int k = 0; k < count; ++k) {
        const int bw = 20 + static_cast<int>(rng.below(60));
        const int bh = 20 + static_cast<int>(rng.below(60));
        const int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(canvas.width())));
        const int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(canvas.height())));
        canvas.fill_rect(x, y, x + bw, y + bh);
    }
}

void draw_walls(Canvas& canvas, Rng& rng, int count) {
    const int walls = std::clamp(count, 2, 4);
    for (int k = 0; k < walls; ++k) {
        const bool vertical = rng.below(2) == 0;
        const int thickness = 4 + static_cast<int>(rng.below(5));
        const int extent = vertical ? canvas.height() : canvas.width();
        const int pos_limit = (vertical ? canvas.width() : canvas.height()) - thickness;
        const int pos = 16 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, pos_limit - 32))));
        const int gaps = 1 + static_cast<int>(rng.below(3));
        std::vector<std::pair<int, int>> openings;
        for (int g = 0; g < gaps; ++g) {
            const int gap_w = 20 + static_cast<int>(rng.below(21));
            const int gap_at = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, extent - gap_w))));
            openings.emplace_back(gap_at, gap_at + gap_w);
        }
        for (int t = 0; t < extent; ++t) {
            bool open = false;
            for (const auto& [lo, hi] : openings) open = open || (t >= lo && t < hi);
            if (open) continue;
            if (vertical)
                canvas.fill_rect(pos, t, pos + thickness, t + 1);
            else
                canvas.fill_rect(t, pos, t + 1, pos + thickness);
        }
    }
}

void draw_blobs(Canvas& canvas, Rng& rng, int count) {
    for (int k = 0; k < count; ++k) {
        const double a = 12.0 + rng.uniform() * 28.0;
        const double b = 12.0 + rng.uniform() * 28.0;
        const double theta = rng.uniform() * 3.14159265358979;
        const double cx = rng.uniform() * canvas.width();
        const double cy = rng.uniform() * canvas.height();
        canvas.fill_ellipse(cx, cy, a, b, theta);
    }
}

void draw_dead_ends(Canvas& canvas, Rng& rng, int count, bool& has_dead_end) {
    const int shapes = std::max(1, count / 2);
    for (int k = 0; k < shapes; ++k) {
        const int size_w = 40 + static_cast<int>(rng.below(50));
        const int size_h = 40 + static_cast<int>(rng.below(50));
        const int t = 4 + static_cast<int>(rng.below(3));
        const int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, canvas.width() - size_w))));
        const int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, canvas.height() - size_h))));
        const int open_side = static_cast<int>(rng.below(4)); // 0=N,1=E,2=S,3=W
        if (open_side != 0) canvas.fill_rect(x, y, x + size_w, y + t);
        if (open_side != 1) canvas.fill_rect(x + size_w - t, y, x + size_w, y + size_h);
        if (open_side != 2) canvas.fill_rect(x, y + size_h - t, x + size_w, y + size_h);
        if (open_side != 3) canvas.fill_rect(x, y, x + t, y + size_h);
        has_dead_end = true;
    }
}

void draw_clutter(Canvas& canvas, Rng& rng, int count) {
    const int shapes = std::max(20, count * 4);
    for (int k = 0; k < shapes; ++k) {
        if (rng.below(2) == 0) {
            const int bw = 5 + static_cast<int>(rng.below(11));
            const int bh = 5 + static_cast<int>(rng.below(11));
            const int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(canvas.width())));
            const int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(canvas.height())));
            canvas.fill_rect(x, y, x + bw, y + bh);
        } else {
            const double r = 3.0 + rng.uniform() * 5.0;
            canvas.fill_ellipse(rng.uniform() * canvas.width(), rng.uniform() * canvas.height(),
                                r, r, 0.0);
        }
    }
}

} // namespace

GeneratedMap gen_map(const MapRecipe& recipe) {
    if (recipe.width < 64 || recipe.height < 64)
        throw ConfigError("map size must be at least 64x64");
    for (int attempt = 0; attempt < 100; ++attempt) {
        Rng rng(recipe.seed * 1000003ULL + static_cast<std::uint64_t>(attempt));
        const int span = std::max(1, recipe.max_obstacles - recipe.min_obstacles + 1);
        const int count = recipe.min_obstacles + static_cast<int>(rng.below(static_cast<std::uint64_t>(span)));
        Canvas canvas(recipe.width, recipe.height);
        bool has_dead_end = false;
        switch (recipe.category) {
            case MapCategory::blocks: draw_blocks(canvas, rng, count); break;
            case MapCategory::walls: draw_walls(canvas, rng, count); break;
            case MapCategory::blobs: draw_blobs(canvas, rng, count); break;
            case MapCategory::dead_ends: draw_dead_ends(canvas, rng, count, has_dead_end); break;
            case MapCategory::clutter: draw_clutter(canvas, rng, count); break;
        }
        GridMap map = canvas.finish();
        const auto component = largest_free_component(map);
        const double fraction = static_cast<double>(component.size()) /
                                (static_cast<double>(recipe.width) * recipe.height);
        if (fraction >= 0.30) return GeneratedMap{std::move(map), has_dead_end};
    }
    throw GenerationFailed("could not generate a map with a 30% connected free region");
}

PlanningProblem sample_problem(const GridMap& map, double goal_radius,
                               double min_separation, std::uint64_t seed) {
    const auto component = largest_free_component(map);
    if (component.empty()) throw GenerationFailed("map has no free space");
    Rng rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const int a = component[rng.below(component.size())];
        const int b = component[rng.below(component.size())];
        const State start{a % map.width() + 0.5, a / map.width() + 0.5};
        const State goal{b % map.width() + 0.5, b / map.width() + 0.5};
        if (distance(start, goal) < min_separation) continue;
        return PlanningProblem{map, start, goal, goal_radius};
    }
    throw GenerationFailed("could not sample a start/goal pair with the requested separation");
}

namespace {

void rasterize_path(const Path& path, const GridMap& map, int stroke, RegionMask& region) {
    for (std::size_t i = 0; i + 1 < path.states.size(); ++i) {
        for (const auto& [cx, cy] : supercover_cells(path.states[i], path.states[i + 1])) {
            for (int dy = 0; dy < stroke; ++dy) {
                for (int dx = 0; dx < stroke; ++dx) {
                    const int x = cx + dx;
                    const int y = cy + dy;
                    if (!map.cell_in_bounds(x, y) || map.occupied(x, y)) continue;
                    region.set(y, x, true);
                }
            }
        }
    }
}

bool grid_bfs_solvable(const GridMap& map, const PlanningProblem& problem) {
    RegionMask all_free(map.width(), map.height());
    for (std::size_t k = 0; k < map.cells().size(); ++k)
        all_free.mask[k] = map.cells()[k] ? 0 : 1;
    return is_connected(all_free, problem);
}

} // namespace

DatasetSample gen_ground_truth(const GridMap& map, const PlanningProblem& problem,
                               int runs, int stroke, std::uint64_t seed) {
    if (runs <= 0 || stroke <= 0) throw ConfigError("runs and stroke must be positive");
    if (!grid_bfs_solvable(map, problem))
        throw Unsolvable("no free-space path between start and goal");

    const RegionMask empty(map.width(), map.height());
    const HeuristicSampler uniform(empty, 0.0);
    PlannerConfig config;
    config.step_size = 10.0;
    config.max_iterations = 5000;

    DatasetSample sample;
    sample.map = map;
    sample.problem = problem;
    sample.region = RegionMask(map.width(), map.height());

    int solutions = 0;
    const int max_attempts = 2 * runs;
    for (int attempt = 0; attempt < max_attempts && solutions < runs; ++attempt) {
        config.seed = seed + static_cast<std::uint64_t>(attempt);
        const PlannerResult result = rrt_plan(problem, config, uniform);
        if (!result.success) continue;
        const Path shortened = lsc_shorten(result.path, map);
        rasterize_path(shortened, map, stroke, sample.region);
        ++solutions;
    }
    if (solutions < runs)
        throw InsufficientSolutions("found " + std::to_string(solutions) + "/" +
                                    std::to_string(runs) + " RRT solutions");
    sample.edges = node_to_edge_labels(sample.region);
    return sample;
}

DatasetManifest gen_dataset(const std::vector<MapRecipe>& recipes, int problems_per_map,
                            int runs, int stroke, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir);

    DatasetManifest manifest;
    manifest.runs = runs;
    manifest.stroke = stroke;
    for (const auto& recipe : recipes) {
        const GeneratedMap generated = gen_map(recipe);
        const double min_sep = std::max(20.0, std::min(recipe.width, recipe.height) / 3.0);
        for (int p = 0; p < problems_per_map; ++p) {
            ManifestEntry entry;
            entry.category = recipe.category;
            entry.map_seed = recipe.seed;
            entry.problem_seed = recipe.seed * 131ULL + static_cast<std::uint64_t>(p) + 1;
            entry.gt_seed = entry.problem_seed * 977ULL;
            entry.id = std::string(to_string(recipe.category)) + "_" +
                       std::to_string(recipe.seed) + "_" + std::to_string(p);
            entry.group = (recipe.category == MapCategory::dead_ends ||
                           recipe.category == MapCategory::clutter)
                              ? "Dissimilar"
                              : "Similar";

            const PlanningProblem problem =
                sample_problem(generated.map, 5.0, min_sep, entry.problem_seed);
            const DatasetSample sample =
                gen_ground_truth(generated.map, problem, runs, stroke, entry.gt_seed);

            const std::string base = (fs::path(out_dir) / entry.id).string();
            entry.map_file = base + "_map.pgm";
            entry.problem_file = base + "_problem.json";
            entry.region_file = base + "_region.pgm";
            entry.edges_file = base + "_edges.efld";
            save_map_pgm(sample.map, entry.map_file);
            save_problem_json(sample.problem, entry.problem_file);
            save_region_pgm(sample.region, entry.region_file);
            save_efld(sample.edges, entry.edges_file);
            manifest.entries.push_back(entry);
        }
    }
    return manifest;
}

void save_manifest(const DatasetManifest& manifest, const std::string& path) {
    nlohmann::json j;
    j["runs"] = manifest.runs;
    j["stroke"] = manifest.stroke;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : manifest.entries) {
        j["entries"].push_back({{"id", e.id},
                                {"category", to_string(e.category)},
                                {"group", e.group},
                                {"map_seed", e.map_seed},
                                {"problem_seed", e.problem_seed},
                                {"gt_seed", e.gt_seed},
                                {"map_file", e.map_file},
                                {"problem_file", e.problem_file},
                                {"region_file", e.region_file},
                                {"edges_file", e.edges_file}});
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw IoError("failed writing " + path);
}

DatasetManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
        DatasetManifest manifest;
        manifest.runs = j.at("runs").get<int>();
        manifest.stroke = j.at("stroke").get<int>();
        for (const auto& je : j.at("entries")) {
            ManifestEntry e;
            e.id = je.at("id").get<std::string>();
            e.category = category_from_string(je.at("category").get<std::string>());
            e.group = je.at("group").get<std::string>();
            e.map_seed = je.at("map_seed").get<std::uint64_t>();
            e.problem_seed = je.at("problem_seed").get<std::uint64_t>();
            e.gt_seed = je.at("gt_seed").get<std::uint64_t>();
            e.map_file = je.at("map_file").get<std::string>();
            e.problem_file = je.at("problem_file").get<std::string>();
            e.region_file = je.at("region_file").get<std::string>();
            e.edges_file = je.at("edges_file").get<std::string>();
            manifest.entries.push_back(e);
        }
        return manifest;
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("malformed manifest: ") + err.what());
    }
}

} // namespace nhp
