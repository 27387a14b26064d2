#include "nhp/grid_map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

#include "nhp/errors.hpp"
#include "pgm_io.hpp"

namespace nhp {

GridMap::GridMap(int width, int height, std::vector<std::uint8_t> occupancy)
    : width_(width), height_(height), occ_(std::move(occupancy)) {
    if (width_ < 2 || height_ < 2)
        throw InvalidProblem("GridMap must be at least 2x2");
    if (occ_.size() != static_cast<std::size_t>(width_) * height_)
        throw InvalidProblem("occupancy size does not match dimensions");
}

bool free_state(const GridMap& map, const State& s) {
    if (!map.in_bounds(s.x, s.y))
        throw OutOfBounds("state outside map bounds");
    const int cx = static_cast<int>(std::floor(s.x));
    const int cy = static_cast<int>(std::floor(s.y));
    return !map.occupied(cx, cy);
}

namespace {

// Closed segment vs closed unit square [cx,cx+1]x[cy,cy+1], Liang-Barsky.
bool segment_touches_cell(const State& a, const State& b, int cx, int cy) {
    double t0 = 0.0, t1 = 1.0;
    const double d[2] = {b.x - a.x, b.y - a.y};
    const double p[2] = {a.x, a.y};
    const double lo[2] = {static_cast<double>(cx), static_cast<double>(cy)};
    for (int axis = 0; axis < 2; ++axis) {
        const double hi = lo[axis] + 1.0;
        if (d[axis] == 0.0) {
            if (p[axis] < lo[axis] || p[axis] > hi) return false;
        } else {
            double ta = (lo[axis] - p[axis]) / d[axis];
            double tb = (hi - p[axis]) / d[axis];
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return false;
        }
    }
    return true;
}

void collect_cells(const State& a, const State& b,
                   std::vector<std::pair<int, int>>& out) {
    const int x_lo = static_cast<int>(std::floor(std::min(a.x, b.x))) - 1;
    const int x_hi = static_cast<int>(std::floor(std::max(a.x, b.x)));
    const int y_lo = static_cast<int>(std::floor(std::min(a.y, b.y))) - 1;
    const int y_hi = static_cast<int>(std::floor(std::max(a.y, b.y)));
    for (int cy = y_lo; cy <= y_hi; ++cy)
        for (int cx = x_lo; cx <= x_hi; ++cx)
            if (segment_touches_cell(a, b, cx, cy)) out.emplace_back(cx, cy);
}

} // namespace

std::vector<std::pair<int, int>> supercover_cells(const State& a, const State& b) {
    std::vector<std::pair<int, int>> out;
    const double len = distance(a, b);
    // Subdivide long segments so the candidate bounding box stays small.
    const int chunks = std::max(1, static_cast<int>(std::ceil(len / 8.0)));
    for (int i = 0; i < chunks; ++i) {
        const double ta = static_cast<double>(i) / chunks;
        const double tb = static_cast<double>(i + 1) / chunks;
        const State pa{a.x + ta * (b.x - a.x), a.y + ta * (b.y - a.y)};
        const State pb{a.x + tb * (b.x - a.x), a.y + tb * (b.y - a.y)};
        collect_cells(pa, pb, out);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool free_edge(const GridMap& map, const State& a, const State& b) {
    if (!map.in_bounds(a.x, a.y) || !map.in_bounds(b.x, b.y))
        throw OutOfBounds("edge endpoint outside map bounds");
    for (const auto& [cx, cy] : supercover_cells(a, b)) {
        if (!map.cell_in_bounds(cx, cy)) continue; // beyond the border, not an obstacle
        if (map.occupied(cx, cy)) return false;
    }
    return true;
}

double path_cost(const Path& p) {
    double cost = 0.0;
    for (std::size_t i = 1; i < p.states.size(); ++i)
        cost += distance(p.states[i - 1], p.states[i]);
    return cost;
}

// --- PGM ------------------------------------------------------------------

namespace detail {
namespace {

int read_pnm_token(std::istream& in) {
    // Skips whitespace and '#' comments, then reads one unsigned integer.
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) throw ParseError("malformed PGM header");
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = in.get();
    }
    return value;
}

} // namespace

std::vector<std::uint8_t> load_pgm_bytes(const std::string& path, int& w, int& h) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '5') throw ParseError("not a binary PGM (P5): " + path);
    w = read_pnm_token(in);
    h = read_pnm_token(in);
    const int maxval = read_pnm_token(in);
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255)
        throw ParseError("unsupported PGM dimensions/maxval in " + path);
    std::vector<std::uint8_t> data(static_cast<std::size_t>(w) * h);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (in.gcount() != static_cast<std::streamsize>(data.size()))
        throw ParseError("truncated PGM payload in " + path);
    return data;
}

void save_pgm_bytes(const std::string& path, int w, int h,
                    const std::vector<std::uint8_t>& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "P5\n" << w << " " << h << "\n255\n";
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("failed writing " + path);
}

} // namespace detail

GridMap load_map_pgm(const std::string& path) {
    int w = 0, h = 0;
    const auto pixels = detail::load_pgm_bytes(path, w, h);
    std::vector<std::uint8_t> occ(pixels.size());
    for (std::size_t i = 0; i < pixels.size(); ++i) occ[i] = pixels[i] < 128 ? 1 : 0;
    return GridMap(w, h, std::move(occ));
}

void save_map_pgm(const GridMap& map, const std::string& path) {
    std::vector<std::uint8_t> pixels(map.cells().size());
    for (std::size_t i = 0; i < pixels.size(); ++i)
        pixels[i] = map.cells()[i] ? 0 : 255;
    detail::save_pgm_bytes(path, map.width(), map.height(), pixels);
}

// --- Problem JSON ---------------------------------------------------------

PlanningProblem load_problem(const std::string& map_path, const std::string& problem_path) {
    PlanningProblem p;
    p.map = load_map_pgm(map_path);
    std::ifstream in(problem_path);
    if (!in) throw IoError("cannot open " + problem_path);
    nlohmann::json j;
    try {
        in >> j;
        p.start = State{j.at("start").at(0).get<double>(), j.at("start").at(1).get<double>()};
        p.goal = State{j.at("goal").at(0).get<double>(), j.at("goal").at(1).get<double>()};
        p.goal_radius = j.at("goal_radius").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed problem JSON: ") + e.what());
    }
    if (p.goal_radius <= 0.0) throw InvalidProblem("goal_radius must be positive");
    if (!p.map.in_bounds(p.start.x, p.start.y) || !p.map.in_bounds(p.goal.x, p.goal.y))
        throw InvalidProblem("start or goal outside map bounds");
    if (!free_state(p.map, p.start)) throw InvalidProblem("start lies in an obstacle");
    if (!free_state(p.map, p.goal)) throw InvalidProblem("goal lies in an obstacle");
    return p;
}

void save_problem_json(const PlanningProblem& p, const std::string& problem_path) {
    nlohmann::json j;
    j["start"] = {p.start.x, p.start.y};
    j["goal"] = {p.goal.x, p.goal.y};
    j["goal_radius"] = p.goal_radius;
    std::ofstream out(problem_path);
    if (!out) throw IoError("cannot open " + problem_path + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw IoError("failed writing " + problem_path);
}

} // namespace nhp
