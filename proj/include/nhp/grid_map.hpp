#ifndef NHP_GRID_MAP_HPP
#define NHP_GRID_MAP_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nhp {

// Continuous state in pixel units. x is the column coordinate, y the row
// coordinate, origin at the top-left of the map image.
struct State {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const State& a, const State& b);

// Ordered sequence of states. Planners guarantee collision-free segments.
struct Path {
    std::vector<State> states;
};

// Immutable occupancy grid. true = obstacle.
class GridMap {
public:
    GridMap() = default;
    GridMap(int width, int height, std::vector<std::uint8_t> occupancy);

    int width() const { return width_; }
    int height() const { return height_; }

    bool occupied(int cx, int cy) const {
        return occ_[static_cast<std::size_t>(cy) * width_ + cx] != 0;
    }
    bool in_bounds(double x, double y) const {
        return x >= 0.0 && y >= 0.0 && x < width_ && y < height_;
    }
    bool cell_in_bounds(int cx, int cy) const {
        return cx >= 0 && cy >= 0 && cx < width_ && cy < height_;
    }

    const std::vector<std::uint8_t>& cells() const { return occ_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> occ_;
};

struct PlanningProblem {
    GridMap map;
    State start;
    State goal;
    double goal_radius = 0.0;
};

// Collision status of a single state. Throws OutOfBounds outside [0,W)x[0,H).
bool free_state(const GridMap& map, const State& s);

// Collision status of the segment ab. Every cell the segment touches
// (supercover traversal, including corner crossings) must be free.
bool free_edge(const GridMap& map, const State& a, const State& b);

// All cells touched by segment ab, each cell listed once.
std::vector<std::pair<int, int>> supercover_cells(const State& a, const State& b);

// Sum of Euclidean segment lengths; 0 for a single-state path.
double path_cost(const Path& p);

// --- I/O ------------------------------------------------------------------

// Binary PGM (P5, maxval 255). Pixel < 128 = obstacle.
GridMap load_map_pgm(const std::string& path);
void save_map_pgm(const GridMap& map, const std::string& path);

// Problem JSON: {"start":[x,y], "goal":[x,y], "goal_radius":r}. The map is
// loaded separately and validated against the problem (start/goal free).
PlanningProblem load_problem(const std::string& map_path, const std::string& problem_path);
void save_problem_json(const PlanningProblem& p, const std::string& problem_path);

inline double distance(const State& a, const State& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

} // namespace nhp

#endif
