#include "nhp/fixtures.hpp"

#include <filesystem>

namespace nhp::fixtures {

namespace {

constexpr int kSize = 256;

struct OccBuilder {
    std::vector<std::uint8_t> occ;
    int w, h;
    OccBuilder(int width, int height)
        : occ(static_cast<std::size_t>(width) * height, 0), w(width), h(height) {}
    void wall(int x0, int y0, int x1, int y1) {
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) occ[static_cast<std::size_t>(y) * w + x] = 1;
    }
    GridMap build() const { return GridMap(w, h, occ); }
};

void band(RegionMask& r, int x0, int y0, int x1, int y1) {
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) r.set(y, x, true);
}

} // namespace

GridMap two_passage_map() {
    OccBuilder b(kSize, kSize);
    // Vertical wall with openings at rows [40,64) and [192,216).
    b.wall(124, 0, 132, 40);
    b.wall(124, 64, 132, 192);
    b.wall(124, 216, 132, kSize);
    return b.build();
}

PlanningProblem two_passage_problem() {
    return PlanningProblem{two_passage_map(), State{30.0, 128.0}, State{226.0, 128.0}, 5.0};
}

RegionMask two_passage_connected_region() {
    RegionMask r(kSize, kSize);
    band(r, 20, 42, 40, 138);   // up from the start
    band(r, 20, 42, 236, 62);   // across through the upper passage
    band(r, 216, 42, 236, 138); // down to the goal
    return r;
}

RegionMask two_passage_disconnected_region() {
    RegionMask r = two_passage_connected_region();
    for (int y = 0; y < kSize; ++y)
        for (int x = 110; x < 150; ++x) r.set(y, x, false); // cut at the wall
    return r;
}

GridMap dead_end_map() {
    OccBuilder b(kSize, kSize);
    // Wall with a narrow top opening at rows [12,24) and a mid opening at
    // rows [120,136) that leads into a closed pocket.
    b.wall(124, 0, 132, 12);
    b.wall(124, 24, 132, 120);
    b.wall(124, 136, 132, kSize);
    b.wall(132, 112, 184, 120); // pocket top
    b.wall(132, 136, 184, 144); // pocket bottom
    b.wall(176, 112, 184, 144); // pocket back
    return b.build();
}

PlanningProblem dead_end_problem() {
    return PlanningProblem{dead_end_map(), State{30.0, 128.0}, State{226.0, 128.0}, 5.0};
}

RegionMask dead_end_connected_region() {
    RegionMask r(kSize, kSize);
    band(r, 20, 13, 40, 138);   // up from the start
    band(r, 20, 13, 236, 23);   // across through the top opening
    band(r, 216, 13, 236, 138); // down to the goal
    return r;
}

RegionMask dead_end_disconnected_region() {
    RegionMask r(kSize, kSize);
    band(r, 20, 120, 174, 136); // from the start straight into the pocket
    band(r, 206, 108, 246, 148); // isolated blob around the goal
    return r;
}

GridMap open_map() {
    return GridMap(64, 64, std::vector<std::uint8_t>(64 * 64, 0));
}

PlanningProblem open_problem() {
    return PlanningProblem{open_map(), State{5.0, 5.0}, State{58.0, 58.0}, 5.0};
}

void write_all(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto path = [&](const char* name) { return (fs::path(dir) / name).string(); };

    save_map_pgm(two_passage_map(), path("two_passage_map.pgm"));
    save_problem_json(two_passage_problem(), path("two_passage_problem.json"));
    save_region_pgm(two_passage_connected_region(), path("two_passage_region_connected.pgm"));
    save_region_pgm(two_passage_disconnected_region(),
                    path("two_passage_region_disconnected.pgm"));

    save_map_pgm(dead_end_map(), path("dead_end_map.pgm"));
    save_problem_json(dead_end_problem(), path("dead_end_problem.json"));
    save_region_pgm(dead_end_connected_region(), path("dead_end_region_connected.pgm"));
    save_region_pgm(dead_end_disconnected_region(), path("dead_end_region_disconnected.pgm"));

    save_map_pgm(open_map(), path("open_map.pgm"));
    save_problem_json(open_problem(), path("open_problem.json"));
}

} // namespace nhp::fixtures
