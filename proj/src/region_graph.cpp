#include "nhp/region_graph.hpp"

#include <cmath>
#include <deque>

#include "nhp/errors.hpp"

namespace nhp {

EdgeField node_to_edge_labels(const RegionMask& region) {
    EdgeField field(region.width, region.height);
    for (int i = 0; i < region.height; ++i) {
        for (int j = 0; j < region.width; ++j) {
            if (j + 1 < region.width && region.at(i, j) && region.at(i, j + 1))
                field.px[field.idx(i, j)] = 1.0;
            if (i + 1 < region.height && region.at(i, j) && region.at(i + 1, j))
                field.py[field.idx(i, j)] = 1.0;
        }
    }
    return field;
}

RegionMask decode_region(const EdgeField& field, double t) {
    if (t < 0.0 || t >= 1.0) throw InvalidThreshold("threshold must lie in [0,1)");
    RegionMask region(field.width, field.height);
    for (std::size_t k = 0; k < field.px.size(); ++k)
        region.mask[k] = (field.px[k] + field.py[k]) / 2.0 > t ? 1 : 0;
    return region;
}

RegionMask decode_region_nodepair(const NodePairField& field) {
    RegionMask region(field.width, field.height);
    for (std::size_t k = 0; k < field.c1.size(); ++k)
        region.mask[k] = field.c1[k] < field.c2[k] ? 1 : 0;
    return region;
}

bool is_connected(const RegionMask& region, const PlanningProblem& problem) {
    if (region.width != problem.map.width() || region.height != problem.map.height())
        throw DimensionMismatch("region dimensions do not match the problem map");
    const int w = region.width;
    const int h = region.height;
    const int sx = static_cast<int>(std::floor(problem.start.x));
    const int sy = static_cast<int>(std::floor(problem.start.y));
    const int gx = static_cast<int>(std::floor(problem.goal.x));
    const int gy = static_cast<int>(std::floor(problem.goal.y));

    auto promising = [&](int cx, int cy) {
        if ((cx == sx && cy == sy) || (cx == gx && cy == gy)) return true;
        return region.at(cy, cx);
    };

    if (sx == gx && sy == gy) return true;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
    std::deque<std::pair<int, int>> queue{{sx, sy}};
    seen[static_cast<std::size_t>(sy) * w + sx] = 1;
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    while (!queue.empty()) {
        const auto [cx, cy] = queue.front();
        queue.pop_front();
        if (cx == gx && cy == gy) return true;
        for (int d = 0; d < 4; ++d) {
            const int nx = cx + dx[d];
            const int ny = cy + dy[d];
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            auto& mark = seen[static_cast<std::size_t>(ny) * w + nx];
            if (mark || !promising(nx, ny)) continue;
            mark = 1;
            queue.emplace_back(nx, ny);
        }
    }
    return false;
}

double connectivity_rate(
    const std::vector<std::pair<const RegionMask*, const PlanningProblem*>>& cases) {
    if (cases.empty()) throw EmptyInput("connectivity_rate needs at least one case");
    std::size_t connected = 0;
    for (const auto& [region, problem] : cases)
        if (is_connected(*region, *problem)) ++connected;
    return static_cast<double>(connected) / static_cast<double>(cases.size());
}

double false_negative_rate(const RegionMask& pred, const RegionMask& truth) {
    if (pred.width != truth.width || pred.height != truth.height)
        throw DimensionMismatch("prediction/truth dimensions differ");
    std::size_t truth_count = 0;
    std::size_t missed = 0;
    for (std::size_t k = 0; k < truth.mask.size(); ++k) {
        if (!truth.mask[k]) continue;
        ++truth_count;
        if (!pred.mask[k]) ++missed;
    }
    if (truth_count == 0) throw EmptyTruth("ground truth has no promising node");
    return static_cast<double>(missed) / static_cast<double>(truth_count);
}

} // namespace nhp
