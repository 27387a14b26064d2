#ifndef NHP_HEURISTIC_HPP
#define NHP_HEURISTIC_HPP

#include <atomic>
#include <cstdint>
#include <vector>

#include "nhp/edge_field.hpp"
#include "nhp/grid_map.hpp"
#include "nhp/rng.hpp"

namespace nhp {

// Promising-region-biased sampler. With probability `bias` a sample is drawn
// cell-uniformly over the promising cells (plus jitter within the cell),
// otherwise uniformly over the full map extent. Immutable after build; each
// concurrent user supplies its own Rng.
class HeuristicSampler {
public:
    HeuristicSampler(const RegionMask& region, double bias);

    State sample(Rng& rng) const;

    double bias() const { return bias_; }
    std::size_t promising_cell_count() const { return promising_cells_.size(); }
    // Heuristic draws that silently fell back to uniform sampling because
    // the region is empty.
    std::uint64_t empty_region_fallbacks() const { return fallbacks_.load(); }

private:
    int width_;
    int height_;
    double bias_;
    std::vector<int> promising_cells_; // row-major flat indices
    mutable std::atomic<std::uint64_t> fallbacks_{0};
};

} // namespace nhp

#endif
