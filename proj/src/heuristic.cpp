#include "nhp/heuristic.hpp"

#include "nhp/errors.hpp"

namespace nhp {

HeuristicSampler::HeuristicSampler(const RegionMask& region, double bias)
    : width_(region.width), height_(region.height), bias_(bias) {
    if (!(bias >= 0.0 && bias <= 1.0))
        throw InvalidBias("heuristic bias must lie in [0,1]");
    promising_cells_.reserve(region.count());
    for (int k = 0; k < width_ * height_; ++k)
        if (region.mask[static_cast<std::size_t>(k)]) promising_cells_.push_back(k);
}

State HeuristicSampler::sample(Rng& rng) const {
    // Alg. order matters for determinism: the mixture coin is always drawn
    // first, then exactly one sample.
    const bool heuristic = !(rng.uniform() > bias_);
    if (heuristic && !promising_cells_.empty()) {
        const int cell = promising_cells_[rng.below(promising_cells_.size())];
        const int cy = cell / width_;
        const int cx = cell % width_;
        return State{cx + rng.uniform(), cy + rng.uniform()};
    }
    if (heuristic) fallbacks_.fetch_add(1, std::memory_order_relaxed);
    return State{rng.uniform() * width_, rng.uniform() * height_};
}

} // namespace nhp
