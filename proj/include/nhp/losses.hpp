#ifndef NHP_LOSSES_HPP
#define NHP_LOSSES_HPP

#include <vector>

#include "nhp/edge_field.hpp"

namespace nhp {

// Loss value plus the gradient with respect to the predicted field, stored as
// two H*W row-major arrays matching the x and y channels.
struct LossOutput {
    double value = 0.0;
    std::vector<double> grad_x;
    std::vector<double> grad_y;
};

// Log clamp for BCE.
inline constexpr double kBceEps = 1e-7;

// Summed (not averaged) binary cross entropy over both channels, clamped to
// [eps, 1-eps]. Gradient is zero wherever the clamp is active.
LossOutput bce_xy(const EdgeField& truth, const EdgeField& pred);

// One pooled dice quotient across both channels.
LossOutput dice_xy(const EdgeField& truth, const EdgeField& pred);

// Normalized maximin connectivity loss over the max-probability spanning
// forest of pred, weighted by merge-time promising-pair counts. MST
// membership and weights are treated as locally constant for the gradient.
LossOutput connectivity_loss(const RegionMask& truth_region, const EdgeField& pred);

// bce_xy + dice_xy + connectivity_loss. Requires truth to equal
// node_to_edge_labels(truth_region).
LossOutput total_loss(const EdgeField& truth, const RegionMask& truth_region,
                      const EdgeField& pred);

// Plain single-threaded reference implementations, kept for testing and for
// the kernel benchmark.
namespace serial {
LossOutput bce_xy(const EdgeField& truth, const EdgeField& pred);
LossOutput dice_xy(const EdgeField& truth, const EdgeField& pred);
LossOutput connectivity_loss(const RegionMask& truth_region, const EdgeField& pred);
LossOutput total_loss(const EdgeField& truth, const RegionMask& truth_region,
                      const EdgeField& pred);
} // namespace serial

} // namespace nhp

#endif
