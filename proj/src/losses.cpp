#include "nhp/losses.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nhp/errors.hpp"
#include "nhp/mst_cbpt.hpp"
#include "nhp/region_graph.hpp"

namespace nhp {

namespace {

void check_pair(const EdgeField& truth, const EdgeField& pred) {
    if (truth.width != pred.width || truth.height != pred.height)
        throw DimensionMismatch("truth/pred dimensions differ");
    for (std::size_t k = 0; k < truth.px.size(); ++k)
        if ((truth.px[k] != 0.0 && truth.px[k] != 1.0) ||
            (truth.py[k] != 0.0 && truth.py[k] != 1.0))
            throw NonBinaryTruth("truth entries must be 0 or 1");
}

// Per-entry BCE term and gradient on one channel row; returns the row's
// value sum. Summing per row and combining row sums in order keeps the
// result independent of the thread count.
double bce_row(const double* t, const double* p, double* g, int w) {
    double sum = 0.0;
    for (int j = 0; j < w; ++j) {
        const double clamped = std::min(std::max(p[j], kBceEps), 1.0 - kBceEps);
        sum -= t[j] * std::log(clamped) + (1.0 - t[j]) * std::log(1.0 - clamped);
        if (p[j] < kBceEps || p[j] > 1.0 - kBceEps)
            g[j] = 0.0;
        else
            g[j] = -(t[j] / clamped - (1.0 - t[j]) / (1.0 - clamped));
    }
    return sum;
}

template <bool Parallel>
LossOutput bce_impl(const EdgeField& truth, const EdgeField& pred) {
    check_pair(truth, pred);
    const int w = pred.width;
    const int h = pred.height;
    LossOutput out;
    out.grad_x.assign(pred.px.size(), 0.0);
    out.grad_y.assign(pred.py.size(), 0.0);
    std::vector<double> row_sums(static_cast<std::size_t>(h) * 2, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
    for (int i = 0; i < h; ++i) {
        const std::size_t off = static_cast<std::size_t>(i) * w;
        row_sums[i] = bce_row(truth.px.data() + off, pred.px.data() + off,
                              out.grad_x.data() + off, w);
        row_sums[h + i] = bce_row(truth.py.data() + off, pred.py.data() + off,
                                  out.grad_y.data() + off, w);
    }
    for (double s : row_sums) out.value += s;
    return out;
}

struct DiceRowSums {
    double intersection = 0.0;
    double cardinality = 0.0;
};

template <bool Parallel>
LossOutput dice_impl(const EdgeField& truth, const EdgeField& pred) {
    check_pair(truth, pred);
    const int w = pred.width;
    const int h = pred.height;
    std::vector<DiceRowSums> rows(static_cast<std::size_t>(h) * 2);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
    for (int i = 0; i < h; ++i) {
        const std::size_t off = static_cast<std::size_t>(i) * w;
        for (int j = 0; j < w; ++j) {
            rows[i].intersection += truth.px[off + j] * pred.px[off + j];
            rows[i].cardinality +=
                pred.px[off + j] * pred.px[off + j] + truth.px[off + j] * truth.px[off + j];
            rows[h + i].intersection += truth.py[off + j] * pred.py[off + j];
            rows[h + i].cardinality +=
                pred.py[off + j] * pred.py[off + j] + truth.py[off + j] * truth.py[off + j];
        }
    }
    double intersection = 0.0;
    double denom = 0.0;
    for (const auto& r : rows) {
        intersection += r.intersection;
        denom += r.cardinality;
    }
    if (denom == 0.0)
        throw DegenerateDenominator("dice denominator is zero (both fields empty)");

    LossOutput out;
    out.value = 1.0 - 2.0 * intersection / denom;
    out.grad_x.assign(pred.px.size(), 0.0);
    out.grad_y.assign(pred.py.size(), 0.0);
    const double d2 = denom * denom;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
    for (int i = 0; i < h; ++i) {
        const std::size_t off = static_cast<std::size_t>(i) * w;
        for (int j = 0; j < w; ++j) {
            out.grad_x[off + j] =
                -(2.0 * truth.px[off + j] * denom - 2.0 * intersection * 2.0 * pred.px[off + j]) / d2;
            out.grad_y[off + j] =
                -(2.0 * truth.py[off + j] * denom - 2.0 * intersection * 2.0 * pred.py[off + j]) / d2;
        }
    }
    return out;
}

LossOutput connectivity_impl(const RegionMask& truth_region, const EdgeField& pred) {
    if (truth_region.width != pred.width || truth_region.height != pred.height)
        throw DimensionMismatch("truth region/pred dimensions differ");
    const Cbpt cbpt = build_cbpt(pred, truth_region);

    LossOutput out;
    out.grad_x.assign(pred.px.size(), 0.0);
    out.grad_y.assign(pred.py.size(), 0.0);

    long long weight_sum = 0;
    double residual_sum = 0.0;
    for (const auto& rec : cbpt.merges) {
        if (!rec.edge.promising) continue;
        const long long weight = rec.left_promising * rec.right_promising;
        const double r = 1.0 - rec.edge.probability;
        weight_sum += weight;
        residual_sum += static_cast<double>(weight) * r * r;
    }
    if (weight_sum == 0) return out; // no promising MST edge: loss 0, grad 0

    out.value = residual_sum / static_cast<double>(weight_sum);
    const std::size_t n = pred.px.size();
    for (const auto& rec : cbpt.merges) {
        if (!rec.edge.promising) continue;
        const double weight = static_cast<double>(rec.left_promising * rec.right_promising);
        const double g = -2.0 * weight * (1.0 - rec.edge.probability) /
                         static_cast<double>(weight_sum);
        const std::size_t k = static_cast<std::size_t>(rec.edge.index);
        if (k < n)
            out.grad_x[k] = g;
        else
            out.grad_y[k - n] = g;
    }
    return out;
}

LossOutput total_impl(const EdgeField& truth, const RegionMask& truth_region,
                      const EdgeField& pred, bool parallel) {
    const EdgeField derived = node_to_edge_labels(truth_region);
    if (derived.px != truth.px || derived.py != truth.py)
        throw InconsistentTruth("truth field does not match node_to_edge_labels(truth_region)");
    LossOutput bce = parallel ? bce_xy(truth, pred) : serial::bce_xy(truth, pred);
    const LossOutput dice = parallel ? dice_xy(truth, pred) : serial::dice_xy(truth, pred);
    const LossOutput conn = connectivity_impl(truth_region, pred);
    bce.value = bce.value + dice.value + conn.value;
    for (std::size_t k = 0; k < bce.grad_x.size(); ++k) {
        bce.grad_x[k] = bce.grad_x[k] + dice.grad_x[k] + conn.grad_x[k];
        bce.grad_y[k] = bce.grad_y[k] + dice.grad_y[k] + conn.grad_y[k];
    }
    return bce;
}

} // namespace

LossOutput bce_xy(const EdgeField& truth, const EdgeField& pred) {
    return bce_impl<true>(truth, pred);
}
LossOutput dice_xy(const EdgeField& truth, const EdgeField& pred) {
    return dice_impl<true>(truth, pred);
}
LossOutput connectivity_loss(const RegionMask& truth_region, const EdgeField& pred) {
    return connectivity_impl(truth_region, pred);
}
LossOutput total_loss(const EdgeField& truth, const RegionMask& truth_region,
                      const EdgeField& pred) {
    return total_impl(truth, truth_region, pred, true);
}

namespace serial {

LossOutput bce_xy(const EdgeField& truth, const EdgeField& pred) {
    return bce_impl<false>(truth, pred);
}
LossOutput dice_xy(const EdgeField& truth, const EdgeField& pred) {
    return dice_impl<false>(truth, pred);
}
LossOutput connectivity_loss(const RegionMask& truth_region, const EdgeField& pred) {
    return connectivity_impl(truth_region, pred);
}
LossOutput total_loss(const EdgeField& truth, const RegionMask& truth_region,
                      const EdgeField& pred) {
    return total_impl(truth, truth_region, pred, false);
}

} // namespace serial

} // namespace nhp
