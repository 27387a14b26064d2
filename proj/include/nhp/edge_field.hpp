#ifndef NHP_EDGE_FIELD_HPP
#define NHP_EDGE_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace nhp {

// 2-channel per-node field of edge connectivity probabilities. Entry (i,j) of
// the x channel owns the edge from node (i,j) to (i,j+1); the y channel owns
// the edge to (i+1,j). The last column of px and the last row of py are
// padding and must stay zero.
struct EdgeField {
    int width = 0;
    int height = 0;
    std::vector<double> px; // row-major H*W
    std::vector<double> py;

    EdgeField() = default;
    EdgeField(int w, int h)
        : width(w), height(h),
          px(static_cast<std::size_t>(w) * h, 0.0),
          py(static_cast<std::size_t>(w) * h, 0.0) {}

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * width + j; }

    // Throws on out-of-range entries or nonzero padding.
    void validate() const;
};

// Binary promising-node mask.
struct RegionMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask; // row-major, 1 = promising

    RegionMask() = default;
    RegionMask(int w, int h)
        : width(w), height(h), mask(static_cast<std::size_t>(w) * h, 0) {}

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * width + j; }
    bool at(int i, int j) const { return mask[idx(i, j)] != 0; }
    void set(int i, int j, bool v) { mask[idx(i, j)] = v ? 1 : 0; }
    std::size_t count() const;
};

// 2-channel node-likelihood field (unpromising / promising likelihoods).
struct NodePairField {
    int width = 0;
    int height = 0;
    std::vector<double> c1;
    std::vector<double> c2;

    NodePairField() = default;
    NodePairField(int w, int h)
        : width(w), height(h),
          c1(static_cast<std::size_t>(w) * h, 0.0),
          c2(static_cast<std::size_t>(w) * h, 0.0) {}

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * width + j; }
};

// --- I/O ------------------------------------------------------------------
//
// EFLD: "EFLD" magic, width/height as u32 LE, 4 reserved zero bytes, then px
// and py row-major as f32 LE. Round-trips bit-exactly.
EdgeField load_efld(const std::string& path);
void save_efld(const EdgeField& field, const std::string& path);

// RegionMask as PGM P5: 255 = promising, 0 = unpromising (>=128 on read).
RegionMask load_region_pgm(const std::string& path);
void save_region_pgm(const RegionMask& region, const std::string& path);

} // namespace nhp

#endif
