#ifndef NHP_MST_CBPT_HPP
#define NHP_MST_CBPT_HPP

#include <map>
#include <vector>

#include "nhp/edge_field.hpp"

namespace nhp {

// Grid edge indexing over both channels: the x edge owned by node (i,j) has
// index i*W + j, the y edge H*W + i*W + j. Padding entries are not edges.
struct EdgeRecord {
    int index = 0;       // unique edge id over both channels
    int node_a = 0;      // row-major node ids of the two endpoints
    int node_b = 0;
    double probability = 0.0;
    bool promising = false; // delta(e): both endpoints promising in truth
};

struct MergeRecord {
    EdgeRecord edge;
    long long left_promising = 0;  // promising-node counts of the two
    long long right_promising = 0; // components at the moment of the merge
};

// Merge log of the maximum spanning forest over the predicted probabilities,
// built by Kruskal in decreasing-probability order (ties by ascending edge
// index). Immutable once built.
struct Cbpt {
    int width = 0;
    int height = 0;
    std::vector<MergeRecord> merges;
    std::vector<std::uint8_t> in_mst; // flag per edge index
};

Cbpt build_cbpt(const EdgeField& field, const RegionMask& truth);

// w(e) = left_promising * right_promising for MST edges with delta(e)=1;
// every other edge is absent from the map.
std::map<int, long long> edge_weights(const Cbpt& cbpt);

// All grid edges of a field with probabilities from `field` and promising
// flags from `truth`, in index order. Exposed for oracle-style consumers.
std::vector<EdgeRecord> enumerate_edges(const EdgeField& field, const RegionMask& truth);

} // namespace nhp

#endif
