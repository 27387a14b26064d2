#include "nhp/mst_cbpt.hpp"

#include <algorithm>
#include <numeric>

#include "nhp/errors.hpp"

namespace nhp {

std::vector<EdgeRecord> enumerate_edges(const EdgeField& field, const RegionMask& truth) {
    if (field.width != truth.width || field.height != truth.height)
        throw DimensionMismatch("field/truth dimensions differ");
    const int w = field.width;
    const int h = field.height;
    std::vector<EdgeRecord> edges;
    edges.reserve(static_cast<std::size_t>(2) * w * h);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j + 1 < w; ++j) {
            EdgeRecord e;
            e.index = i * w + j;
            e.node_a = i * w + j;
            e.node_b = i * w + j + 1;
            e.probability = field.px[field.idx(i, j)];
            e.promising = truth.at(i, j) && truth.at(i, j + 1);
            edges.push_back(e);
        }
    }
    for (int i = 0; i + 1 < h; ++i) {
        for (int j = 0; j < w; ++j) {
            EdgeRecord e;
            e.index = h * w + i * w + j;
            e.node_a = i * w + j;
            e.node_b = (i + 1) * w + j;
            e.probability = field.py[field.idx(i, j)];
            e.promising = truth.at(i, j) && truth.at(i + 1, j);
            edges.push_back(e);
        }
    }
    return edges;
}

namespace {

// Union-find with union by size and path compression, carrying the
// promising-node count of each root's component.
struct UnionFind {
    std::vector<int> parent;
    std::vector<int> size;
    std::vector<long long> promising;

    UnionFind(int n, const RegionMask& truth) : parent(n), size(n, 1), promising(n) {
        std::iota(parent.begin(), parent.end(), 0);
        for (int v = 0; v < n; ++v) promising[v] = truth.mask[v] ? 1 : 0;
    }

    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    // Merges the components of a and b; returns the new root.
    int unite(int a, int b) {
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        promising[a] += promising[b];
        return a;
    }
};

} // namespace

Cbpt build_cbpt(const EdgeField& field, const RegionMask& truth) {
    auto edges = enumerate_edges(field, truth);
    std::stable_sort(edges.begin(), edges.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
        if (a.probability != b.probability) return a.probability > b.probability;
        return a.index < b.index;
    });

    Cbpt cbpt;
    cbpt.width = field.width;
    cbpt.height = field.height;
    cbpt.in_mst.assign(static_cast<std::size_t>(2) * field.width * field.height, 0);

    const int n = field.width * field.height;
    UnionFind uf(n, truth);
    cbpt.merges.reserve(static_cast<std::size_t>(n) - 1);
    for (const auto& e : edges) {
        const int ra = uf.find(e.node_a);
        const int rb = uf.find(e.node_b);
        if (ra == rb) continue;
        MergeRecord rec;
        rec.edge = e;
        rec.left_promising = uf.promising[ra];
        rec.right_promising = uf.promising[rb];
        cbpt.merges.push_back(rec);
        cbpt.in_mst[e.index] = 1;
        uf.unite(ra, rb);
    }
    return cbpt;
}

std::map<int, long long> edge_weights(const Cbpt& cbpt) {
    std::map<int, long long> weights;
    for (const auto& rec : cbpt.merges) {
        if (!rec.edge.promising) continue;
        weights[rec.edge.index] = rec.left_promising * rec.right_promising;
    }
    return weights;
}

} // namespace nhp
