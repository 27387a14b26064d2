#ifndef NHP_REGION_GRAPH_HPP
#define NHP_REGION_GRAPH_HPP

#include <vector>

#include "nhp/edge_field.hpp"
#include "nhp/grid_map.hpp"

namespace nhp {

// Binary edge labels from a node mask: an edge is promising iff both of its
// endpoints are promising.
EdgeField node_to_edge_labels(const RegionMask& region);

// Node (i,j) is promising iff (px + py)/2 > t at that entry.
RegionMask decode_region(const EdgeField& field, double t);

// Method-1 style decoding: promising iff c1 < c2 (strict).
RegionMask decode_region_nodepair(const NodePairField& field);

// BFS over 4-connected promising cells; the cells containing start and goal
// are force-included.
bool is_connected(const RegionMask& region, const PlanningProblem& problem);

// Fraction of cases whose region connects start to goal.
double connectivity_rate(
    const std::vector<std::pair<const RegionMask*, const PlanningProblem*>>& cases);

// Promising truth nodes missing from pred, over promising truth nodes.
double false_negative_rate(const RegionMask& pred, const RegionMask& truth);

} // namespace nhp

#endif
