#ifndef NHP_FIXTURES_HPP
#define NHP_FIXTURES_HPP

#include <string>

#include "nhp/edge_field.hpp"
#include "nhp/grid_map.hpp"

namespace nhp::fixtures {

// Benchmark fixture worlds. "two_passage" is a 256x256 map split by a wall
// with two openings; "dead_end" adds a pocket that swallows naive heuristic
// samples; "open" is an empty 64x64 room. The connected/disconnected region
// masks are hand-authored heuristic stand-ins.

GridMap two_passage_map();
PlanningProblem two_passage_problem();
RegionMask two_passage_connected_region();
RegionMask two_passage_disconnected_region();

GridMap dead_end_map();
PlanningProblem dead_end_problem();
RegionMask dead_end_connected_region();
RegionMask dead_end_disconnected_region();

GridMap open_map();
PlanningProblem open_problem();

// Writes every fixture as PGM/JSON files under dir.
void write_all(const std::string& dir);

} // namespace nhp::fixtures

#endif
