#ifndef NHP_DATASET_GEN_HPP
#define NHP_DATASET_GEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nhp/edge_field.hpp"
#include "nhp/grid_map.hpp"

namespace nhp {

enum class MapCategory {
    blocks,    // axis-aligned rectangular blocks
    walls,     // long thin walls with 1-3 gaps
    blobs,     // random convex blobs
    dead_ends, // L/U-shaped dead-end structures
    clutter,   // mixed small shapes
};

const char* to_string(MapCategory c);
MapCategory category_from_string(const std::string& name);

struct MapRecipe {
    MapCategory category = MapCategory::blocks;
    int width = 256;
    int height = 256;
    int min_obstacles = 4;
    int max_obstacles = 10;
    std::uint64_t seed = 0;
};

struct GeneratedMap {
    GridMap map;
    // dead_ends category: the generator placed at least one concave pocket.
    bool has_dead_end = false;
};

// Deterministic in the recipe seed. Guarantees a single connected free
// region covering at least 30% of the map area, regenerating internally up
// to 100 times before giving up.
GeneratedMap gen_map(const MapRecipe& recipe);

// Uniformly samples a solvable start/goal pair on the largest free
// component, at least min_separation apart.
PlanningProblem sample_problem(const GridMap& map, double goal_radius,
                               double min_separation, std::uint64_t seed);

struct DatasetSample {
    GridMap map;
    PlanningProblem problem;
    RegionMask region;
    EdgeField edges;
};

// Runs plain RRT `runs` times with distinct seeds, LSC-shortens each
// solution, rasterizes the paths at the given stroke width, and unions the
// result into the ground-truth promising region.
DatasetSample gen_ground_truth(const GridMap& map, const PlanningProblem& problem,
                               int runs, int stroke, std::uint64_t seed);

struct ManifestEntry {
    std::string id;
    MapCategory category;
    std::uint64_t map_seed = 0;
    std::uint64_t problem_seed = 0;
    std::uint64_t gt_seed = 0;
    std::string map_file;
    std::string problem_file;
    std::string region_file;
    std::string edges_file;
    // Table-I style grouping: blocks/walls/blobs are "Similar",
    // dead_ends/clutter are "Dissimilar".
    std::string group;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    int runs = 50;
    int stroke = 2;
};

DatasetManifest gen_dataset(const std::vector<MapRecipe>& recipes, int problems_per_map,
                            int runs, int stroke, const std::string& out_dir);

void save_manifest(const DatasetManifest& manifest, const std::string& path);
DatasetManifest load_manifest(const std::string& path);

} // namespace nhp

#endif
