#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "scenebench/scene_adapter.hpp"

namespace scenebench::adapter {

struct ObjectConfig {
    std::string render_asset;
    std::string semantic_category;
    int semantic_id = 0;
};

struct Placement {
    std::string template_key;
    Vec3 translation;  // y-up
    Quat rotation;     // y-up
};

struct HabitatDataset {
    std::string scene;
    std::vector<Placement> placements;                       // sorted by model name
    std::map<std::string, ObjectConfig> object_configs;      // template key -> config
    std::vector<std::pair<std::string, int>> lexicon;        // category -> id, first-appearance order
    std::map<LightCondition, LightingConfig> lighting;
    NavigationBlock navigation;                              // start pose still z-up
};

// Assembles the dataset from the converted scene. Placements are ordered by
// model name; semantic ids are dense in order of first appearance.
HabitatDataset build_dataset(const SourceScene& scene,
                             const std::map<std::string, std::string>& categories,
                             const std::map<LightCondition, LightingConfig>& lighting,
                             const NavigationBlock& navigation);

// Internal referential/invariant check; throws std::logic_error on breaks.
void check_dataset(const HabitatDataset& dataset);

// Writes the file bundle with canonical JSON formatting; re-running on the
// same dataset produces byte-identical files. Returns the emitted paths.
std::vector<std::filesystem::path> emit_dataset(const HabitatDataset& dataset,
                                                const std::filesystem::path& out_dir);

// Validates an emitted directory against the shipped schemas plus the
// referential rules (dense semantic ids, template references, the four
// lighting conditions and their per-condition contracts). Returns one message
// per violation; empty means valid.
std::vector<std::string> validate_dataset_dir(const std::filesystem::path& dir);

}  // namespace scenebench::adapter
