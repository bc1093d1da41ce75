#pragma once

#include <filesystem>

#include "scenebench/evaluator.hpp"

namespace scenebench::eval {

// Label maps are ingested either as portable graymaps (P2/P5, maxval up to
// 65535) or as the raw little-endian format below. A sidecar
// "<file>.remap.json" ({"map": {"<gray>": id, ...}}) remaps raw values to
// class ids; values without an entry map to themselves.
//
// Raw format: magic "SBLM", u32le width, u32le height, i32le labels.

LabelMap read_labelmap(const std::filesystem::path& path);

void write_labelmap_raw(const std::filesystem::path& path, const LabelMap& map);
void write_labelmap_pgm(const std::filesystem::path& path, const LabelMap& map);

}  // namespace scenebench::eval
