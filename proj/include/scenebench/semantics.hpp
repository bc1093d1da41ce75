#pragma once

#include <map>
#include <string>

#include "scenebench/scene_source.hpp"

namespace scenebench::adapter {

// Canonicalizes one raw label: lowercase, [-_.] to spaces, trailing instance
// markers stripped (digit groups, v<digits>, "copy", "instance"), whitespace
// collapsed, synonym table, then overrides; empty maps to "unknown".
std::string normalize_label(const std::string& raw,
                            const std::map<std::string, std::string>& overrides = {});

// Model name -> canonical category for a whole scene.
std::map<std::string, std::string> normalize_semantics(
    const SourceScene& scene, const std::map<std::string, std::string>& overrides = {});

}  // namespace scenebench::adapter
