#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace scenebench {

using Json = nlohmann::json;

// Canonical serialization used for every emitted artifact: 2-space indent,
// keys sorted (nlohmann objects are std::map-backed), LF endings, trailing
// newline. Golden-file tests depend on this being byte-stable.
std::string canonical_dump(const Json& j);

void write_json_file(const std::filesystem::path& path, const Json& j);

Json read_json_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);

// JSONL helpers: one object per line, LF-terminated.
std::vector<Json> read_jsonl_file(const std::filesystem::path& path);

void write_jsonl_file(const std::filesystem::path& path, const std::vector<Json>& rows);

}  // namespace scenebench
