#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "scenebench/json_io.hpp"

namespace scenebench::tables {

// Parsed views over the data tables shipped under data/ and embedded into the
// binary at build time. All accessors return process-lifetime singletons.

const std::map<std::string, std::string>& synonym_table();

struct DefaultColors {
    std::map<std::string, std::array<double, 4>> colors;
    std::array<double, 4> fallback{0.5, 0.5, 0.5, 1.0};
};
const DefaultColors& default_colors();

struct QuestionTemplates {
    std::string version;
    std::string measurement_per_category;
    std::string measurement_total;
    std::string relation_verify;
    std::string relation_open;
    std::map<std::string, std::string> predicate_phrases;

    static QuestionTemplates from_json(const Json& j);
};
const QuestionTemplates& question_templates();
QuestionTemplates load_question_templates(const std::filesystem::path& path);

const std::map<std::string, std::string>& plural_exceptions();
std::string pluralize(const std::string& noun);

struct OfflineGrammar {
    std::vector<std::string> rooms;
    std::vector<std::string> furniture;
    std::vector<std::string> manipulands;
    std::vector<std::string> supports;
    std::vector<std::string> relations;
    std::vector<std::string> counts;
};
const OfflineGrammar& offline_grammar();

const Json& config_schema();
const Json& dataset_schemas();

}  // namespace scenebench::tables
