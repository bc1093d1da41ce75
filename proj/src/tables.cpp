#include "scenebench/tables.hpp"

#include "scenebench/embedded_tables.hpp"
#include "scenebench/errors.hpp"

namespace scenebench::tables {

namespace {

Json parse_embedded(std::string_view text, const char* what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("embedded table ") + what + ": " + e.what());
    }
}

}  // namespace

const std::map<std::string, std::string>& synonym_table() {
    static const auto table = [] {
        Json j = parse_embedded(kSemanticSynonymsJson, "semantic_synonyms");
        return j.at("synonyms").get<std::map<std::string, std::string>>();
    }();
    return table;
}

const DefaultColors& default_colors() {
    static const auto table = [] {
        Json j = parse_embedded(kDefaultColorsJson, "default_colors");
        DefaultColors out;
        out.fallback = j.at("fallback").get<std::array<double, 4>>();
        for (const auto& [category, rgba] : j.at("colors").items()) {
            out.colors[category] = rgba.get<std::array<double, 4>>();
        }
        return out;
    }();
    return table;
}

QuestionTemplates QuestionTemplates::from_json(const Json& j) {
    QuestionTemplates t;
    t.version = j.at("version").get<std::string>();
    t.measurement_per_category = j.at("measurement").at("per_category").get<std::string>();
    t.measurement_total = j.at("measurement").at("total").get<std::string>();
    t.relation_verify = j.at("relation").at("verify").get<std::string>();
    t.relation_open = j.at("relation").at("open").get<std::string>();
    t.predicate_phrases = j.at("predicate_phrases").get<std::map<std::string, std::string>>();
    return t;
}

const QuestionTemplates& question_templates() {
    static const auto table =
        QuestionTemplates::from_json(parse_embedded(kQuestionTemplatesJson, "question_templates"));
    return table;
}

QuestionTemplates load_question_templates(const std::filesystem::path& path) {
    return QuestionTemplates::from_json(read_json_file(path));
}

const std::map<std::string, std::string>& plural_exceptions() {
    static const auto table = [] {
        Json j = parse_embedded(kPluralExceptionsJson, "plural_exceptions");
        return j.at("exceptions").get<std::map<std::string, std::string>>();
    }();
    return table;
}

std::string pluralize(const std::string& noun) {
    const auto& exceptions = plural_exceptions();
    if (auto it = exceptions.find(noun); it != exceptions.end()) {
        return it->second;
    }
    return noun + "s";
}

const OfflineGrammar& offline_grammar() {
    static const auto table = [] {
        Json j = parse_embedded(kOfflineGrammarJson, "offline_grammar");
        OfflineGrammar g;
        g.rooms = j.at("rooms").get<std::vector<std::string>>();
        g.furniture = j.at("furniture").get<std::vector<std::string>>();
        g.manipulands = j.at("manipulands").get<std::vector<std::string>>();
        g.supports = j.at("supports").get<std::vector<std::string>>();
        g.relations = j.at("relations").get<std::vector<std::string>>();
        g.counts = j.at("counts").get<std::vector<std::string>>();
        return g;
    }();
    return table;
}

const Json& config_schema() {
    static const Json j = parse_embedded(kConfigSchemaJson, "config_schema");
    return j;
}

const Json& dataset_schemas() {
    static const Json j = parse_embedded(kDatasetSchemasJson, "dataset_schemas");
    return j;
}

}  // namespace scenebench::tables
