#include "scenebench/question_gen.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "scenebench/errors.hpp"
#include "scenebench/rng.hpp"
#include "scenebench/scene_adapter.hpp"
#include "scenebench/semantics.hpp"
#include "scenebench/tables.hpp"

namespace scenebench::qgen {

std::string to_string(Predicate p) {
    switch (p) {
        case Predicate::on: return "on";
        case Predicate::under: return "under";
        case Predicate::next_to: return "next_to";
        case Predicate::inside: return "inside";
        case Predicate::left_of: return "left_of";
        case Predicate::right_of: return "right_of";
        case Predicate::in_front_of: return "in_front_of";
        case Predicate::behind: return "behind";
    }
    return "on";
}

Predicate predicate_from_string(const std::string& s) {
    if (s == "on") return Predicate::on;
    if (s == "under") return Predicate::under;
    if (s == "next_to") return Predicate::next_to;
    if (s == "inside") return Predicate::inside;
    if (s == "left_of") return Predicate::left_of;
    if (s == "right_of") return Predicate::right_of;
    if (s == "in_front_of") return Predicate::in_front_of;
    if (s == "behind") return Predicate::behind;
    throw ParseError("unknown predicate \"" + s + "\"");
}

std::string to_string(QCategory c) {
    return c == QCategory::measurements ? "measurements" : "relations";
}

std::string to_string(QSource s) { return s == QSource::prompt_gt ? "prompt_gt" : "standard"; }

namespace {

QCategory category_from_string(const std::string& s) {
    if (s == "measurements") return QCategory::measurements;
    if (s == "relations") return QCategory::relations;
    throw ParseError("unknown question category \"" + s + "\"");
}

QSource source_from_string(const std::string& s) {
    if (s == "prompt_gt") return QSource::prompt_gt;
    if (s == "standard") return QSource::standard;
    throw ParseError("unknown question source \"" + s + "\"");
}

std::string fill(std::string text, const std::string& key, const std::string& value) {
    const std::string token = "{" + key + "}";
    for (std::size_t pos = text.find(token); pos != std::string::npos;
         pos = text.find(token, pos + value.size())) {
        text.replace(pos, token.size(), value);
    }
    return text;
}

const std::map<std::string, std::int64_t>& number_words() {
    static const std::map<std::string, std::int64_t> words{
        {"zero", 0},     {"one", 1},       {"two", 2},      {"three", 3},  {"four", 4},
        {"five", 5},     {"six", 6},       {"seven", 7},    {"eight", 8},  {"nine", 9},
        {"ten", 10},     {"eleven", 11},   {"twelve", 12},  {"thirteen", 13},
        {"fourteen", 14}, {"fifteen", 15}, {"sixteen", 16}, {"seventeen", 17},
        {"eighteen", 18}, {"nineteen", 19}, {"twenty", 20}};
    return words;
}

}  // namespace

SceneSpec load_scene_spec(const Json& document) {
    SceneSpec spec;
    if (!document.is_object()) {
        throw ParseError("$: scene spec must be an object");
    }
    try {
        spec.scene_id = document.at("scene_id").get<std::string>();
        spec.subset = pool::subset_from_string(document.at("subset").get<std::string>());
        spec.source_prompt = document.value("source_prompt", "");
    } catch (const Json::exception& e) {
        throw ParseError(std::string("$: ") + e.what());
    }
    if (spec.scene_id.empty()) {
        throw ParseError("$/scene_id: must be non-empty");
    }
    if (!document.contains("objects") || !document.at("objects").is_array() ||
        document.at("objects").empty()) {
        throw ParseError("$/objects: must be a non-empty array");
    }

    std::set<std::string> categories;
    for (std::size_t i = 0; i < document.at("objects").size(); ++i) {
        const Json& entry = document.at("objects")[i];
        const std::string path = "$/objects/" + std::to_string(i);
        ObjectEntry object;
        try {
            object.category = entry.at("category").get<std::string>();
            object.count = entry.at("count").get<int>();
        } catch (const Json::exception& e) {
            throw ParseError(path + ": " + e.what());
        }
        if (object.category.empty()) {
            throw ParseError(path + "/category: must be non-empty");
        }
        if (object.count < 1) {
            throw ParseError(path + "/count: must be >= 1");
        }
        if (!categories.insert(object.category).second) {
            throw ParseError(path + "/category: duplicate category \"" + object.category + "\"");
        }
        spec.objects.push_back(std::move(object));
    }

    std::set<std::tuple<std::string, std::string, std::string>> seen;
    const Json relations = document.value("relations", Json::array());
    for (std::size_t i = 0; i < relations.size(); ++i) {
        const Json& entry = relations[i];
        const std::string path = "$/relations/" + std::to_string(i);
        RelationTriple triple;
        std::string predicate;
        try {
            triple.subject = entry.at("subject").get<std::string>();
            predicate = entry.at("predicate").get<std::string>();
            triple.object = entry.at("object").get<std::string>();
        } catch (const Json::exception& e) {
            throw ParseError(path + ": " + e.what());
        }
        try {
            triple.predicate = predicate_from_string(predicate);
        } catch (const ParseError&) {
            throw ParseError(path + "/predicate: unknown predicate \"" + predicate + "\"");
        }
        if (!categories.count(triple.subject)) {
            throw ParseError(path + "/subject: category \"" + triple.subject +
                             "\" is not in objects");
        }
        if (!categories.count(triple.object)) {
            throw ParseError(path + "/object: category \"" + triple.object +
                             "\" is not in objects");
        }
        if (!seen.insert({triple.subject, predicate, triple.object}).second) {
            throw ParseError(path + ": duplicate relation triple");
        }
        spec.relations.push_back(std::move(triple));
    }
    return spec;
}

SceneSpec load_scene_spec_file(const std::filesystem::path& path) {
    try {
        return load_scene_spec(read_json_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::vector<QuestionItem> gen_measurement_questions(const SceneSpec& spec, std::uint64_t) {
    const auto& templates = tables::question_templates();
    std::vector<ObjectEntry> entries = spec.objects;
    std::sort(entries.begin(), entries.end(),
              [](const ObjectEntry& a, const ObjectEntry& b) { return a.category < b.category; });

    std::vector<QuestionItem> items;
    std::int64_t total = 0;
    int index = 0;
    for (const auto& entry : entries) {
        QuestionItem q;
        q.qid = spec.scene_id + "/M" + std::to_string(index++);
        q.scene_id = spec.scene_id;
        q.subset = spec.subset;
        q.category = QCategory::measurements;
        q.text = fill(templates.measurement_per_category, "plural",
                      tables::pluralize(entry.category));
        q.ground_truth.type = GroundTruth::Type::integer;
        q.ground_truth.int_value = entry.count;
        q.source = QSource::prompt_gt;
        q.template_version = templates.version;
        total += entry.count;
        items.push_back(std::move(q));
    }
    QuestionItem q;
    q.qid = spec.scene_id + "/M" + std::to_string(index);
    q.scene_id = spec.scene_id;
    q.subset = spec.subset;
    q.category = QCategory::measurements;
    q.text = templates.measurement_total;
    q.ground_truth.type = GroundTruth::Type::integer;
    q.ground_truth.int_value = total;
    q.source = QSource::prompt_gt;
    q.template_version = templates.version;
    items.push_back(std::move(q));
    return items;
}

RelationQuestions gen_relation_questions(const SceneSpec& spec, std::uint64_t seed) {
    const auto& templates = tables::question_templates();
    RelationQuestions out;

    std::set<std::tuple<std::string, Predicate, std::string>> true_triples;
    for (const auto& triple : spec.relations) {
        true_triples.insert({triple.subject, triple.predicate, triple.object});
    }
    std::vector<std::string> categories;
    for (const auto& entry : spec.objects) {
        categories.push_back(entry.category);
    }
    std::sort(categories.begin(), categories.end());

    int index = 0;
    auto make_item = [&](const std::string& text, GroundTruth gt) {
        QuestionItem q;
        q.qid = spec.scene_id + "/R" + std::to_string(index++);
        q.scene_id = spec.scene_id;
        q.subset = spec.subset;
        q.category = QCategory::relations;
        q.text = text;
        q.ground_truth = std::move(gt);
        q.source = QSource::prompt_gt;
        q.template_version = templates.version;
        out.items.push_back(std::move(q));
    };

    for (std::size_t k = 0; k < spec.relations.size(); ++k) {
        const auto& triple = spec.relations[k];
        auto phrase_it = templates.predicate_phrases.find(to_string(triple.predicate));
        if (phrase_it == templates.predicate_phrases.end()) {
            throw ParseError("predicate \"" + to_string(triple.predicate) +
                             "\" missing from the phrase table");
        }
        const std::string& phrase = phrase_it->second;

        GroundTruth yes;
        yes.type = GroundTruth::Type::boolean;
        yes.bool_value = true;
        make_item(fill(fill(fill(templates.relation_verify, "subject", triple.subject),
                            "predicate", phrase),
                       "object", triple.object),
                  yes);

        GroundTruth open;
        open.type = GroundTruth::Type::category;
        open.category_value = triple.subject;
        make_item(fill(fill(templates.relation_open, "predicate", phrase), "object",
                       triple.object),
                  open);

        std::vector<std::string> substitutes;
        for (const auto& category : categories) {
            if (category == triple.subject) {
                continue;
            }
            if (true_triples.count({category, triple.predicate, triple.object})) {
                continue;
            }
            substitutes.push_back(category);
        }
        if (substitutes.empty()) {
            out.log.push_back("scene " + spec.scene_id + ": negative for relation " +
                              std::to_string(k) + " skipped, no valid substitute subject");
            continue;
        }
        SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
        const std::string& substitute = substitutes[rng.next_below(substitutes.size())];
        GroundTruth no;
        no.type = GroundTruth::Type::boolean;
        no.bool_value = false;
        make_item(fill(fill(fill(templates.relation_verify, "subject", substitute), "predicate",
                            phrase),
                       "object", triple.object),
                  no);
    }
    return out;
}

namespace {

std::string normalize_answer(const std::string& raw) {
    std::size_t begin = 0, end = raw.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
    while (end > begin) {
        char c = raw[end - 1];
        if (c == '.' || c == '!' || c == '?' || c == ',' || c == ';' || c == ':') {
            --end;
        } else {
            break;
        }
    }
    std::string out;
    bool pending_space = false;
    for (std::size_t i = begin; i < end; ++i) {
        char c = raw[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
        } else {
            if (pending_space) {
                out.push_back(' ');
                pending_space = false;
            }
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return out;
}

bool parse_integer_answer(const std::string& normalized, std::int64_t& value) {
    if (!normalized.empty() &&
        std::all_of(normalized.begin(), normalized.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        try {
            value = std::stoll(normalized);
            return true;
        } catch (const std::logic_error&) {
            return false;
        }
    }
    const auto& words = number_words();
    if (auto it = words.find(normalized); it != words.end()) {
        value = it->second;
        return true;
    }
    return false;
}

bool answer_matches(const GroundTruth& gt, const std::string& answer_text) {
    const std::string normalized = normalize_answer(answer_text);
    switch (gt.type) {
        case GroundTruth::Type::integer: {
            std::int64_t value;
            return parse_integer_answer(normalized, value) && value == gt.int_value;
        }
        case GroundTruth::Type::boolean: {
            if (normalized == "yes" || normalized == "true" || normalized == "y") {
                return gt.bool_value;
            }
            if (normalized == "no" || normalized == "false" || normalized == "n") {
                return !gt.bool_value;
            }
            return false;
        }
        case GroundTruth::Type::category:
            return adapter::normalize_label(normalized) ==
                   adapter::normalize_label(gt.category_value);
    }
    return false;
}

}  // namespace

std::vector<Verdict> score_answers(const std::vector<QuestionItem>& questions,
                                   const std::vector<AnswerRecord>& answers) {
    std::map<std::string, const QuestionItem*> by_qid;
    for (const auto& q : questions) {
        by_qid[q.qid] = &q;
    }

    std::map<std::tuple<std::string, std::string, std::string>, const AnswerRecord*> grid;
    std::set<std::string> methods, conditions;
    for (const auto& answer : answers) {
        if (!by_qid.count(answer.qid)) {
            throw InputError("score_answers: answer references unknown qid \"" + answer.qid +
                             "\"");
        }
        adapter::condition_from_string(answer.condition);  // vocabulary check
        auto key = std::make_tuple(answer.qid, answer.method, answer.condition);
        if (!grid.emplace(key, &answer).second) {
            throw InputError("score_answers: duplicate answer for qid \"" + answer.qid +
                             "\", method \"" + answer.method + "\", condition \"" +
                             answer.condition + "\"");
        }
        methods.insert(answer.method);
        conditions.insert(answer.condition);
    }

    std::vector<Verdict> verdicts;
    for (const auto& q : questions) {
        for (const auto& method : methods) {
            for (const auto& condition : conditions) {
                Verdict v;
                v.qid = q.qid;
                v.scene_id = q.scene_id;
                v.subset = q.subset;
                v.category = q.category;
                v.source = q.source;
                v.method = method;
                v.condition = condition;
                auto it = grid.find(std::make_tuple(q.qid, method, condition));
                v.correct = it != grid.end() && answer_matches(q.ground_truth,
                                                               it->second->answer_text);
                verdicts.push_back(std::move(v));
            }
        }
    }
    std::sort(verdicts.begin(), verdicts.end(), [](const Verdict& a, const Verdict& b) {
        return std::tie(a.qid, a.method, a.condition) < std::tie(b.qid, b.method, b.condition);
    });
    return verdicts;
}

Json question_to_json(const QuestionItem& q) {
    Json gt;
    switch (q.ground_truth.type) {
        case GroundTruth::Type::integer:
            gt = {{"type", "integer"}, {"value", q.ground_truth.int_value}};
            break;
        case GroundTruth::Type::boolean:
            gt = {{"type", "boolean"}, {"value", q.ground_truth.bool_value}};
            break;
        case GroundTruth::Type::category:
            gt = {{"type", "category"}, {"value", q.ground_truth.category_value}};
            break;
    }
    return Json{{"qid", q.qid},
                {"scene_id", q.scene_id},
                {"subset", pool::to_string(q.subset)},
                {"category", to_string(q.category)},
                {"text", q.text},
                {"ground_truth", gt},
                {"source", to_string(q.source)},
                {"template_version", q.template_version}};
}

QuestionItem question_from_json(const Json& j) {
    QuestionItem q;
    q.qid = j.at("qid").get<std::string>();
    q.scene_id = j.at("scene_id").get<std::string>();
    q.subset = pool::subset_from_string(j.at("subset").get<std::string>());
    q.category = category_from_string(j.at("category").get<std::string>());
    q.text = j.at("text").get<std::string>();
    q.source = source_from_string(j.at("source").get<std::string>());
    q.template_version = j.value("template_version", "");
    const Json& gt = j.at("ground_truth");
    const std::string type = gt.at("type").get<std::string>();
    if (type == "integer") {
        q.ground_truth.type = GroundTruth::Type::integer;
        q.ground_truth.int_value = gt.at("value").get<std::int64_t>();
    } else if (type == "boolean") {
        q.ground_truth.type = GroundTruth::Type::boolean;
        q.ground_truth.bool_value = gt.at("value").get<bool>();
    } else if (type == "category") {
        q.ground_truth.type = GroundTruth::Type::category;
        q.ground_truth.category_value = gt.at("value").get<std::string>();
    } else {
        throw ParseError("question " + q.qid + ": unknown ground truth type \"" + type + "\"");
    }
    return q;
}

Json verdict_to_json(const Verdict& v) {
    return Json{{"qid", v.qid},
                {"scene_id", v.scene_id},
                {"subset", pool::to_string(v.subset)},
                {"category", to_string(v.category)},
                {"source", to_string(v.source)},
                {"method", v.method},
                {"condition", v.condition},
                {"correct", v.correct}};
}

Verdict verdict_from_json(const Json& j) {
    Verdict v;
    v.qid = j.at("qid").get<std::string>();
    v.scene_id = j.at("scene_id").get<std::string>();
    v.subset = pool::subset_from_string(j.at("subset").get<std::string>());
    v.category = category_from_string(j.at("category").get<std::string>());
    v.source = source_from_string(j.at("source").get<std::string>());
    v.method = j.at("method").get<std::string>();
    v.condition = j.at("condition").get<std::string>();
    v.correct = j.at("correct").get<bool>();
    return v;
}

AnswerRecord answer_from_json(const Json& j) {
    AnswerRecord a;
    a.qid = j.at("qid").get<std::string>();
    a.method = j.at("method").get<std::string>();
    a.condition = j.at("condition").get<std::string>();
    a.answer_text = j.at("answer_text").get<std::string>();
    return a;
}

std::vector<QuestionItem> load_questions_file(const std::filesystem::path& path) {
    std::vector<QuestionItem> questions;
    for (const auto& row : read_jsonl_file(path)) {
        questions.push_back(question_from_json(row));
    }
    return questions;
}

void save_questions_file(const std::filesystem::path& path,
                         const std::vector<QuestionItem>& questions) {
    std::vector<Json> rows;
    rows.reserve(questions.size());
    for (const auto& q : questions) {
        rows.push_back(question_to_json(q));
    }
    write_jsonl_file(path, rows);
}

}  // namespace scenebench::qgen
