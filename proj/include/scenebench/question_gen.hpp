#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "scenebench/json_io.hpp"
#include "scenebench/prompt_pool.hpp"

namespace scenebench::qgen {

enum class Predicate { on, under, next_to, inside, left_of, right_of, in_front_of, behind };

std::string to_string(Predicate p);
Predicate predicate_from_string(const std::string& s);  // vocabulary error on unknown

struct ObjectEntry {
    std::string category;
    int count = 1;
};

struct RelationTriple {
    std::string subject;
    Predicate predicate = Predicate::on;
    std::string object;
};

struct SceneSpec {
    std::string scene_id;
    pool::Subset subset = pool::Subset::furniture;
    std::vector<ObjectEntry> objects;
    std::vector<RelationTriple> relations;
    std::string source_prompt;
};

// Validated load; violations are rejected with the failing JSON path.
SceneSpec load_scene_spec(const Json& document);
SceneSpec load_scene_spec_file(const std::filesystem::path& path);

enum class QCategory { measurements, relations };
enum class QSource { prompt_gt, standard };

std::string to_string(QCategory c);
std::string to_string(QSource s);

struct GroundTruth {
    enum class Type { integer, boolean, category };
    Type type = Type::integer;
    std::int64_t int_value = 0;
    bool bool_value = false;
    std::string category_value;
};

struct QuestionItem {
    std::string qid;
    std::string scene_id;
    pool::Subset subset = pool::Subset::furniture;
    QCategory category = QCategory::measurements;
    std::string text;
    GroundTruth ground_truth;
    QSource source = QSource::prompt_gt;
    std::string template_version;
};

// One count question per object entry (category-sorted) plus a total-count
// question; qids are scene_id + "/M" + index.
std::vector<QuestionItem> gen_measurement_questions(const SceneSpec& spec, std::uint64_t seed);

struct RelationQuestions {
    std::vector<QuestionItem> items;
    std::vector<std::string> log;  // skipped negatives
};

// Per triple: a true verification question, an open query, and a seeded
// false verification with a substituted subject (skipped with a log entry
// when no valid substitute exists).
RelationQuestions gen_relation_questions(const SceneSpec& spec, std::uint64_t seed);

struct AnswerRecord {
    std::string qid;
    std::string method;
    std::string condition;  // one of the four lighting conditions
    std::string answer_text;
};

struct Verdict {
    std::string qid;
    std::string scene_id;
    pool::Subset subset = pool::Subset::furniture;
    QCategory category = QCategory::measurements;
    QSource source = QSource::prompt_gt;
    std::string method;
    std::string condition;
    bool correct = false;
};

// Verdict grid = questions x (methods present) x (conditions present);
// unanswered cells are incorrect. Answers are normalized (trim, lowercase,
// terminal punctuation, number words, boolean words, category synonyms)
// before exact comparison. Duplicate (qid, method, condition) answers raise
// an ambiguity error.
std::vector<Verdict> score_answers(const std::vector<QuestionItem>& questions,
                                   const std::vector<AnswerRecord>& answers);

Json question_to_json(const QuestionItem& q);
QuestionItem question_from_json(const Json& j);
Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);
AnswerRecord answer_from_json(const Json& j);

std::vector<QuestionItem> load_questions_file(const std::filesystem::path& path);
void save_questions_file(const std::filesystem::path& path,
                         const std::vector<QuestionItem>& questions);

}  // namespace scenebench::qgen
