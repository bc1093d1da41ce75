#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "scenebench/question_gen.hpp"

namespace scenebench::eval {

struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;  // row-major, width * height
    std::int32_t ignore_id = -1;
};

struct ConfusionMatrix {
    int num_classes = 0;
    std::vector<std::uint64_t> counts;  // row-major, row = ground truth

    explicit ConfusionMatrix(int n = 0)
        : num_classes(n), counts(static_cast<std::size_t>(n) * n, 0) {}

    std::uint64_t& at(int gt, int pred) {
        return counts[static_cast<std::size_t>(gt) * num_classes + pred];
    }
    std::uint64_t at(int gt, int pred) const {
        return counts[static_cast<std::size_t>(gt) * num_classes + pred];
    }

    void add(const ConfusionMatrix& other);
};

// counts[g][p] = pixels with ground truth g and prediction p; ground-truth
// ignore pixels are skipped. Throws InputError on shape mismatch or an
// out-of-range id (naming id and pixel position).
ConfusionMatrix confusion_accumulate(const LabelMap& gt, const LabelMap& pred, int num_classes);

struct LabelMapPair {
    const LabelMap* gt;
    const LabelMap* pred;
};

// Batch accumulation over many pairs; OpenMP over pairs with per-thread
// merge. Equals the serial reference exactly (integer counts).
ConfusionMatrix confusion_accumulate_batch(const std::vector<LabelMapPair>& pairs,
                                           int num_classes);

namespace serial {
ConfusionMatrix confusion_accumulate_batch(const std::vector<LabelMapPair>& pairs,
                                           int num_classes);
}

// Mean per-class accuracy over classes with ground-truth pixels; with
// include_absent, absent classes contribute zero. Throws InputError when no
// class has ground-truth pixels.
double mean_accuracy(const ConfusionMatrix& cm, bool include_absent = false);

// Frequency-weighted mean IoU; absent classes carry zero weight.
double fw_miou(const ConfusionMatrix& cm);

// 100 * (value - baseline) / baseline. Throws InputError when baseline <= 0.
double relative_change(double value, double baseline);

struct QcRecord {
    std::string scene_id;
    int prompted_object_count = 1;
    int missing_objects = 0;
    bool excluded = false;
};

struct FidelityStats {
    double scene_match_rate = 0.0;             // fraction
    double object_fidelity_lower_bound = 0.0;  // fraction
    int scenes_counted = 0;
    int full_matches = 0;
    int missing_total = 0;
};

// Excluded records are dropped first. Throws InputError on an empty record
// set or a non-positive min_objects_assumed.
FidelityStats fidelity_stats(const std::vector<QcRecord>& records, int min_objects_assumed);

std::vector<QcRecord> load_qc_records(const Json& j);

struct AccuracyRow {
    // Grouped keys hold values; ungrouped keys stay empty.
    std::string subset;
    std::string category;
    std::string method;
    std::string condition;
    std::string source;
    int correct = 0;
    int total = 0;

    double percent() const { return total == 0 ? 0.0 : 100.0 * correct / total; }
};

// Accuracy per group, rows in lexicographic key order, empty groups omitted.
std::vector<AccuracyRow> aggregate_qa(
    const std::vector<qgen::Verdict>& verdicts,
    const std::set<std::string>& group_keys = {"subset", "category", "method", "condition",
                                               "source"});

struct AblationRow {
    std::string subset;
    std::string category;
    std::string method;
    int standard_correct = 0;
    int standard_total = 0;
    int prompt_gt_correct = 0;
    int prompt_gt_total = 0;

    double standard_percent() const {
        return standard_total == 0 ? 0.0 : 100.0 * standard_correct / standard_total;
    }
    double prompt_gt_percent() const {
        return prompt_gt_total == 0 ? 0.0 : 100.0 * prompt_gt_correct / prompt_gt_total;
    }
};

// Paired Standard/PromptGT accuracies per (subset, category, method).
// Throws Error naming the row when one source is missing.
std::vector<AblationRow> ablation_table(const std::vector<qgen::Verdict>& verdicts);

}  // namespace scenebench::eval
