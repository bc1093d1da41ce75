#include "scenebench/evaluator.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "scenebench/errors.hpp"

namespace scenebench::eval {

void ConfusionMatrix::add(const ConfusionMatrix& other) {
    if (other.num_classes != num_classes) {
        throw InputError("confusion add: class count mismatch");
    }
    for (std::size_t i = 0; i < counts.size(); ++i) {
        counts[i] += other.counts[i];
    }
}

ConfusionMatrix confusion_accumulate(const LabelMap& gt, const LabelMap& pred, int num_classes) {
    if (num_classes <= 0) {
        throw InputError("confusion_accumulate: num_classes must be positive");
    }
    if (gt.width != pred.width || gt.height != pred.height) {
        throw InputError("confusion_accumulate: dimension mismatch (" + std::to_string(gt.width) +
                         "x" + std::to_string(gt.height) + " vs " + std::to_string(pred.width) +
                         "x" + std::to_string(pred.height) + ")");
    }
    const std::size_t expected = static_cast<std::size_t>(gt.width) * gt.height;
    if (gt.labels.size() != expected || pred.labels.size() != expected) {
        throw InputError("confusion_accumulate: label buffer size mismatch");
    }

    ConfusionMatrix cm(num_classes);
    for (std::size_t i = 0; i < expected; ++i) {
        std::int32_t g = gt.labels[i];
        if (g == gt.ignore_id) {
            continue;
        }
        std::int32_t p = pred.labels[i];
        auto position = [&] {
            return "pixel (" + std::to_string(i % gt.width) + ", " + std::to_string(i / gt.width) +
                   ")";
        };
        if (g < 0 || g >= num_classes) {
            throw InputError("confusion_accumulate: ground-truth id " + std::to_string(g) +
                             " out of range at " + position());
        }
        if (p < 0 || p >= num_classes) {
            throw InputError("confusion_accumulate: predicted id " + std::to_string(p) +
                             " out of range at " + position());
        }
        ++cm.at(g, p);
    }
    return cm;
}

namespace serial {

ConfusionMatrix confusion_accumulate_batch(const std::vector<LabelMapPair>& pairs,
                                           int num_classes) {
    ConfusionMatrix total(num_classes);
    for (const auto& pair : pairs) {
        total.add(confusion_accumulate(*pair.gt, *pair.pred, num_classes));
    }
    return total;
}

}  // namespace serial

ConfusionMatrix confusion_accumulate_batch(const std::vector<LabelMapPair>& pairs,
                                           int num_classes) {
    if (num_classes <= 0) {
        throw InputError("confusion_accumulate_batch: num_classes must be positive");
    }
    ConfusionMatrix total(num_classes);
#ifdef _OPENMP
    std::exception_ptr failure;
#pragma omp parallel
    {
        ConfusionMatrix local(num_classes);
#pragma omp for schedule(dynamic) nowait
        for (long long i = 0; i < static_cast<long long>(pairs.size()); ++i) {
            try {
                local.add(confusion_accumulate(*pairs[i].gt, *pairs[i].pred, num_classes));
            } catch (...) {
#pragma omp critical(sb_confusion_failure)
                {
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        }
#pragma omp critical(sb_confusion_merge)
        total.add(local);
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
#else
    total = serial::confusion_accumulate_batch(pairs, num_classes);
#endif
    return total;
}

namespace {

struct RowStats {
    std::uint64_t row_sum = 0;
    std::uint64_t col_sum = 0;
    std::uint64_t diagonal = 0;
};

std::vector<RowStats> row_stats(const ConfusionMatrix& cm) {
    std::vector<RowStats> stats(cm.num_classes);
    for (int g = 0; g < cm.num_classes; ++g) {
        for (int p = 0; p < cm.num_classes; ++p) {
            std::uint64_t c = cm.at(g, p);
            stats[g].row_sum += c;
            stats[p].col_sum += c;
        }
        stats[g].diagonal = cm.at(g, g);
    }
    return stats;
}

}  // namespace

double mean_accuracy(const ConfusionMatrix& cm, bool include_absent) {
    const auto stats = row_stats(cm);
    double sum = 0.0;
    int classes = 0;
    for (int c = 0; c < cm.num_classes; ++c) {
        if (stats[c].row_sum == 0) {
            if (include_absent) {
                ++classes;  // contributes zero accuracy
            }
            continue;
        }
        sum += static_cast<double>(stats[c].diagonal) / static_cast<double>(stats[c].row_sum);
        ++classes;
    }
    if (classes == 0 ||
        std::all_of(stats.begin(), stats.end(), [](const RowStats& s) { return s.row_sum == 0; })) {
        throw InputError("mean_accuracy: no class has ground-truth pixels");
    }
    return sum / classes;
}

double fw_miou(const ConfusionMatrix& cm) {
    const auto stats = row_stats(cm);
    std::uint64_t total = 0;
    for (const auto& s : stats) {
        total += s.row_sum;
    }
    if (total == 0) {
        throw InputError("fw_miou: no class has ground-truth pixels");
    }
    double sum = 0.0;
    for (int c = 0; c < cm.num_classes; ++c) {
        if (stats[c].row_sum == 0) {
            continue;  // zero weight
        }
        const double weight = static_cast<double>(stats[c].row_sum) / static_cast<double>(total);
        const double union_count = static_cast<double>(stats[c].row_sum) +
                                   static_cast<double>(stats[c].col_sum) -
                                   static_cast<double>(stats[c].diagonal);
        const double iou =
            union_count == 0.0 ? 0.0 : static_cast<double>(stats[c].diagonal) / union_count;
        sum += weight * iou;
    }
    return sum;
}

double relative_change(double value, double baseline) {
    if (!(baseline > 0.0)) {
        throw InputError("relative_change: baseline must be > 0, got " +
                         std::to_string(baseline));
    }
    return 100.0 * (value - baseline) / baseline;
}

FidelityStats fidelity_stats(const std::vector<QcRecord>& records, int min_objects_assumed) {
    if (min_objects_assumed <= 0) {
        throw InputError("fidelity_stats: min_objects_assumed must be positive");
    }
    FidelityStats stats;
    for (const auto& record : records) {
        if (record.excluded) {
            continue;
        }
        if (record.missing_objects < 0 || record.prompted_object_count < 1 ||
            record.missing_objects > record.prompted_object_count) {
            throw InputError("fidelity_stats: record \"" + record.scene_id +
                             "\" violates missing_objects <= prompted_object_count");
        }
        ++stats.scenes_counted;
        stats.missing_total += record.missing_objects;
        if (record.missing_objects == 0) {
            ++stats.full_matches;
        }
    }
    if (stats.scenes_counted == 0) {
        throw InputError("fidelity_stats: no records after dropping excluded ones");
    }
    stats.scene_match_rate =
        static_cast<double>(stats.full_matches) / static_cast<double>(stats.scenes_counted);
    stats.object_fidelity_lower_bound =
        1.0 - static_cast<double>(stats.missing_total) /
                  (static_cast<double>(stats.scenes_counted) *
                   static_cast<double>(min_objects_assumed));
    return stats;
}

std::vector<QcRecord> load_qc_records(const Json& j) {
    std::vector<QcRecord> records;
    for (const auto& entry : j.at("records")) {
        QcRecord record;
        record.scene_id = entry.at("scene_id").get<std::string>();
        record.prompted_object_count = entry.at("prompted_object_count").get<int>();
        record.missing_objects = entry.at("missing_objects").get<int>();
        record.excluded = entry.value("excluded", false);
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<AccuracyRow> aggregate_qa(const std::vector<qgen::Verdict>& verdicts,
                                      const std::set<std::string>& group_keys) {
    for (const auto& key : group_keys) {
        if (key != "subset" && key != "category" && key != "method" && key != "condition" &&
            key != "source") {
            throw InputError("aggregate_qa: unknown group key \"" + key + "\"");
        }
    }
    using Key = std::tuple<std::string, std::string, std::string, std::string, std::string>;
    std::map<Key, std::pair<int, int>> groups;  // correct, total
    for (const auto& v : verdicts) {
        Key key{group_keys.count("subset") ? pool::to_string(v.subset) : "",
                group_keys.count("category") ? qgen::to_string(v.category) : "",
                group_keys.count("method") ? v.method : "",
                group_keys.count("condition") ? v.condition : "",
                group_keys.count("source") ? qgen::to_string(v.source) : ""};
        auto& [correct, total] = groups[key];
        correct += v.correct ? 1 : 0;
        ++total;
    }
    std::vector<AccuracyRow> rows;
    for (const auto& [key, counts] : groups) {
        AccuracyRow row;
        std::tie(row.subset, row.category, row.method, row.condition, row.source) = key;
        row.correct = counts.first;
        row.total = counts.second;
        rows.push_back(std::move(row));
    }
    return rows;  // std::map iteration is already lexicographic in the key
}

std::vector<AblationRow> ablation_table(const std::vector<qgen::Verdict>& verdicts) {
    using Key = std::tuple<std::string, std::string, std::string>;
    struct Cell {
        int standard_correct = 0, standard_total = 0;
        int prompt_gt_correct = 0, prompt_gt_total = 0;
    };
    std::map<Key, Cell> cells;
    for (const auto& v : verdicts) {
        Key key{pool::to_string(v.subset), qgen::to_string(v.category), v.method};
        Cell& cell = cells[key];
        if (v.source == qgen::QSource::standard) {
            cell.standard_correct += v.correct ? 1 : 0;
            ++cell.standard_total;
        } else {
            cell.prompt_gt_correct += v.correct ? 1 : 0;
            ++cell.prompt_gt_total;
        }
    }
    std::vector<AblationRow> rows;
    for (const auto& [key, cell] : cells) {
        if (cell.standard_total == 0 || cell.prompt_gt_total == 0) {
            throw Error("ablation_table: row (" + std::get<0>(key) + ", " + std::get<1>(key) +
                        ", " + std::get<2>(key) + ") lacks source " +
                        (cell.standard_total == 0 ? "standard" : "prompt_gt"));
        }
        AblationRow row;
        std::tie(row.subset, row.category, row.method) = key;
        row.standard_correct = cell.standard_correct;
        row.standard_total = cell.standard_total;
        row.prompt_gt_correct = cell.prompt_gt_correct;
        row.prompt_gt_total = cell.prompt_gt_total;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace scenebench::eval
