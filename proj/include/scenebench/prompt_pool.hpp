#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scenebench/embedding.hpp"
#include "scenebench/json_io.hpp"

namespace scenebench::pool {

enum class Subset { furniture, manipuland };

std::string to_string(Subset s);
Subset subset_from_string(const std::string& s);

enum class StatusKind { candidate, duplicate_of, selected, rejected };

struct PromptStatus {
    StatusKind kind = StatusKind::candidate;
    std::int64_t of = -1;  // valid only for duplicate_of
};

struct PromptRecord {
    std::int64_t id = 0;
    std::string text;
    Subset subset = Subset::furniture;
    std::optional<EmbeddingVector> embedding;
    PromptStatus status;
};

struct SelectionPlan {
    int pool_size_target = 0;
    int select_count = 0;
    std::map<Subset, int> quotas;
    double dedup_threshold = 0.92;

    // Throws InputError when the plan invariants do not hold
    // (quota sum == select_count, select_count <= pool_size_target, ...).
    void validate() const;
};

// Scans records in ascending id order; a record whose cosine similarity to an
// earlier retained record reaches `threshold` becomes duplicate_of the
// earliest such record. Records already marked duplicate_of or rejected are
// skipped and never absorb later duplicates.
// Throws InputError when a scanned record lacks an embedding.
std::vector<PromptRecord> dedup_pool(std::vector<PromptRecord> pool, double threshold);

struct SelectionResult {
    std::vector<PromptRecord> pool;       // statuses updated
    std::vector<std::int64_t> order;      // selection order, furniture block first
    std::map<Subset, std::vector<std::int64_t>> order_by_subset;
};

// Greedy farthest-point selection per subset over candidates, distance
// 1 - cosine. Seeded from the maximum-distance pair (smaller id first); each
// later pick maximizes the minimum distance to the already selected, ties by
// smallest id. Throws CapacityError when a subset cannot meet its quota.
SelectionResult select_diverse(std::vector<PromptRecord> pool, const SelectionPlan& plan);

struct StatusCounts {
    int candidate = 0;
    int duplicate = 0;
    int selected = 0;
    int rejected = 0;

    int total() const { return candidate + duplicate + selected + rejected; }
};

struct PlanSummary {
    std::map<Subset, StatusCounts> per_subset;
    int pool_size = 0;
    int pool_size_target = 0;
    int select_count = 0;

    Json to_json() const;
};

PlanSummary plan_summary(const SelectionPlan& plan, const std::vector<PromptRecord>& records);

// Line-delimited pool persistence:
// {"id":..,"text":..,"subset":..,"embedding":[..]|null,
//  "status":{"kind":..,"of":..?}}
Json record_to_json(const PromptRecord& rec);
PromptRecord record_from_json(const Json& j);

std::vector<PromptRecord> load_pool(const std::filesystem::path& path);
void save_pool(const std::filesystem::path& path, const std::vector<PromptRecord>& records);

}  // namespace scenebench::pool
