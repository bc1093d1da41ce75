#include "scenebench/prompt_pool.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "scenebench/errors.hpp"

namespace scenebench::pool {

std::string to_string(Subset s) {
    return s == Subset::furniture ? "furniture" : "manipuland";
}

Subset subset_from_string(const std::string& s) {
    if (s == "furniture") return Subset::furniture;
    if (s == "manipuland") return Subset::manipuland;
    throw InputError("unknown subset \"" + s + "\"");
}

void SelectionPlan::validate() const {
    if (pool_size_target <= 0) {
        throw InputError("selection plan: pool_size_target must be positive");
    }
    if (select_count <= 0) {
        throw InputError("selection plan: select_count must be positive");
    }
    if (select_count > pool_size_target) {
        throw InputError("selection plan: select_count exceeds pool_size_target");
    }
    int quota_sum = 0;
    for (const auto& [subset, quota] : quotas) {
        if (quota < 0) {
            throw InputError("selection plan: negative quota for " + to_string(subset));
        }
        quota_sum += quota;
    }
    if (quota_sum != select_count) {
        throw InputError("selection plan: quota sum " + std::to_string(quota_sum) +
                         " != select_count " + std::to_string(select_count));
    }
    if (!(dedup_threshold > 0.0 && dedup_threshold <= 1.0)) {
        throw InputError("selection plan: dedup_threshold must lie in (0, 1]");
    }
}

namespace {

std::vector<std::size_t> indices_by_id(const std::vector<PromptRecord>& pool) {
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pool[a].id < pool[b].id; });
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (pool[order[k - 1]].id == pool[order[k]].id) {
            throw InputError("pool contains duplicate id " + std::to_string(pool[order[k]].id));
        }
    }
    return order;
}

const EmbeddingVector& embedding_or_throw(const PromptRecord& rec, const char* op) {
    if (!rec.embedding) {
        throw InputError(std::string(op) + ": record " + std::to_string(rec.id) +
                         " has no embedding");
    }
    return *rec.embedding;
}

}  // namespace

std::vector<PromptRecord> dedup_pool(std::vector<PromptRecord> pool, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw InputError("dedup_pool: threshold must lie in (0, 1]");
    }
    const auto order = indices_by_id(pool);
    for (std::size_t idx : order) {
        embedding_or_throw(pool[idx], "dedup_pool");
    }

    std::vector<std::size_t> retained;  // ascending id, candidates only
    for (std::size_t idx : order) {
        PromptRecord& rec = pool[idx];
        if (rec.status.kind != StatusKind::candidate) {
            continue;
        }
        bool duplicate = false;
        for (std::size_t earlier : retained) {
            double sim = cosine_similarity(*pool[earlier].embedding, *rec.embedding);
            if (sim >= threshold) {
                rec.status = {StatusKind::duplicate_of, pool[earlier].id};
                duplicate = true;
                break;  // retained is scanned in ascending id order: earliest wins
            }
        }
        if (!duplicate) {
            retained.push_back(idx);
        }
    }
    return pool;
}

namespace {

// Greedy farthest-point traversal over one subset's candidates (already
// sorted by ascending id).
std::vector<std::size_t> greedy_select(const std::vector<PromptRecord>& pool,
                                       const std::vector<std::size_t>& candidates, int quota) {
    std::vector<std::size_t> picked;
    if (quota == 0) {
        return picked;
    }
    const std::size_t n = candidates.size();
    if (n == 1) {
        picked.push_back(candidates[0]);
        return picked;
    }

    std::vector<EmbeddingVector> vectors;
    vectors.reserve(n);
    for (std::size_t idx : candidates) {
        vectors.push_back(*pool[idx].embedding);
    }
    const std::vector<double> sim = kernels::pairwise_cosine(vectors);
    auto distance = [&](std::size_t a, std::size_t b) { return 1.0 - sim[a * n + b]; };

    // Seed: smaller-id member of the maximum-distance pair; ties resolve to
    // the lexicographically smallest (id_a, id_b) pair via the scan order.
    std::size_t best_a = 0;
    double best_d = -1.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            double d = distance(a, b);
            if (d > best_d) {
                best_d = d;
                best_a = a;
            }
        }
    }

    std::vector<bool> in_selection(n, false);
    std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
    auto pick = [&](std::size_t local) {
        in_selection[local] = true;
        picked.push_back(candidates[local]);
        for (std::size_t k = 0; k < n; ++k) {
            if (!in_selection[k]) {
                min_dist[k] = std::min(min_dist[k], distance(local, k));
            }
        }
    };
    pick(best_a);

    while (static_cast<int>(picked.size()) < quota) {
        std::size_t best = n;
        double best_score = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (in_selection[k]) {
                continue;
            }
            if (min_dist[k] > best_score) {  // ties keep the earlier (smaller id)
                best_score = min_dist[k];
                best = k;
            }
        }
        pick(best);
    }
    return picked;
}

}  // namespace

SelectionResult select_diverse(std::vector<PromptRecord> pool, const SelectionPlan& plan) {
    plan.validate();
    const auto order = indices_by_id(pool);

    std::map<Subset, std::vector<std::size_t>> candidates;
    for (std::size_t idx : order) {
        if (pool[idx].status.kind == StatusKind::candidate) {
            candidates[pool[idx].subset].push_back(idx);
        }
    }

    SelectionResult result;
    for (Subset subset : {Subset::furniture, Subset::manipuland}) {
        auto quota_it = plan.quotas.find(subset);
        const int quota = quota_it == plan.quotas.end() ? 0 : quota_it->second;
        auto& subset_candidates = candidates[subset];
        if (static_cast<int>(subset_candidates.size()) < quota) {
            throw CapacityError("select_diverse: subset " + to_string(subset) + " has " +
                                std::to_string(subset_candidates.size()) +
                                " retained records for quota " + std::to_string(quota) +
                                " (shortfall " +
                                std::to_string(quota - static_cast<int>(subset_candidates.size())) +
                                ")");
        }
        for (std::size_t idx : subset_candidates) {
            embedding_or_throw(pool[idx], "select_diverse");
        }
        auto picked = greedy_select(pool, subset_candidates, quota);
        for (std::size_t idx : picked) {
            pool[idx].status = {StatusKind::selected, -1};
            result.order.push_back(pool[idx].id);
            result.order_by_subset[subset].push_back(pool[idx].id);
        }
    }
    result.pool = std::move(pool);
    return result;
}

PlanSummary plan_summary(const SelectionPlan& plan, const std::vector<PromptRecord>& records) {
    PlanSummary summary;
    summary.pool_size = static_cast<int>(records.size());
    summary.pool_size_target = plan.pool_size_target;
    summary.select_count = plan.select_count;
    summary.per_subset[Subset::furniture] = {};
    summary.per_subset[Subset::manipuland] = {};
    for (const auto& rec : records) {
        StatusCounts& counts = summary.per_subset[rec.subset];
        switch (rec.status.kind) {
            case StatusKind::candidate: ++counts.candidate; break;
            case StatusKind::duplicate_of: ++counts.duplicate; break;
            case StatusKind::selected: ++counts.selected; break;
            case StatusKind::rejected: ++counts.rejected; break;
        }
    }
    return summary;
}

Json PlanSummary::to_json() const {
    Json per;
    for (const auto& [subset, counts] : per_subset) {
        per[to_string(subset)] = {{"candidate", counts.candidate},
                                  {"duplicate_of", counts.duplicate},
                                  {"selected", counts.selected},
                                  {"rejected", counts.rejected}};
    }
    return Json{{"pool_size", pool_size},
                {"pool_size_target", pool_size_target},
                {"select_count", select_count},
                {"per_subset", per}};
}

Json record_to_json(const PromptRecord& rec) {
    Json j;
    j["id"] = rec.id;
    j["text"] = rec.text;
    j["subset"] = to_string(rec.subset);
    if (rec.embedding) {
        j["embedding"] = rec.embedding->values;
    } else {
        j["embedding"] = nullptr;
    }
    Json status;
    switch (rec.status.kind) {
        case StatusKind::candidate: status["kind"] = "candidate"; break;
        case StatusKind::selected: status["kind"] = "selected"; break;
        case StatusKind::rejected: status["kind"] = "rejected"; break;
        case StatusKind::duplicate_of:
            status["kind"] = "duplicate_of";
            status["of"] = rec.status.of;
            break;
    }
    j["status"] = status;
    return j;
}

PromptRecord record_from_json(const Json& j) {
    PromptRecord rec;
    rec.id = j.at("id").get<std::int64_t>();
    if (rec.id < 0) {
        throw ParseError("prompt record: negative id " + std::to_string(rec.id));
    }
    rec.text = j.at("text").get<std::string>();
    if (rec.text.empty()) {
        throw ParseError("prompt record " + std::to_string(rec.id) + ": empty text");
    }
    rec.subset = subset_from_string(j.at("subset").get<std::string>());
    const Json& emb = j.at("embedding");
    if (!emb.is_null()) {
        EmbeddingVector v;
        v.values = emb.get<std::vector<double>>();
        for (double x : v.values) {
            if (!std::isfinite(x)) {
                throw ParseError("prompt record " + std::to_string(rec.id) +
                                 ": non-finite embedding entry");
            }
        }
        rec.embedding = std::move(v);
    }
    const Json& status = j.at("status");
    const std::string kind = status.at("kind").get<std::string>();
    if (kind == "candidate") {
        rec.status = {StatusKind::candidate, -1};
    } else if (kind == "selected") {
        rec.status = {StatusKind::selected, -1};
    } else if (kind == "rejected") {
        rec.status = {StatusKind::rejected, -1};
    } else if (kind == "duplicate_of") {
        rec.status = {StatusKind::duplicate_of, status.at("of").get<std::int64_t>()};
        if (rec.status.of >= rec.id) {
            throw ParseError("prompt record " + std::to_string(rec.id) +
                             ": duplicate_of must reference a smaller id");
        }
    } else {
        throw ParseError("prompt record " + std::to_string(rec.id) + ": unknown status kind \"" +
                         kind + "\"");
    }
    return rec;
}

std::vector<PromptRecord> load_pool(const std::filesystem::path& path) {
    std::vector<PromptRecord> records;
    for (const auto& row : read_jsonl_file(path)) {
        records.push_back(record_from_json(row));
    }
    return records;
}

void save_pool(const std::filesystem::path& path, const std::vector<PromptRecord>& records) {
    std::vector<Json> rows;
    rows.reserve(records.size());
    for (const auto& rec : records) {
        rows.push_back(record_to_json(rec));
    }
    write_jsonl_file(path, rows);
}

}  // namespace scenebench::pool
