#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scenebench/json_io.hpp"
#include "scenebench/prompt_pool.hpp"
#include "scenebench/scene_adapter.hpp"
#include "scenebench/service_clients.hpp"

namespace scenebench::ws {

std::string sha256_hex(const std::string& bytes);
// Digest over canonicalized file bytes (CRLF normalized to LF).
std::string digest_file(const std::filesystem::path& path);
// Combined digest over (name, digest) pairs, order-insensitive by sorting.
std::string digest_entries(std::vector<std::pair<std::string, std::string>> entries);

struct PipelineConfig {
    std::string version = "1";
    std::uint64_t seed = 0;
    int jobs = 0;  // 0 -> logical cores
    pool::SelectionPlan selection;
    struct Services {
        std::optional<std::string> llm_url;
        std::optional<std::string> embed_url;
        std::optional<std::string> api_token;
        int timeout_ms = 10000;
        int max_retries = 3;
    } services;
    struct Adapter {
        double floor_coverage = adapter::kFloorCoverageThreshold;
        double floor_thickness = adapter::kFloorThickness;
        double snap_tolerance = adapter::kSnapTolerance;
        std::vector<adapter::LightCondition> conditions = adapter::all_conditions();
        std::map<std::string, std::string> lexicon_overrides;
    } adapter;
    struct Evaluator {
        bool include_absent_classes = false;
        bool per_frame = false;
        int min_objects_assumed = 5;
    } evaluator;
    std::optional<std::string> templates_path;

    static PipelineConfig defaults();
    // Schema-validated parse; unknown keys are rejected.
    static PipelineConfig from_json(const Json& j);
    Json to_json() const;

    // Env vars SCENEBENCH_LLM_URL / SCENEBENCH_EMBED_URL / SCENEBENCH_API_TOKEN
    // override the config; unset URL means offline fallback.
    std::optional<svc::ServiceEndpoint> llm_endpoint() const;
    std::optional<svc::ServiceEndpoint> embed_endpoint() const;
};

struct StageRecord {
    std::string status;  // pending | done | failed
    std::string input_digest;
    std::string output_digest;
    std::string timestamp;
};

struct SceneEntry {
    std::string scene_id;
    std::string subset = "furniture";
    std::map<std::string, std::string> paths;
};

struct Manifest {
    std::string version = "0.1.0";
    std::uint64_t seed = 0;
    std::map<std::string, StageRecord> stages;
    std::vector<SceneEntry> scenes;

    static Manifest from_json(const Json& j);
    Json to_json() const;
    // Done stages need both digests and done predecessors.
    void validate() const;
};

// Stage-name -> required predecessor stages.
const std::map<std::string, std::vector<std::string>>& stage_order();

class EventLog {
public:
    EventLog() = default;
    EventLog(std::filesystem::path file, bool mirror_stderr);

    void event(const std::string& level, const std::string& stage, const std::string& scene_id,
               const std::string& message);

private:
    std::filesystem::path file_;
    bool mirror_stderr_ = false;
};

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::optional<std::filesystem::path> config_path;
    bool json_output = false;
};

class Workspace {
public:
    Workspace(std::filesystem::path root, const RunOptions& options);

    const std::filesystem::path& root() const { return root_; }
    const PipelineConfig& config() const { return config_; }
    Manifest& manifest() { return manifest_; }
    EventLog& log() { return log_; }
    int jobs() const;

    std::filesystem::path path(const std::string& relative) const { return root_ / relative; }

    // Throws UsageError when a required predecessor is not done.
    void require_predecessors(const std::string& stage) const;
    // True when the stage is done with matching input digest and its recorded
    // outputs are untouched; such a rerun leaves the manifest byte-identical.
    bool should_skip(const std::string& stage, const std::string& input_digest) const;
    void record_stage(const std::string& stage, const std::string& status,
                      const std::string& input_digest, const std::string& output_digest);
    void save_manifest();

    std::string digest_paths(const std::vector<std::filesystem::path>& paths) const;

private:
    std::filesystem::path root_;
    PipelineConfig config_;
    Manifest manifest_;
    EventLog log_;
    std::optional<int> jobs_override_;
};

// Advisory single-writer lock on <workspace>/.lock, released on destruction.
class WorkspaceLock {
public:
    explicit WorkspaceLock(const std::filesystem::path& workspace_root);
    ~WorkspaceLock();
    WorkspaceLock(const WorkspaceLock&) = delete;
    WorkspaceLock& operator=(const WorkspaceLock&) = delete;

private:
    int fd_ = -1;
};

// Stage commands. Results are written into the workspace; exceptions map to
// exit codes at the CLI boundary (UsageError -> 2, others -> 1).
// cmd_adapt returns false when at least one scene failed.
void cmd_prompts(Workspace& ws, const std::string& action);
bool cmd_adapt(Workspace& ws);
void cmd_questions(Workspace& ws);
void cmd_eval(Workspace& ws, const std::string& what);
void cmd_report(Workspace& ws);

// Single-scene conversion used by both the batch stage and the direct CLI
// mode (--scene/--manifest/--out).
struct AdaptSceneResult {
    std::string scene_id;
    bool ok = false;
    std::string error;
    std::vector<std::string> warnings;
    int repair_events = 0;
    int snap_events = 0;
    bool floor_synthesized = false;
    std::vector<std::filesystem::path> files;
};

AdaptSceneResult adapt_one_scene(const std::filesystem::path& scene_sdf,
                                 const adapter::AssetManifest& assets,
                                 const std::filesystem::path& out_dir,
                                 const PipelineConfig& config, std::uint64_t seed);

}  // namespace scenebench::ws
