#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scenebench/embedding.hpp"
#include "scenebench/prompt_pool.hpp"

namespace scenebench::svc {

struct ServiceEndpoint {
    std::string base_url;
    int timeout_ms = 10000;
    int max_retries = 3;
    std::optional<std::string> auth_token;

    void validate() const;  // timeout >= 1, retries <= 10
};

struct GenerationRequest {
    pool::Subset subset = pool::Subset::furniture;
    int count = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> style_hints;
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

// Pluggable wire layer; the default is cpp-httplib, tests inject fakes.
// Implementations throw TransportError when the service is unreachable.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse post(const ServiceEndpoint& endpoint, const std::string& path,
                              const std::string& json_body) = 0;
};

std::shared_ptr<HttpTransport> default_transport();

struct ClientOptions {
    std::shared_ptr<HttpTransport> transport;                     // null -> default
    std::function<void(std::chrono::milliseconds)> sleep;         // null -> real sleep
    std::uint64_t backoff_seed = 0;                               // jitter stream
};

constexpr int kGenerationBatchLimit = 50;
constexpr int kOfflineEmbeddingDim = 64;

// With an endpoint: POST /v1/generate in batches of <= 50, exponential
// backoff (base 250 ms, factor 2, jitter +/-20%). Without: deterministic
// template-grammar fallback; same (subset, count, seed) yields identical
// texts on every platform.
std::vector<std::string> generate_prompts(const std::optional<ServiceEndpoint>& endpoint,
                                          const GenerationRequest& request,
                                          const ClientOptions& options = {});

// With an endpoint: POST /v1/embed. Without: deterministic 64-dim
// pseudo-embedding (hash of the normalized token multiset); test-only, not
// semantically meaningful.
std::vector<EmbeddingVector> embed_texts(const std::optional<ServiceEndpoint>& endpoint,
                                         const std::vector<std::string>& texts,
                                         const ClientOptions& options = {});

// Offline fallbacks, exposed directly for fixtures and tests.
std::vector<std::string> offline_generate(const GenerationRequest& request);
EmbeddingVector offline_embed(const std::string& text);

}  // namespace scenebench::svc
