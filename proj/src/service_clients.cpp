#include "scenebench/service_clients.hpp"

#include <cctype>
#include <cmath>
#include <thread>

#include <httplib.h>

#include "scenebench/errors.hpp"
#include "scenebench/json_io.hpp"
#include "scenebench/rng.hpp"
#include "scenebench/tables.hpp"

namespace scenebench::svc {

void ServiceEndpoint::validate() const {
    if (base_url.empty()) {
        throw InputError("service endpoint: empty base_url");
    }
    if (timeout_ms < 1) {
        throw InputError("service endpoint: timeout_ms must be >= 1");
    }
    if (max_retries < 0 || max_retries > 10) {
        throw InputError("service endpoint: max_retries must lie in [0, 10]");
    }
}

namespace {

class HttplibTransport : public HttpTransport {
public:
    HttpResponse post(const ServiceEndpoint& endpoint, const std::string& path,
                      const std::string& json_body) override {
        httplib::Client client(endpoint.base_url);
        client.set_connection_timeout(0, endpoint.timeout_ms * 1000);
        client.set_read_timeout(0, endpoint.timeout_ms * 1000);
        httplib::Headers headers;
        if (endpoint.auth_token) {
            headers.emplace("Authorization", "Bearer " + *endpoint.auth_token);
        }
        auto result = client.Post(path, headers, json_body, "application/json");
        if (!result) {
            throw TransportError("POST " + endpoint.base_url + path + ": " +
                                 httplib::to_string(result.error()));
        }
        return {result->status, result->body};
    }
};

Json post_json_with_retry(const ServiceEndpoint& endpoint, const std::string& path,
                          const Json& request, const ClientOptions& options, SplitMix64& jitter) {
    auto transport = options.transport ? options.transport : default_transport();
    auto sleep = options.sleep ? options.sleep : [](std::chrono::milliseconds d) {
        std::this_thread::sleep_for(d);
    };
    const std::string body = request.dump();
    int attempt = 0;
    for (;;) {
        ++attempt;
        try {
            HttpResponse response = transport->post(endpoint, path, body);
            if (response.status >= 500) {
                throw TransportError("POST " + path + ": server error " +
                                     std::to_string(response.status));
            }
            if (response.status != 200) {
                throw ProtocolError("POST " + path + ": unexpected status " +
                                    std::to_string(response.status));
            }
            try {
                return Json::parse(response.body);
            } catch (const Json::parse_error& e) {
                throw ProtocolError("POST " + path + ": malformed response body: " + e.what());
            }
        } catch (const TransportError& e) {
            if (attempt > endpoint.max_retries) {
                throw TransportError("service unreachable after " + std::to_string(attempt) +
                                     " attempts: " + e.what());
            }
            double base = 250.0 * std::pow(2.0, attempt - 1);
            double factor = 1.0 + 0.2 * (jitter.next_unit() * 2.0 - 1.0);  // +/-20%
            sleep(std::chrono::milliseconds(static_cast<long long>(base * factor)));
        }
    }
}

constexpr std::uint64_t kGrammarStreamFurniture = 0xfa57;
constexpr std::uint64_t kGrammarStreamManipuland = 0x5111;
constexpr std::uint64_t kEmbedEntryStream = 0xe3bed;

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Distinct picks from a table without rejection loops.
struct Picker {
    SplitMix64& rng;
    const std::vector<std::string>& table;

    std::size_t first() { return rng.next_below(table.size()); }
    std::size_t another(std::size_t a) {
        return (a + 1 + rng.next_below(table.size() - 1)) % table.size();
    }
    std::size_t third(std::size_t a, std::size_t b) {
        // walk a seeded offset past the two taken slots
        std::size_t offset = rng.next_below(table.size() - 2);
        std::size_t idx = 0;
        for (std::size_t step = 0;; ++step) {
            idx = (a + 1 + step) % table.size();
            if (idx == b) {
                continue;
            }
            if (offset == 0) {
                break;
            }
            --offset;
        }
        return idx;
    }
};

std::string compose_furniture_prompt(SplitMix64& rng) {
    const auto& g = tables::offline_grammar();
    Picker furniture{rng, g.furniture};
    std::size_t room = rng.next_below(g.rooms.size());
    std::size_t f1 = furniture.first();
    std::size_t f2 = furniture.another(f1);
    std::size_t f3 = furniture.third(f1, f2);
    std::size_t rel = rng.next_below(g.relations.size());
    return "A " + g.rooms[room] + " with a " + g.furniture[f1] + " " + g.relations[rel] +
           " the " + g.furniture[f2] + ", and a " + g.furniture[f3] + " against the wall.";
}

std::string compose_manipuland_prompt(SplitMix64& rng) {
    const auto& g = tables::offline_grammar();
    Picker small{rng, g.manipulands};
    std::size_t room = rng.next_below(g.rooms.size());
    std::size_t support = rng.next_below(g.supports.size());
    std::size_t m1 = small.first();
    std::size_t m2 = small.another(m1);
    std::size_t m3 = small.third(m1, m2);
    std::size_t c1 = rng.next_below(g.counts.size());
    std::size_t c2 = rng.next_below(g.counts.size());
    std::size_t rel = rng.next_below(g.relations.size());
    return "A " + g.rooms[room] + " where a " + g.supports[support] + " holds " + g.counts[c1] +
           " " + tables::pluralize(g.manipulands[m1]) + " and " + g.counts[c2] + " " +
           tables::pluralize(g.manipulands[m2]) + " " + g.relations[rel] + " a " +
           g.manipulands[m3] + ".";
}

}  // namespace

std::shared_ptr<HttpTransport> default_transport() {
    static auto transport = std::make_shared<HttplibTransport>();
    return transport;
}

std::vector<std::string> offline_generate(const GenerationRequest& request) {
    if (request.count <= 0 || request.count > 1000) {
        throw InputError("generate_prompts: count must lie in [1, 1000]");
    }
    const auto& g = tables::offline_grammar();
    if (g.furniture.size() < 3 || g.manipulands.size() < 3 || g.rooms.empty() ||
        g.supports.empty() || g.relations.empty() || g.counts.empty()) {
        throw InputError("offline grammar tables are too small to compose prompts");
    }
    const std::uint64_t stream = request.subset == pool::Subset::furniture
                                     ? kGrammarStreamFurniture
                                     : kGrammarStreamManipuland;
    std::vector<std::string> prompts;
    prompts.reserve(request.count);
    for (int i = 0; i < request.count; ++i) {
        SplitMix64 rng(mix_seed(mix_seed(request.seed, stream), static_cast<std::uint64_t>(i)));
        std::string text = request.subset == pool::Subset::furniture
                               ? compose_furniture_prompt(rng)
                               : compose_manipuland_prompt(rng);
        if (!request.style_hints.empty()) {
            const std::string& hint =
                request.style_hints[rng.next_below(request.style_hints.size())];
            text += " Styled as " + hint + ".";
        }
        prompts.push_back(std::move(text));
    }
    return prompts;
}

std::vector<std::string> generate_prompts(const std::optional<ServiceEndpoint>& endpoint,
                                          const GenerationRequest& request,
                                          const ClientOptions& options) {
    if (request.count <= 0 || request.count > 1000) {
        throw InputError("generate_prompts: count must lie in [1, 1000]");
    }
    if (!endpoint) {
        return offline_generate(request);
    }
    endpoint->validate();
    SplitMix64 jitter(mix_seed(options.backoff_seed, 0xbac0ff));

    std::vector<std::string> prompts;
    prompts.reserve(request.count);
    int remaining = request.count;
    int batch_index = 0;
    while (remaining > 0) {
        const int batch = std::min(remaining, kGenerationBatchLimit);
        Json body{{"subset", pool::to_string(request.subset)},
                  {"count", batch},
                  {"seed", request.seed + static_cast<std::uint64_t>(batch_index)},
                  {"style_hints", request.style_hints}};
        Json response = post_json_with_retry(*endpoint, "/v1/generate", body, options, jitter);
        if (!response.is_object() || !response.contains("prompts") ||
            !response.at("prompts").is_array()) {
            throw ProtocolError("generate_prompts: response lacks a \"prompts\" array");
        }
        const Json& texts = response.at("prompts");
        if (static_cast<int>(texts.size()) < batch) {
            throw ProtocolError("generate_prompts: short response, requested " +
                                std::to_string(batch) + " texts, received " +
                                std::to_string(texts.size()));
        }
        for (int i = 0; i < batch; ++i) {
            if (!texts[i].is_string() || texts[i].get<std::string>().empty()) {
                throw ProtocolError("generate_prompts: response prompt " + std::to_string(i) +
                                    " is empty or not a string");
            }
            prompts.push_back(texts[i].get<std::string>());
        }
        remaining -= batch;
        ++batch_index;
    }
    return prompts;
}

EmbeddingVector offline_embed(const std::string& text) {
    // Order-independent multiset hash over lowercased whitespace tokens.
    std::uint64_t multiset_hash = 0;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            multiset_hash += fnv1a64(token);
            token.clear();
        }
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    flush();

    EmbeddingVector v;
    v.values.reserve(kOfflineEmbeddingDim);
    for (int j = 0; j < kOfflineEmbeddingDim; ++j) {
        std::uint64_t h =
            mix_seed(multiset_hash, mix_seed(kEmbedEntryStream, static_cast<std::uint64_t>(j)));
        double unit = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
        v.values.push_back(unit * 2.0 - 1.0);
    }
    return v;
}

std::vector<EmbeddingVector> embed_texts(const std::optional<ServiceEndpoint>& endpoint,
                                         const std::vector<std::string>& texts,
                                         const ClientOptions& options) {
    if (texts.empty()) {
        throw InputError("embed_texts: no texts");
    }
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (texts[i].empty()) {
            throw InputError("embed_texts: text " + std::to_string(i) + " is empty");
        }
    }
    if (!endpoint) {
        std::vector<EmbeddingVector> out;
        out.reserve(texts.size());
        for (const auto& text : texts) {
            out.push_back(offline_embed(text));
        }
        return out;
    }
    endpoint->validate();
    SplitMix64 jitter(mix_seed(options.backoff_seed, 0xbac0ff));
    Json body{{"texts", texts}};
    Json response = post_json_with_retry(*endpoint, "/v1/embed", body, options, jitter);
    if (!response.is_object() || !response.contains("embeddings") ||
        !response.at("embeddings").is_array()) {
        throw ProtocolError("embed_texts: response lacks an \"embeddings\" array");
    }
    const Json& rows = response.at("embeddings");
    if (rows.size() != texts.size()) {
        throw ProtocolError("embed_texts: expected " + std::to_string(texts.size()) +
                            " vectors, received " + std::to_string(rows.size()));
    }
    std::vector<EmbeddingVector> out;
    out.reserve(rows.size());
    std::size_t dim = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EmbeddingVector v;
        try {
            v.values = rows[i].get<std::vector<double>>();
        } catch (const Json::exception&) {
            throw ProtocolError("embed_texts: vector " + std::to_string(i) + " is not numeric");
        }
        if (i == 0) {
            dim = v.values.size();
        } else if (v.values.size() != dim) {
            throw ProtocolError("embed_texts: vector " + std::to_string(i) + " has dim " +
                                std::to_string(v.values.size()) + ", expected " +
                                std::to_string(dim));
        }
        for (double x : v.values) {
            if (!std::isfinite(x)) {
                throw ProtocolError("embed_texts: vector " + std::to_string(i) +
                                    " holds a non-finite entry");
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace scenebench::svc
