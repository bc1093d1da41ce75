#include "scenebench/semantics.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "scenebench/tables.hpp"

namespace scenebench::adapter {

namespace {

bool all_digits(const std::string& token) {
    if (token.empty()) return false;
    for (char c : token) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

bool is_version_token(const std::string& token) {
    return token.size() >= 2 && token[0] == 'v' && all_digits(token.substr(1));
}

bool is_instance_marker(const std::string& token) {
    return all_digits(token) || is_version_token(token) || token == "copy" || token == "instance";
}

}  // namespace

std::string normalize_label(const std::string& raw,
                            const std::map<std::string, std::string>& overrides) {
    std::string lowered;
    lowered.reserve(raw.size());
    for (char c : raw) {
        if (c == '-' || c == '_' || c == '.') {
            lowered.push_back(' ');
        } else {
            lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }

    std::istringstream in(lowered);
    std::vector<std::string> tokens;
    std::string token;
    while (in >> token) {
        tokens.push_back(token);
    }

    // Strip trailing instance markers, including digit suffixes glued onto the
    // last token ("sofa2" -> "sofa").
    for (;;) {
        if (!tokens.empty() && is_instance_marker(tokens.back())) {
            tokens.pop_back();
            continue;
        }
        if (!tokens.empty()) {
            std::string& last = tokens.back();
            std::size_t end = last.size();
            while (end > 0 && std::isdigit(static_cast<unsigned char>(last[end - 1]))) {
                --end;
            }
            if (end != last.size() && end > 0) {
                last.erase(end);
                continue;
            }
        }
        break;
    }

    std::string result;
    for (const auto& t : tokens) {
        if (!result.empty()) result.push_back(' ');
        result += t;
    }

    const auto& synonyms = tables::synonym_table();
    if (auto it = synonyms.find(result); it != synonyms.end()) {
        result = it->second;
    }
    if (auto it = overrides.find(result); it != overrides.end()) {
        result = it->second;
    }
    return result.empty() ? "unknown" : result;
}

std::map<std::string, std::string> normalize_semantics(
    const SourceScene& scene, const std::map<std::string, std::string>& overrides) {
    std::map<std::string, std::string> categories;
    for (const auto& model : scene.models) {
        categories[model.name] = normalize_label(model.raw_label, overrides);
    }
    return categories;
}

}  // namespace scenebench::adapter
