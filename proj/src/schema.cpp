#include "scenebench/schema.hpp"

#include <algorithm>

#include "scenebench/errors.hpp"

namespace scenebench::schema {

namespace {

bool type_matches(const std::string& type, const Json& doc) {
    if (type == "object") return doc.is_object();
    if (type == "array") return doc.is_array();
    if (type == "string") return doc.is_string();
    if (type == "boolean") return doc.is_boolean();
    if (type == "null") return doc.is_null();
    if (type == "number") return doc.is_number();
    if (type == "integer") return doc.is_number_integer() || doc.is_number_unsigned();
    return false;
}

void check(const Json& schema, const Json& doc, const std::string& path,
           std::vector<std::string>& out) {
    if (schema.contains("type")) {
        const Json& t = schema.at("type");
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(t.get<std::string>(), doc);
        } else {
            for (const auto& alt : t) {
                if (type_matches(alt.get<std::string>(), doc)) {
                    ok = true;
                    break;
                }
            }
        }
        if (!ok) {
            out.push_back(path + ": expected type " + t.dump() + ", got " +
                          std::string(doc.type_name()));
            return;  // further checks would only cascade
        }
    }

    if (schema.contains("enum")) {
        const Json& options = schema.at("enum");
        if (std::find(options.begin(), options.end(), doc) == options.end()) {
            out.push_back(path + ": value " + doc.dump() + " not in enum " + options.dump());
        }
    }

    if (doc.is_number()) {
        double v = doc.get<double>();
        if (schema.contains("minimum") && v < schema.at("minimum").get<double>()) {
            out.push_back(path + ": " + doc.dump() + " below minimum " +
                          schema.at("minimum").dump());
        }
        if (schema.contains("maximum") && v > schema.at("maximum").get<double>()) {
            out.push_back(path + ": " + doc.dump() + " above maximum " +
                          schema.at("maximum").dump());
        }
    }

    if (doc.is_object()) {
        if (schema.contains("required")) {
            for (const auto& name : schema.at("required")) {
                if (!doc.contains(name.get<std::string>())) {
                    out.push_back(path + ": missing required key \"" + name.get<std::string>() +
                                  "\"");
                }
            }
        }
        const Json* props = schema.contains("properties") ? &schema.at("properties") : nullptr;
        bool additional = true;
        if (schema.contains("additionalProperties")) {
            additional = schema.at("additionalProperties").get<bool>();
        }
        for (const auto& [key, value] : doc.items()) {
            if (props && props->contains(key)) {
                check(props->at(key), value, path + "/" + key, out);
            } else if (!additional) {
                out.push_back(path + ": unexpected key \"" + key + "\"");
            }
        }
    }

    if (doc.is_array()) {
        if (schema.contains("minItems") &&
            doc.size() < schema.at("minItems").get<std::size_t>()) {
            out.push_back(path + ": fewer than " + schema.at("minItems").dump() + " items");
        }
        if (schema.contains("maxItems") &&
            doc.size() > schema.at("maxItems").get<std::size_t>()) {
            out.push_back(path + ": more than " + schema.at("maxItems").dump() + " items");
        }
        if (schema.contains("items")) {
            const Json& item_schema = schema.at("items");
            for (std::size_t i = 0; i < doc.size(); ++i) {
                check(item_schema, doc[i], path + "/" + std::to_string(i), out);
            }
        }
    }
}

}  // namespace

std::vector<std::string> violations(const Json& schema, const Json& doc) {
    std::vector<std::string> out;
    check(schema, doc, "$", out);
    return out;
}

void validate(const Json& schema, const Json& doc, const std::string& what) {
    auto v = violations(schema, doc);
    if (v.empty()) {
        return;
    }
    std::string msg = what + " failed schema validation:";
    std::size_t shown = std::min<std::size_t>(v.size(), 5);
    for (std::size_t i = 0; i < shown; ++i) {
        msg += "\n  " + v[i];
    }
    if (v.size() > shown) {
        msg += "\n  (+" + std::to_string(v.size() - shown) + " more)";
    }
    throw ParseError(msg);
}

}  // namespace scenebench::schema
