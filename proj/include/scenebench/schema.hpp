#pragma once

#include <string>
#include <vector>

#include "scenebench/json_io.hpp"

namespace scenebench::schema {

// Validator for the limited schema dialect used by the shipped schemas:
// type (string or list), properties, required, additionalProperties (bool),
// items, enum, minimum/maximum, minItems/maxItems. Returns one message per
// violation, each prefixed with a JSON-pointer-style path.
std::vector<std::string> violations(const Json& schema, const Json& doc);

// Throws ParseError naming `what` and the first few violations.
void validate(const Json& schema, const Json& doc, const std::string& what);

}  // namespace scenebench::schema
