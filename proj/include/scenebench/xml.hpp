#pragma once

#include <map>
#include <string>
#include <vector>

namespace scenebench::xml {

// Minimal DOM for the SDF subset: elements, attributes, character data,
// comments, XML declaration, CDATA, and the five predefined entities plus
// numeric character references. No namespaces, no DTD processing.
struct Element {
    std::string name;
    std::map<std::string, std::string> attributes;
    std::vector<Element> children;
    std::string text;  // concatenated character data directly inside
    int line = 0;
    int column = 0;

    const Element* child(const std::string& child_name) const;
    std::vector<const Element*> children_named(const std::string& child_name) const;
    std::string attribute(const std::string& attr_name, const std::string& fallback = "") const;
};

// Parses a complete document and returns the root element.
// Throws ParseError with line/column on malformed input.
Element parse(const std::string& text);

}  // namespace scenebench::xml
