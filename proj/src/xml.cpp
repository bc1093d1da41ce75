#include "scenebench/xml.hpp"

#include <cctype>

#include "scenebench/errors.hpp"

namespace scenebench::xml {

const Element* Element::child(const std::string& child_name) const {
    for (const auto& c : children) {
        if (c.name == child_name) {
            return &c;
        }
    }
    return nullptr;
}

std::vector<const Element*> Element::children_named(const std::string& child_name) const {
    std::vector<const Element*> out;
    for (const auto& c : children) {
        if (c.name == child_name) {
            out.push_back(&c);
        }
    }
    return out;
}

std::string Element::attribute(const std::string& attr_name, const std::string& fallback) const {
    auto it = attributes.find(attr_name);
    return it == attributes.end() ? fallback : it->second;
}

namespace {

class Cursor {
public:
    explicit Cursor(const std::string& text) : text_(text) {}

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    bool starts_with(const char* s) const { return text_.compare(pos_, std::string::traits_type::length(s), s) == 0; }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void advance_by(std::size_t n) {
        for (std::size_t i = 0; i < n && !eof(); ++i) {
            advance();
        }
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) {
            advance();
        }
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("xml parse error at line " + std::to_string(line_) + ", column " +
                         std::to_string(col_) + ": " + message);
    }

    int line() const { return line_; }
    int column() const { return col_; }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}
bool is_name_char(char c) {
    return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

std::string parse_name(Cursor& cur) {
    if (cur.eof() || !is_name_start(cur.peek())) {
        cur.fail("expected a name");
    }
    std::string name;
    while (!cur.eof() && is_name_char(cur.peek())) {
        name.push_back(cur.advance());
    }
    return name;
}

void append_entity(Cursor& cur, std::string& out) {
    // cur sits just past '&'
    std::string entity;
    while (!cur.eof() && cur.peek() != ';') {
        entity.push_back(cur.advance());
        if (entity.size() > 10) {
            cur.fail("unterminated entity reference");
        }
    }
    if (cur.eof()) {
        cur.fail("unterminated entity reference");
    }
    cur.advance();  // ';'
    if (entity == "lt") out.push_back('<');
    else if (entity == "gt") out.push_back('>');
    else if (entity == "amp") out.push_back('&');
    else if (entity == "quot") out.push_back('"');
    else if (entity == "apos") out.push_back('\'');
    else if (!entity.empty() && entity[0] == '#') {
        int base = 10;
        std::size_t start = 1;
        if (entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X')) {
            base = 16;
            start = 2;
        }
        try {
            unsigned long code = std::stoul(entity.substr(start), nullptr, base);
            if (code == 0 || code > 0x10FFFF) {
                cur.fail("character reference out of range");
            }
            // UTF-8 encode
            if (code < 0x80) {
                out.push_back(static_cast<char>(code));
            } else if (code < 0x800) {
                out.push_back(static_cast<char>(0xC0 | (code >> 6)));
                out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
            } else if (code < 0x10000) {
                out.push_back(static_cast<char>(0xE0 | (code >> 12)));
                out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
                out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
            } else {
                out.push_back(static_cast<char>(0xF0 | (code >> 18)));
                out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
                out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
                out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
            }
        } catch (const std::logic_error&) {
            cur.fail("malformed character reference &" + entity + ";");
        }
    } else {
        cur.fail("unknown entity &" + entity + ";");
    }
}

std::string parse_attribute_value(Cursor& cur) {
    if (cur.eof() || (cur.peek() != '"' && cur.peek() != '\'')) {
        cur.fail("expected a quoted attribute value");
    }
    char quote = cur.advance();
    std::string value;
    while (!cur.eof() && cur.peek() != quote) {
        char c = cur.peek();
        if (c == '<') {
            cur.fail("'<' not allowed in attribute value");
        }
        if (c == '&') {
            cur.advance();
            append_entity(cur, value);
        } else {
            value.push_back(cur.advance());
        }
    }
    if (cur.eof()) {
        cur.fail("unterminated attribute value");
    }
    cur.advance();  // closing quote
    return value;
}

// Skips <!-- ... --> with cur just past "<!--".
void skip_comment(Cursor& cur) {
    while (!cur.eof()) {
        if (cur.starts_with("-->")) {
            cur.advance_by(3);
            return;
        }
        cur.advance();
    }
    cur.fail("unterminated comment");
}

void skip_misc(Cursor& cur) {
    for (;;) {
        cur.skip_ws();
        if (cur.starts_with("<!--")) {
            cur.advance_by(4);
            skip_comment(cur);
        } else if (cur.starts_with("<?")) {
            while (!cur.eof() && !cur.starts_with("?>")) {
                cur.advance();
            }
            if (cur.eof()) {
                cur.fail("unterminated processing instruction");
            }
            cur.advance_by(2);
        } else if (cur.starts_with("<!DOCTYPE")) {
            while (!cur.eof() && cur.peek() != '>') {
                cur.advance();
            }
            if (cur.eof()) {
                cur.fail("unterminated DOCTYPE");
            }
            cur.advance();
        } else {
            return;
        }
    }
}

Element parse_element(Cursor& cur) {
    // cur sits on '<'
    Element elem;
    elem.line = cur.line();
    elem.column = cur.column();
    cur.advance();  // '<'
    elem.name = parse_name(cur);

    for (;;) {
        cur.skip_ws();
        if (cur.eof()) {
            cur.fail("unterminated start tag <" + elem.name + ">");
        }
        if (cur.starts_with("/>")) {
            cur.advance_by(2);
            return elem;
        }
        if (cur.peek() == '>') {
            cur.advance();
            break;
        }
        std::string attr = parse_name(cur);
        cur.skip_ws();
        if (cur.eof() || cur.peek() != '=') {
            cur.fail("expected '=' after attribute " + attr);
        }
        cur.advance();
        cur.skip_ws();
        std::string value = parse_attribute_value(cur);
        if (!elem.attributes.emplace(attr, value).second) {
            cur.fail("duplicate attribute " + attr + " on <" + elem.name + ">");
        }
    }

    // content
    for (;;) {
        if (cur.eof()) {
            cur.fail("missing closing tag </" + elem.name + ">");
        }
        if (cur.starts_with("<!--")) {
            cur.advance_by(4);
            skip_comment(cur);
            continue;
        }
        if (cur.starts_with("<![CDATA[")) {
            cur.advance_by(9);
            while (!cur.eof() && !cur.starts_with("]]>")) {
                elem.text.push_back(cur.advance());
            }
            if (cur.eof()) {
                cur.fail("unterminated CDATA section");
            }
            cur.advance_by(3);
            continue;
        }
        if (cur.starts_with("</")) {
            cur.advance_by(2);
            std::string closing = parse_name(cur);
            if (closing != elem.name) {
                cur.fail("mismatched closing tag </" + closing + ">, expected </" + elem.name +
                         ">");
            }
            cur.skip_ws();
            if (cur.eof() || cur.peek() != '>') {
                cur.fail("malformed closing tag </" + closing + ">");
            }
            cur.advance();
            return elem;
        }
        if (cur.peek() == '<') {
            elem.children.push_back(parse_element(cur));
            continue;
        }
        if (cur.peek() == '&') {
            cur.advance();
            append_entity(cur, elem.text);
            continue;
        }
        elem.text.push_back(cur.advance());
    }
}

}  // namespace

Element parse(const std::string& text) {
    Cursor cur(text);
    skip_misc(cur);
    if (cur.eof() || cur.peek() != '<') {
        cur.fail("expected a root element");
    }
    Element root = parse_element(cur);
    skip_misc(cur);
    if (!cur.eof()) {
        cur.fail("trailing content after the root element");
    }
    return root;
}

}  // namespace scenebench::xml
