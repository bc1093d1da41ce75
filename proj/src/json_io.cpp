#include "scenebench/json_io.hpp"

#include <fstream>
#include <sstream>

#include "scenebench/errors.hpp"

namespace scenebench {

std::string canonical_dump(const Json& j) {
    return j.dump(2) + "\n";
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    write_text_file(path, canonical_dump(j));
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw IoError("short write to " + path.string());
    }
}

std::vector<Json> read_jsonl_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<Json> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        try {
            rows.push_back(Json::parse(line));
        } catch (const Json::parse_error& e) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rows;
}

void write_jsonl_file(const std::filesystem::path& path, const std::vector<Json>& rows) {
    std::string out;
    for (const auto& row : rows) {
        out += row.dump();  // compact, sorted keys
        out += '\n';
    }
    write_text_file(path, out);
}

}  // namespace scenebench
