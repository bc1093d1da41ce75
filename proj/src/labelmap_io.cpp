#include "scenebench/labelmap_io.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "scenebench/errors.hpp"
#include "scenebench/json_io.hpp"

namespace scenebench::eval {

namespace {

constexpr char kRawMagic[4] = {'S', 'B', 'L', 'M'};

void apply_remap(LabelMap& map, const std::filesystem::path& source) {
    std::filesystem::path sidecar = source;
    sidecar += ".remap.json";
    if (!std::filesystem::exists(sidecar)) {
        return;
    }
    Json j = read_json_file(sidecar);
    std::map<std::int32_t, std::int32_t> remap;
    for (const auto& [key, value] : j.at("map").items()) {
        remap[static_cast<std::int32_t>(std::stol(key))] = value.get<std::int32_t>();
    }
    for (auto& label : map.labels) {
        if (auto it = remap.find(label); it != remap.end()) {
            label = it->second;
        }
    }
}

int read_pnm_token(std::istream& in, const std::filesystem::path& path) {
    // skips whitespace and '#' comments
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int value;
    if (!(in >> value) || value < 0) {
        throw ParseError(path.string() + ": malformed PGM header");
    }
    return value;
}

LabelMap read_pgm(std::ifstream& in, const std::filesystem::path& path, bool binary) {
    LabelMap map;
    map.width = read_pnm_token(in, path);
    map.height = read_pnm_token(in, path);
    const int maxval = read_pnm_token(in, path);
    if (map.width <= 0 || map.height <= 0 || maxval <= 0 || maxval > 65535) {
        throw ParseError(path.string() + ": unsupported PGM dimensions or maxval");
    }
    const std::size_t n = static_cast<std::size_t>(map.width) * map.height;
    map.labels.resize(n);
    if (binary) {
        in.get();  // single whitespace after maxval
        const int bytes_per = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> raw(n * bytes_per);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
            throw ParseError(path.string() + ": truncated PGM pixel data");
        }
        for (std::size_t i = 0; i < n; ++i) {
            map.labels[i] = bytes_per == 1
                                ? raw[i]
                                : static_cast<std::int32_t>(raw[2 * i]) * 256 + raw[2 * i + 1];
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            int value;
            if (!(in >> value)) {
                throw ParseError(path.string() + ": truncated PGM pixel data");
            }
            map.labels[i] = value;
        }
    }
    return map;
}

}  // namespace

LabelMap read_labelmap(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in) {
        throw ParseError(path.string() + ": file too short");
    }

    LabelMap map;
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) {
        map = read_pgm(in, path, magic[1] == '5');
    } else if (magic[0] == 'S' && magic[1] == 'B') {
        char rest[2];
        in.read(rest, 2);
        if (!in || rest[0] != 'L' || rest[1] != 'M') {
            throw ParseError(path.string() + ": bad raw label map magic");
        }
        std::uint32_t dims[2];
        in.read(reinterpret_cast<char*>(dims), sizeof(dims));
        if (!in) {
            throw ParseError(path.string() + ": truncated raw header");
        }
        map.width = static_cast<int>(dims[0]);
        map.height = static_cast<int>(dims[1]);
        if (map.width <= 0 || map.height <= 0) {
            throw ParseError(path.string() + ": bad raw dimensions");
        }
        const std::size_t n = static_cast<std::size_t>(map.width) * map.height;
        map.labels.resize(n);
        in.read(reinterpret_cast<char*>(map.labels.data()),
                static_cast<std::streamsize>(n * sizeof(std::int32_t)));
        if (static_cast<std::size_t>(in.gcount()) != n * sizeof(std::int32_t)) {
            throw ParseError(path.string() + ": truncated raw pixel data");
        }
    } else {
        throw ParseError(path.string() + ": unrecognized label map format");
    }
    apply_remap(map, path);
    return map;
}

void write_labelmap_raw(const std::filesystem::path& path, const LabelMap& map) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out.write(kRawMagic, 4);
    std::uint32_t dims[2] = {static_cast<std::uint32_t>(map.width),
                             static_cast<std::uint32_t>(map.height)};
    out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    out.write(reinterpret_cast<const char*>(map.labels.data()),
              static_cast<std::streamsize>(map.labels.size() * sizeof(std::int32_t)));
    if (!out) {
        throw IoError("short write to " + path.string());
    }
}

void write_labelmap_pgm(const std::filesystem::path& path, const LabelMap& map) {
    std::int32_t maxval = 1;
    for (std::int32_t v : map.labels) {
        if (v < 0 || v > 65535) {
            throw InputError("write_labelmap_pgm: label " + std::to_string(v) +
                             " not representable; use the raw format");
        }
        maxval = std::max(maxval, v);
    }
    std::ostringstream out;
    out << "P2\n" << map.width << " " << map.height << "\n" << maxval << "\n";
    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            out << map.labels[static_cast<std::size_t>(y) * map.width + x];
            out << (x + 1 == map.width ? '\n' : ' ');
        }
    }
    write_text_file(path, out.str());
}

}  // namespace scenebench::eval
