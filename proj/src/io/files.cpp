#include "neusv/io/files.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "neusv/error.hpp"

namespace neusv::io {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::Io, "read failed for '" + path.string() + "'");
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

Json parse_json(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::Schema, origin + ": malformed JSON: " + e.what());
    }
}

Json read_json_file(const std::filesystem::path& path) { return parse_json(read_file(path), path.string()); }

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

double round12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

const Json& require(const Json& obj, const char* key, const std::string& context) {
    if (!obj.is_object()) throw Error(ErrorCode::Schema, context + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ErrorCode::Schema, context + ": missing field '" + key + "'");
    return *it;
}

double require_number(const Json& obj, const char* key, const std::string& context) {
    const auto& v = require(obj, key, context);
    if (!v.is_number()) throw Error(ErrorCode::Schema, context + ": field '" + key + "' must be a number");
    return v.get<double>();
}

std::string require_string(const Json& obj, const char* key, const std::string& context) {
    const auto& v = require(obj, key, context);
    if (!v.is_string()) throw Error(ErrorCode::Schema, context + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

} // namespace neusv::io
