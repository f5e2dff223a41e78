#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace neusv::io {

using Json = nlohmann::json;

/// Whole-file read. Throws ErrorCode::Io with the path on failure.
std::string read_file(const std::filesystem::path& path);

/// Writes `content`, creating parent directories. Throws ErrorCode::Io.
void write_file(const std::filesystem::path& path, const std::string& content);

/// Parses a JSON document. Throws ErrorCode::Schema on malformed input.
Json parse_json(const std::string& text, const std::string& origin = "<input>");
Json read_json_file(const std::filesystem::path& path);

/// Two-space indented, sorted keys, trailing newline.
std::string dump_json(const Json& j);

/// Nearest double to x printed with 12 significant digits. Stable across
/// platforms, so rounded values serialize identically everywhere.
double round12(double x);

/// Checked field access; Schema errors name the missing or mistyped key.
const Json& require(const Json& obj, const char* key, const std::string& context);
double require_number(const Json& obj, const char* key, const std::string& context);
std::string require_string(const Json& obj, const char* key, const std::string& context);

} // namespace neusv::io
