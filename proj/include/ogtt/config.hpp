#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace ogtt {

// Parsed "key = value" lines. Blank lines and '#' comments are skipped;
// a repeated key is an InputError.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(const std::string& text);

// Reads a whole file; IoError if it cannot be opened.
std::string read_text_file(const std::string& path);

// Strict numeric conversions. The whole string must be consumed; `key` names
// the offending entry in the InputError message.
double parse_double(const std::string& value, const std::string& key);
std::int64_t parse_int(const std::string& value, const std::string& key);
std::uint64_t parse_uint(const std::string& value, const std::string& key);

// Shortest decimal that round-trips a double ("%.17g" trimmed).
std::string format_double(double value);

}  // namespace ogtt
