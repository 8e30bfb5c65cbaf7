#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fairmax {

// Shortest decimal form that round-trips a double exactly.
std::string fmt_double(double v);

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);

std::string read_file(const std::string& path);            // throws DataError
void write_file(const std::string& path, const std::string& content);

// "key = value" lines, '#' starts a comment, blank lines ignored.
// Returns entries in file order; duplicate keys keep the last value.
std::vector<std::pair<std::string, std::string>> parse_kv_text(const std::string& text,
                                                               const std::string& origin);
std::vector<std::pair<std::string, std::string>> parse_kv_file(const std::string& path);

bool parse_double(const std::string& s, double& out);
bool parse_u64(const std::string& s, std::uint64_t& out);
bool parse_bool(const std::string& s, bool& out);

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t h = 1469598103934665603ull);
std::string to_hex(std::uint64_t v);

}  // namespace fairmax
