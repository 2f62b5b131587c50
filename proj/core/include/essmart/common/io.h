#ifndef ESSMART_COMMON_IO_H_
#define ESSMART_COMMON_IO_H_

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace essmart {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Reads a UTF-8 list file: one entry per line, '#' starts a comment, blank
// lines ignored, surrounding whitespace trimmed.
std::vector<std::string> read_list_file(const std::filesystem::path& path);
std::vector<std::string> parse_list(std::string_view contents);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

}  // namespace essmart

#endif  // ESSMART_COMMON_IO_H_
