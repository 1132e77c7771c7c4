#ifndef REFSCORE_UTIL_HPP
#define REFSCORE_UTIL_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace refscore {

inline constexpr const char* kToolVersion = "0.1.0";

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// Shortest round-trip decimal representation; stable across runs.
std::string format_double(double v);

std::string read_file(const std::filesystem::path& path);

// Write-temp-then-rename so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

std::string now_iso8601_utc();

// splitmix64; used to derive per-call mock seeds from string keys.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t hash64(std::uint64_t seed, std::string_view data);

} // namespace refscore

#endif
