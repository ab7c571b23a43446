#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace lpflow {

/// Scientific notation with 17 significant digits: every finite double
/// round-trips exactly through format_double/parse_double, which is what
/// makes manifests, snapshots and time series byte-reproducible.
std::string format_double(double x);

/// Strict double parse (whole token must be consumed); throws
/// std::invalid_argument otherwise.
double parse_double(std::string_view token);

std::int64_t parse_int(std::string_view token);
std::uint64_t parse_uint(std::string_view token);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace lpflow
