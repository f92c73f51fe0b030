#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Text encoding helpers shared by every file format in the toolkit.
namespace tocq::numfmt {

// Shortest decimal that parses back to exactly `x`.
std::string shortest(double x);

// Fixed 17 significant digits; also round-trips exactly.
std::string sig17(double x);

double parse_double(std::string_view s);
long long parse_int(std::string_view s);

std::string join(std::span<const double> xs, char sep = ',');
std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);
std::uint64_t parse_hex64(std::string_view s);

}  // namespace tocq::numfmt
