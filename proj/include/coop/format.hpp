#ifndef COOP_FORMAT_HPP
#define COOP_FORMAT_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace coop {

/// Shortest round-trip decimal form; independent of the global locale.
inline std::string fmt(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    if (res.ec != std::errc{}) return "nan";
    return std::string(buf, res.ptr);
}

/// Fixed-point with `digits` decimals, for human-facing tables.
inline std::string fixed(double x, int digits)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, digits);
    if (res.ec != std::errc{}) return "nan";
    return std::string(buf, res.ptr);
}

}  // namespace coop

#endif  // COOP_FORMAT_HPP
