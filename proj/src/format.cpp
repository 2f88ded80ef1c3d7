#include "macsel/format.hpp"

#include <charconv>
#include <cstdio>

namespace macsel {

std::string format_exact(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

std::string format_sig6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace macsel
