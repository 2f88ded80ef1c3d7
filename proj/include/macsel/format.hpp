#pragma once

#include <string>

namespace macsel {

/// Shortest representation that round-trips.
std::string format_exact(double x);

/// Six significant digits (%.6g).
std::string format_sig6(double x);

}  // namespace macsel
