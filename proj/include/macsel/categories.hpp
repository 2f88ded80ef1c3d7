#pragma once

#include <array>
#include <string_view>

namespace macsel::category {

inline constexpr std::string_view scheduled = "ScP";
inline constexpr std::string_view common_active = "CAP";
inline constexpr std::string_view preamble_sampling = "PSP";

/// Built-in categories in tie-break order.
inline constexpr std::array<std::string_view, 3> builtin = {scheduled, common_active, preamble_sampling};

}  // namespace macsel::category
