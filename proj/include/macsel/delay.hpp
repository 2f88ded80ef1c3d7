#pragma once

#include <string>

#include "macsel/context.hpp"

namespace macsel {

struct DelayEstimate {
    double seconds = 0;
    std::string category;
};

// One-hop MAC delay (handoff to delivery), single buffered packet, no queuing.

/// T_f / 2 + T_slot.
DelayEstimate scheduled_delay(const NetworkContext& ctx);

/// (1-dc)^2 / 2 + (L_rts / (1-p) + L_m) / B, with a 1 s duty-cycle period.
DelayEstimate cap_delay(const NetworkContext& ctx);
DelayEstimate cap_delay(const NetworkContext& ctx, double collision_p);

/// e^{2G'} (L_p + L_m) / B.
DelayEstimate psp_delay(const NetworkContext& ctx);

}  // namespace macsel
