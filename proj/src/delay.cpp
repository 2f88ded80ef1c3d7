#include "macsel/delay.hpp"

#include "macsel/categories.hpp"
#include "macsel/energy.hpp"

namespace macsel {

DelayEstimate scheduled_delay(const NetworkContext& ctx) {
    return {ctx.sched.frame_len / 2 + ctx.sched.slot_len, std::string(category::scheduled)};
}

DelayEstimate cap_delay(const NetworkContext& ctx, double collision_p) {
    const double sleep = 1.0 - ctx.cap.duty_cycle;
    const double wait = sleep * sleep / 2;
    const double tx = (ctx.cap.rts_len * expected_attempts_csma(collision_p) + ctx.msg_len) / ctx.bandwidth;
    return {wait + tx, std::string(category::common_active)};
}

DelayEstimate cap_delay(const NetworkContext& ctx) {
    return cap_delay(ctx, csma_collision_probability(ctx).p);
}

DelayEstimate psp_delay(const NetworkContext& ctx) {
    const double attempts = expected_attempts_psa(psa_offered_load(ctx));
    return {attempts * (ctx.psp.preamble_len + ctx.msg_len) / ctx.bandwidth,
            std::string(category::preamble_sampling)};
}

}  // namespace macsel
