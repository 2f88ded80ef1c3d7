#include "macsel/context.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "macsel/errors.hpp"

namespace macsel {

DerivedGeometry derive_geometry(const NetworkContext& ctx) {
    DerivedGeometry g;
    const double r = ctx.network_radius;
    const double d = ctx.tx_range;
    g.density = ctx.n_nodes / (std::numbers::pi * r * r);
    g.neighbors = g.density * std::numbers::pi * d * d;
    return g;
}

double coverage_ratio(const NetworkContext& ctx) {
    const double q = ctx.tx_range / ctx.network_radius;
    return q * q;
}

namespace {

void check(std::vector<Violation>& out, bool ok, const char* field, const char* rule) {
    if (!ok) out.push_back({field, rule});
}

}  // namespace

std::vector<Violation> validate(const NetworkContext& ctx) {
    std::vector<Violation> v;
    auto finite = [](double x) { return std::isfinite(x); };

    check(v, ctx.n_nodes >= 1, "n_nodes", "must be >= 1");
    check(v, finite(ctx.network_radius) && ctx.network_radius > 0, "network_radius", "must be > 0");
    check(v, finite(ctx.tx_range) && ctx.tx_range > 0, "tx_range", "must be > 0");
    check(v, finite(ctx.pkt_rate) && ctx.pkt_rate >= 0, "pkt_rate", "must be >= 0");
    check(v, finite(ctx.bandwidth) && ctx.bandwidth > 0, "bandwidth", "must be > 0");
    check(v, finite(ctx.msg_len) && ctx.msg_len > 0, "msg_len", "must be > 0");

    const auto& s = ctx.sched;
    check(v, finite(s.frame_len) && s.frame_len > 0, "sched.frame_len", "must be > 0");
    check(v, finite(s.slot_len) && s.slot_len > 0 && s.slot_len <= s.frame_len, "sched.slot_len",
          "must satisfy 0 < slot_len <= frame_len");
    check(v, finite(s.guard) && s.guard >= 0, "sched.guard", "must be >= 0");
    check(v, s.sync_len >= 0, "sched.sync_len", "must be >= 0");
    check(v, s.ack_len >= 0, "sched.ack_len", "must be >= 0");
    check(v, s.sync_interval > 0, "sched.sync_interval", "must be > 0");

    const auto& c = ctx.cap;
    check(v, finite(c.duty_cycle) && c.duty_cycle > 0 && c.duty_cycle <= 1, "cap.duty_cycle",
          "must be in (0, 1]");
    check(v, c.rts_len >= 0, "cap.rts_len", "must be >= 0");
    check(v, c.cts_len >= 0, "cap.cts_len", "must be >= 0");
    check(v, c.ack_len >= 0, "cap.ack_len", "must be >= 0");
    check(v, c.sync_len >= 0, "cap.sync_len", "must be >= 0");
    check(v, c.cw_min >= 2, "cap.cw_min", "must be >= 2");
    check(v, c.backoff_stages >= 0, "cap.backoff_stages", "must be >= 0");
    check(v, c.sync_interval > 0, "cap.sync_interval", "must be > 0");

    const auto& p = ctx.psp;
    check(v, p.preamble_len >= 0, "psp.preamble_len", "must be >= 0");
    check(v, finite(p.check_interval) && p.check_interval > 0 && p.check_dur > 0 &&
                 p.check_dur <= p.check_interval,
          "psp.check_dur", "must satisfy 0 < check_dur <= check_interval");
    if (ctx.bandwidth > 0 && p.check_interval > 0) {
        // relative slack so that L_p = T_Interval * B passes despite rounding
        check(v, p.preamble_len / ctx.bandwidth >= p.check_interval * (1 - 1e-12), "psp.preamble_len",
              "preamble duration (preamble_len / bandwidth) must be >= check_interval");
    }
    return v;
}

std::string describe(const std::vector<Violation>& violations) {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].field << ": " << violations[i].rule;
    }
    return os.str();
}

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::saturated: return "saturated";
        case ErrorCode::degenerate_cpf: return "degenerate CPF";
        case ErrorCode::domain: return "domain error";
        case ErrorCode::no_satisfying_category: return "no satisfying category";
        case ErrorCode::no_evaluable_category: return "no evaluable category";
        case ErrorCode::no_performance_model: return "no performance model";
        case ErrorCode::unknown_requirement: return "unknown requirement";
        case ErrorCode::duplicate: return "duplicate";
        case ErrorCode::unknown_category: return "unknown category";
        case ErrorCode::invalid_document: return "invalid document";
        case ErrorCode::insufficient_cells: return "insufficient cells";
        case ErrorCode::invalid_config: return "invalid configuration";
    }
    return "error";
}

}  // namespace macsel
