#include "macsel/energy.hpp"

#include <algorithm>
#include <cmath>

#include "macsel/errors.hpp"

namespace macsel {

CsmaInputs csma_inputs(const NetworkContext& ctx) {
    const auto& cap = ctx.cap;
    const double lambda = ctx.pkt_rate * cap.duty_cycle;
    double mu = ctx.bandwidth;
    if (cap.service_rate_mode == ServiceRateMode::packet_rate)
        mu = ctx.bandwidth / (ctx.msg_len + cap.control_len());
    return {lambda / mu, cap.cw_min, cap.backoff_stages, ctx.n_nodes};
}

std::optional<double> collision_rhs(double p, const CsmaInputs& in) {
    const double den = 1.0 - p - p * std::pow(2.0 * p, in.stages);
    if (den < kDenominatorGuard) return std::nullopt;
    const double window = (1.0 - 2.0 * p) / den;
    const double base = std::max(0.0, 1.0 - in.load * window * 2.0 / in.cw_min);
    return 1.0 - std::pow(base, in.n_nodes - 1);
}

namespace {

bool trivially_zero(const CsmaInputs& in) { return in.n_nodes <= 1 || in.load == 0; }

// Largest p in [0, kBisectionUpper] whose window denominator clears the guard.
double feasible_upper(const CsmaInputs& in) {
    auto den = [&](double p) { return 1.0 - p - p * std::pow(2.0 * p, in.stages); };
    if (den(kBisectionUpper) >= kDenominatorGuard) return kBisectionUpper;
    double lo = 0, hi = kBisectionUpper;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        (den(mid) >= kDenominatorGuard ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

std::optional<CollisionSolution> solve_collision_damped(const CsmaInputs& in, double damping,
                                                        int max_steps) {
    if (trivially_zero(in)) return CollisionSolution{0.0, 0.0, 0};
    double p = 0;
    for (int k = 1; k <= max_steps; ++k) {
        auto rhs = collision_rhs(p, in);
        if (!rhs) return std::nullopt;
        const double next = (1.0 - damping) * p + damping * *rhs;
        if (next >= 1.0) return std::nullopt;
        p = next;
        auto r = collision_rhs(p, in);
        if (!r) return std::nullopt;
        const double residual = p - *r;
        if (std::abs(residual) <= 1e-14) return CollisionSolution{p, residual, k};
        if (k == max_steps && std::abs(residual) <= kCollisionTolerance)
            return CollisionSolution{p, residual, k};
    }
    return std::nullopt;
}

CollisionSolution solve_collision_bisection(const CsmaInputs& in) {
    if (trivially_zero(in)) return {0.0, 0.0, 0};
    auto f = [&](double p) { return p - *collision_rhs(p, in); };
    double lo = 0;
    double hi = feasible_upper(in);
    if (f(hi) < 0)
        throw Error(ErrorCode::saturated,
                    "saturated: collision fixed point has no root below the feasibility bound");
    int it = 0;
    while (hi - lo > 1e-16 && it < 200) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) <= 0 ? lo : hi) = mid;
        ++it;
    }
    // pick the endpoint with the smaller residual
    const double p = std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
    return {p, f(p), it};
}

CollisionSolution solve_collision(const CsmaInputs& in) {
    if (auto s = solve_collision_damped(in)) return *s;
    auto s = solve_collision_bisection(in);
    if (std::abs(s.residual) > kCollisionTolerance)
        throw Error(ErrorCode::saturated, "saturated: collision fixed point did not converge");
    return s;
}

CollisionSolution csma_collision_probability(const NetworkContext& ctx) {
    return solve_collision(csma_inputs(ctx));
}

double expected_attempts_csma(double p) {
    if (!(p >= 0 && p < 1)) throw Error(ErrorCode::domain, "expected_attempts_csma: p must be in [0, 1)");
    return 1.0 / (1.0 - p);
}

double psa_offered_load(const NetworkContext& ctx) {
    return ctx.pkt_rate * coverage_ratio(ctx) * (ctx.psp.preamble_len + ctx.msg_len) / ctx.bandwidth;
}

double expected_attempts_psa(double g_prime) {
    if (!(g_prime >= 0)) throw Error(ErrorCode::domain, "expected_attempts_psa: G' must be >= 0");
    return std::exp(2.0 * g_prime);
}

double overhearing_neighbors(const NetworkContext& ctx) {
    return std::max(0.0, derive_geometry(ctx).neighbors - 1.0);
}

bool sparse_neighborhood(const NetworkContext& ctx) { return derive_geometry(ctx).neighbors < 1.0; }

ScheduledOverhead scheduled_overhead(const NetworkContext& ctx, const RadioProfile& prof) {
    const auto& s = ctx.sched;
    const double links = ctx.n_nodes * derive_geometry(ctx).neighbors;
    const double link_bit = rx_energy_per_bit(prof) + tx_energy_per_bit(ctx.tx_range, prof);
    ScheduledOverhead o;
    o.timing_error = prof.p_idle * ctx.pkt_rate * 1.5 * s.guard;
    o.sync = 2.0 * links * link_bit * s.sync_len / s.sync_interval;
    o.ack = ctx.pkt_rate * s.ack_len * link_bit;
    o.duty_cycling = 2.0 * links * prof.transition_energy();
    return o;
}

EnergyBreakdown scheduled_energy(const NetworkContext& ctx, const RadioProfile& prof) {
    const auto& s = ctx.sched;
    const double links = ctx.n_nodes * derive_geometry(ctx).neighbors;
    // probability that a cell carries a packet
    const double occupancy = links > 0 ? std::min(1.0, ctx.pkt_rate * s.frame_len / links) : 1.0;
    const double idle = prof.p_idle * links * (1.0 - occupancy) * s.idle_window() / s.frame_len;
    return EnergyBreakdown::of(0.0, 0.0, idle, scheduled_overhead(ctx, prof).sum());
}

EnergyBreakdown cap_energy(const NetworkContext& ctx, const RadioProfile& prof, double collision_p) {
    const auto& c = ctx.cap;
    const double G = ctx.pkt_rate;
    const double rx = rx_energy_per_bit(prof);
    const double tx = tx_energy_per_bit(ctx.tx_range, prof);
    const double others = overhearing_neighbors(ctx);
    const double heard_by_range = others * rx + tx;

    const double collision =
        G * c.rts_len * heard_by_range * (expected_attempts_csma(collision_p) - 1.0) * c.duty_cycle;
    const double overhearing = ctx.msg_len * rx * others * G;
    const double exchange_time = (ctx.msg_len + c.control_len()) / ctx.bandwidth;
    const double idle = ctx.n_nodes * prof.p_idle *
                        std::max(0.0, c.duty_cycle - exchange_time * G * coverage_ratio(ctx));
    const double overhead = G * c.control_len() * heard_by_range +
                            ctx.n_nodes * (c.sync_len / c.sync_interval * heard_by_range +
                                           prof.transition_energy());
    return EnergyBreakdown::of(collision, overhearing, idle, overhead);
}

EnergyBreakdown cap_energy(const NetworkContext& ctx, const RadioProfile& prof) {
    return cap_energy(ctx, prof, csma_collision_probability(ctx).p);
}

EnergyBreakdown psp_energy(const NetworkContext& ctx, const RadioProfile& prof) {
    const auto& p = ctx.psp;
    const double G = ctx.pkt_rate;
    const double rx = rx_energy_per_bit(prof);
    const double tx = tx_energy_per_bit(ctx.tx_range, prof);
    const double Lp = p.preamble_len;
    const double Lm = ctx.msg_len;

    const double collisions_per_msg = expected_attempts_psa(psa_offered_load(ctx)) - 1.0;
    const double collision = collisions_per_msg * (rx * (Lp / 2 + Lm) + tx * (Lp + Lm));
    const double overhearing = p.check_dur * ctx.bandwidth * rx * overhearing_neighbors(ctx) * G;
    const double idle = ctx.n_nodes * prof.p_idle * p.check_dur *
                        std::max(0.0, 1.0 / p.check_interval - G * coverage_ratio(ctx));
    const double overhead =
        G * (rx * Lp / 2 + tx * Lp) + ctx.n_nodes / p.check_interval * prof.transition_energy();
    return EnergyBreakdown::of(collision, overhearing, idle, overhead);
}

}  // namespace macsel
