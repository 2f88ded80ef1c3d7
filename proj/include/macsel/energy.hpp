#pragma once

#include <optional>

#include "macsel/context.hpp"
#include "macsel/radio.hpp"

namespace macsel {

/// Network-wide energy rates (W = J/s), split by cause.
struct EnergyBreakdown {
    double collision = 0;
    double overhearing = 0;
    double idle_listening = 0;
    double overhead = 0;
    double total = 0;

    static EnergyBreakdown of(double collision, double overhearing, double idle, double overhead) {
        return {collision, overhearing, idle, overhead, collision + overhearing + idle + overhead};
    }
    bool operator==(const EnergyBreakdown&) const = default;
};

struct CollisionSolution {
    double p = 0;
    double residual = 0;
    int iterations = 0;
};

/// Inputs of the CSMA/CA collision fixed point
///   p = 1 - (1 - load * (1-2p)/(1-p-p(2p)^m) * 2/CW_min)^(N-1).
struct CsmaInputs {
    double load = 0;  // lambda / mu
    int cw_min = 32;
    int stages = 5;   // m
    int n_nodes = 1;
};

inline constexpr double kCollisionTolerance = 1e-9;
inline constexpr double kDenominatorGuard = 1e-12;
inline constexpr double kBisectionUpper = 0.999999;

CsmaInputs csma_inputs(const NetworkContext& ctx);

/// Right-hand side of the fixed point; nullopt when the window denominator
/// drops below the guard (candidate p infeasible).
std::optional<double> collision_rhs(double p, const CsmaInputs& in);

/// Damped iteration p <- (1-g) p + g RHS(p) from p = 0. nullopt if it leaves
/// the feasible region or has not converged within max_steps.
std::optional<CollisionSolution> solve_collision_damped(const CsmaInputs& in, double damping = 0.5,
                                                        int max_steps = 10000);

/// Bisection on f(p) = p - RHS(p). Throws Error(saturated) without a root.
CollisionSolution solve_collision_bisection(const CsmaInputs& in);

/// Damped iteration with bisection fallback.
CollisionSolution solve_collision(const CsmaInputs& in);
CollisionSolution csma_collision_probability(const NetworkContext& ctx);

/// 1 / (1 - p); throws Error(domain) unless 0 <= p < 1.
double expected_attempts_csma(double p);

/// G' = (G d^2 / R^2) (L_p + L_m) / B.
double psa_offered_load(const NetworkContext& ctx);

/// e^{2 G'}.
double expected_attempts_psa(double g_prime);

/// max(0, N' - 1): neighbours other than the destination.
double overhearing_neighbors(const NetworkContext& ctx);
/// True when N' < 1 and the overhearer count had to be clamped.
bool sparse_neighborhood(const NetworkContext& ctx);

// The model functions evaluate formulas only; callers validate the context.
EnergyBreakdown scheduled_energy(const NetworkContext& ctx, const RadioProfile& prof);
EnergyBreakdown cap_energy(const NetworkContext& ctx, const RadioProfile& prof);
EnergyBreakdown cap_energy(const NetworkContext& ctx, const RadioProfile& prof, double collision_p);
EnergyBreakdown psp_energy(const NetworkContext& ctx, const RadioProfile& prof);

/// Individual overhead terms of the scheduled model.
struct ScheduledOverhead {
    double timing_error = 0;  // P_idle G 3T_g/2
    double sync = 0;          // 2 N N' (E_rcv + E_send) L_Sync / sync_interval
    double ack = 0;           // G L_Ack (E_rcv + E_send)
    double duty_cycling = 0;  // 2 N N' (E_on + E_off)
    double sum() const { return timing_error + sync + ack + duty_cycling; }
};
ScheduledOverhead scheduled_overhead(const NetworkContext& ctx, const RadioProfile& prof);

}  // namespace macsel
