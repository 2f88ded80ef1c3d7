#pragma once

#include <vector>

#include "macsel/context.hpp"

namespace macsel {

/// First-order two-regime radio: free-space d^2 below the crossover distance,
/// multi-path d^4 above it. Defaults are repo calibration.
struct RadioProfile {
    double e_elec = 50e-9;      // J/bit, electronics (tx baseline and rx)
    double amp_fs = 10e-12;     // J/bit/m^2
    double amp_mp = 0.0013e-12; // J/bit/m^4
    double p_idle = 0.02;       // W
    double e_on = 10e-6;        // J per wake transition
    double e_off = 10e-6;       // J per sleep transition

    /// sqrt(amp_fs / amp_mp); infinite when amp_mp == 0 (free-space everywhere).
    double crossover() const;
    double transition_energy() const { return e_on + e_off; }
    bool operator==(const RadioProfile&) const = default;
};

/// Energy to transmit one bit over distance d (J/bit). Requires d >= 0.
double tx_energy_per_bit(double d, const RadioProfile& prof);

/// Energy to receive one bit (J/bit).
double rx_energy_per_bit(const RadioProfile& prof);

std::vector<Violation> validate(const RadioProfile& prof);

}  // namespace macsel
