#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "macsel/desim/protocols.hpp"
#include "macsel/energy.hpp"

namespace macsel::desim {

/// Analytical context matched to a simulated deployment. PSA/SMAC: the disk
/// radius with the same area (same density). TSMP: the radius giving the
/// layout's mean degree as N'.
NetworkContext model_context(const SimConfig& cfg, Protocol p, const Topology* topo = nullptr);

struct ComparisonPoint {
    double pkt_rate = 0;
    EnergyBreakdown model_energy;
    double model_delay = 0;
    SimStats sim;
    double energy_divergence = 0;  // |model - sim| / sim
    double delay_divergence = 0;   // 0 when the run delivered nothing
};

struct DivergenceReport {
    Protocol protocol = Protocol::psa;
    std::vector<ComparisonPoint> points;
    double max_energy_divergence = 0;
    double max_delay_divergence = 0;
    bool all_converged = true;
};

/// Sweeps cfg.sweep_pkt_rates (or the context rate) and compares model and
/// simulation at every point.
DivergenceReport compare_model_sim(const SimConfig& cfg, Protocol p);

void write_stats_csv(std::ostream& os, const SimStats& s);
void write_report_csv(std::ostream& os, const DivergenceReport& r);

}  // namespace macsel::desim
