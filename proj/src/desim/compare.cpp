#include "macsel/desim/compare.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "macsel/delay.hpp"
#include "macsel/format.hpp"

namespace macsel::desim {

NetworkContext model_context(const SimConfig& cfg, Protocol p, const Topology* topo) {
    NetworkContext ctx = cfg.context;
    if (p == Protocol::tsmp && topo && topo->mean_degree() > 0) {
        // N' = N d^2 / R^2 set to the simulated mean degree
        ctx.network_radius = ctx.tx_range * std::sqrt(ctx.n_nodes / topo->mean_degree());
    } else {
        ctx.network_radius = std::sqrt(cfg.area.size() / std::numbers::pi);
    }
    return ctx;
}

namespace {

double divergence(double model, double sim) {
    if (sim == 0) return model == 0 ? 0 : std::numeric_limits<double>::infinity();
    return std::abs(model - sim) / std::abs(sim);
}

}  // namespace

DivergenceReport compare_model_sim(const SimConfig& cfg, Protocol p) {
    DivergenceReport rep;
    rep.protocol = p;
    std::vector<double> rates = cfg.sweep_pkt_rates;
    if (rates.empty()) rates.push_back(cfg.context.pkt_rate);

    std::optional<TsmpSetup> setup;
    if (p == Protocol::tsmp) setup = tsmp_setup(cfg);

    for (double g : rates) {
        SimConfig c = cfg;
        c.context.pkt_rate = g;
        ComparisonPoint pt;
        pt.pkt_rate = g;
        NetworkContext m = model_context(c, p, setup ? &setup->topology : nullptr);
        switch (p) {
            case Protocol::psa:
                pt.sim = run_psa(c);
                pt.model_energy = psp_energy(m, c.profile);
                pt.model_delay = psp_delay(m).seconds;
                break;
            case Protocol::smac:
                pt.sim = run_smac(c);
                pt.model_energy = cap_energy(m, c.profile);
                pt.model_delay = cap_delay(m).seconds;
                break;
            case Protocol::tsmp:
                pt.sim = run_tsmp(c, *setup);
                pt.model_energy = scheduled_energy(m, c.profile);
                pt.model_delay = scheduled_delay(m).seconds;
                break;
        }
        pt.energy_divergence = divergence(pt.model_energy.total, pt.sim.energy_per_second.mean);
        pt.delay_divergence = pt.sim.delay_tracked ? divergence(pt.model_delay, pt.sim.delay.mean) : 0;
        rep.max_energy_divergence = std::max(rep.max_energy_divergence, pt.energy_divergence);
        rep.max_delay_divergence = std::max(rep.max_delay_divergence, pt.delay_divergence);
        rep.all_converged = rep.all_converged && pt.sim.converged;
        rep.points.push_back(std::move(pt));
    }
    return rep;
}

void write_stats_csv(std::ostream& os, const SimStats& s) {
    os << "energy_mean,energy_half_width,delay_mean,delay_half_width,collision,overhearing,idle,overhead,"
          "total,payload,replications,converged,generated,delivered,dropped,in_flight,collisions,overheard,"
          "seed,prng\n";
    os << format_exact(s.energy_per_second.mean) << ',' << format_exact(s.energy_per_second.half_width) << ','
       << (s.delay_tracked ? format_exact(s.delay.mean) : "") << ','
       << (s.delay_tracked ? format_exact(s.delay.half_width) : "") << ',' << format_exact(s.collision) << ','
       << format_exact(s.overhearing) << ',' << format_exact(s.idle) << ',' << format_exact(s.overhead) << ','
       << format_exact(s.total) << ',' << format_exact(s.payload) << ',' << s.replications << ','
       << (s.converged ? "true" : "false") << ',' << s.packets_generated << ',' << s.packets_delivered << ','
       << s.packets_dropped << ',' << s.packets_in_flight << ',' << s.collisions << ',' << s.overheard << ','
       << s.seed << ',' << s.prng << '\n';
}

void write_report_csv(std::ostream& os, const DivergenceReport& r) {
    os << "pkt_rate,model_energy,sim_energy,sim_energy_half_width,energy_divergence,model_delay,sim_delay,"
          "sim_delay_half_width,delay_divergence,replications,converged\n";
    for (const auto& p : r.points) {
        os << format_exact(p.pkt_rate) << ',' << format_exact(p.model_energy.total) << ','
           << format_exact(p.sim.energy_per_second.mean) << ',' << format_exact(p.sim.energy_per_second.half_width)
           << ',' << format_exact(p.energy_divergence) << ',' << format_exact(p.model_delay) << ','
           << (p.sim.delay_tracked ? format_exact(p.sim.delay.mean) : "") << ','
           << (p.sim.delay_tracked ? format_exact(p.sim.delay.half_width) : "") << ','
           << format_exact(p.delay_divergence) << ',' << p.sim.replications << ','
           << (p.sim.converged ? "true" : "false") << '\n';
    }
}

}  // namespace macsel::desim
