#include "macsel/desim/stats.hpp"

#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

namespace macsel::desim {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t rep) {
    return splitmix64(splitmix64(seed) ^ splitmix64(rep + 0x632be59bd9b4e019ULL));
}

double t_quantile(double confidence, int n) {
    if (n < 2) return std::numeric_limits<double>::infinity();
    boost::math::students_t dist(static_cast<double>(n - 1));
    return boost::math::quantile(dist, 0.5 + confidence / 2);
}

namespace {

Estimate estimate(const std::vector<double>& xs, double confidence) {
    const double n = static_cast<double>(xs.size());
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= n;
    if (xs.size() < 2) return {mean, std::numeric_limits<double>::infinity()};
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double s = std::sqrt(ss / (n - 1));
    return {mean, t_quantile(confidence, static_cast<int>(xs.size())) * s / std::sqrt(n)};
}

bool tight(const Estimate& e, double rel_error) {
    if (e.half_width == 0) return true;
    return e.mean != 0 && e.half_width / std::abs(e.mean) <= rel_error;
}

}  // namespace

SimStats replicate_until_confident(const Runner& runner, const SimConfig& cfg) {
    SimStats st;
    st.seed = cfg.seed;
    st.prng = kPrngId;

    std::vector<double> energy, delay;
    bool every_rep_delivered = true;
    double c = 0, o = 0, i = 0, h = 0, pay = 0;

    for (int rep = 0; rep < cfg.max_reps; ++rep) {
        const RunResult r = runner(cfg, derive_seed(cfg.seed, static_cast<std::uint64_t>(rep)));
        const double t = r.elapsed > 0 ? r.elapsed : 1;
        energy.push_back(r.energy_rate());
        if (r.delivered)
            delay.push_back(r.mean_delay());
        else
            every_rep_delivered = false;
        c += r.energy.collision / t;
        o += r.energy.overhearing / t;
        i += r.energy.idle / t;
        h += r.energy.overhead / t;
        pay += r.energy.payload / t;
        st.packets_generated += r.generated;
        st.packets_delivered += r.delivered;
        st.packets_dropped += r.dropped;
        st.packets_in_flight += r.in_flight;
        st.collisions += r.collisions;
        st.overheard += r.overheard;
        st.replications = rep + 1;

        if (st.replications < cfg.min_reps) continue;
        st.energy_per_second = estimate(energy, cfg.confidence);
        st.delay_tracked = every_rep_delivered && !delay.empty();
        st.delay = st.delay_tracked ? estimate(delay, cfg.confidence) : Estimate{};
        bool done = tight(st.energy_per_second, cfg.rel_error);
        if (st.delay_tracked) done = done && tight(st.delay, cfg.rel_error);
        if (done) {
            st.converged = true;
            break;
        }
    }
    if (st.replications < cfg.min_reps) {
        // max_reps below min_reps is rejected by validate(); keep the estimate defined anyway
        st.energy_per_second = estimate(energy, cfg.confidence);
        st.delay_tracked = every_rep_delivered && !delay.empty();
        if (st.delay_tracked) st.delay = estimate(delay, cfg.confidence);
    }
    const double n = static_cast<double>(st.replications);
    st.collision = c / n;
    st.overhearing = o / n;
    st.idle = i / n;
    st.overhead = h / n;
    st.payload = pay / n;
    st.total = st.collision + st.overhearing + st.idle + st.overhead;
    return st;
}

}  // namespace macsel::desim
