#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "macsel/desim/sim_config.hpp"

namespace macsel::desim {

/// Energy charged during one run [J], by cause. Payload bits (the data frame
/// itself at sender and destination) are tracked apart and not part of total().
struct EnergyTally {
    double collision = 0;
    double overhearing = 0;
    double idle = 0;
    double overhead = 0;
    double payload = 0;

    double total() const { return collision + overhearing + idle + overhead; }
    bool operator==(const EnergyTally&) const = default;
};

struct RunResult {
    EnergyTally energy;
    double elapsed = 0;          // simulated seconds
    double delay_sum = 0;        // over delivered packets [s]
    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped = 0;
    std::uint64_t in_flight = 0; // queued or in service at the horizon
    std::uint64_t collisions = 0;   // failed receptions
    std::uint64_t overheard = 0;    // frames received by a non-destination

    double energy_rate() const { return elapsed > 0 ? energy.total() / elapsed : 0; }
    double mean_delay() const { return delivered ? delay_sum / static_cast<double>(delivered) : 0; }
    bool operator==(const RunResult&) const = default;
};

struct Estimate {
    double mean = 0;
    double half_width = 0;
    bool operator==(const Estimate&) const = default;
};

struct SimStats {
    Estimate energy_per_second;   // [W]
    Estimate delay;               // [s]; zero when nothing was delivered
    bool delay_tracked = false;
    /// Mean per-cause rates [W]; total is their exact sum.
    double collision = 0;
    double overhearing = 0;
    double idle = 0;
    double overhead = 0;
    double total = 0;
    double payload = 0;
    int replications = 0;
    bool converged = false;       // false: max_reps reached before the CI target
    std::uint64_t packets_generated = 0;
    std::uint64_t packets_delivered = 0;
    std::uint64_t packets_dropped = 0;
    std::uint64_t packets_in_flight = 0;
    std::uint64_t collisions = 0;
    std::uint64_t overheard = 0;
    std::uint64_t seed = 0;
    std::string prng;

    bool operator==(const SimStats&) const = default;
};

inline constexpr const char* kPrngId = "mt19937_64/splitmix64-derived";

std::uint64_t splitmix64(std::uint64_t x);
/// Seed of replication `rep` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t rep);

/// Two-sided Student-t quantile for the given confidence and n-1 degrees of freedom.
double t_quantile(double confidence, int n);

using Runner = std::function<RunResult(const SimConfig&, std::uint64_t seed)>;

/// Replicates until every tracked metric (energy rate; mean delay when all
/// replications delivered packets) has half-width / |mean| <= rel_error, with
/// at least min_reps and at most max_reps runs.
SimStats replicate_until_confident(const Runner& runner, const SimConfig& cfg);

}  // namespace macsel::desim
