#pragma once

#include <cstdint>
#include <vector>

#include "macsel/context.hpp"
#include "macsel/radio.hpp"

namespace macsel::desim {

/// torus: distances wrap around the area edges (no border effects);
/// plane: plain Euclidean distances inside the rectangle.
enum class Boundary { torus, plane };

struct Area {
    double width = 100;   // [m]
    double height = 100;  // [m]
    double size() const { return width * height; }
    bool operator==(const Area&) const = default;
};

struct SimConfig {
    NetworkContext context;  // n_nodes, tx_range, pkt_rate (G), bandwidth, lengths, MAC params
    RadioProfile profile;
    Area area;
    Boundary boundary = Boundary::torus;
    std::uint64_t seed = 1;
    double sim_duration = 100;  // per replication [s]
    double confidence = 0.95;
    double rel_error = 0.05;
    int min_reps = 3;
    int max_reps = 30;

    int retry_limit = 7;        // attempts after the first before a packet is dropped
    double backoff_slot = 0;    // SMAC contention slot [s]; 0 selects (L_rts / B) / CW_min
    int sched_rows = 3;         // TSMP frequencies
    int sched_cols = 30;        // TSMP slots per superframe
    int placement_tries = 1000; // redeploys allowed while looking for a connected layout (TSMP)

    /// Packet rates used by model-vs-simulation sweeps; empty means the context rate only.
    std::vector<double> sweep_pkt_rates;

    double effective_backoff_slot() const {
        return backoff_slot > 0 ? backoff_slot
                                : context.cap.rts_len / context.bandwidth / context.cap.cw_min;
    }
    bool operator==(const SimConfig&) const = default;
};

/// Context checks (prefixed "context.") plus the simulation fields.
std::vector<Violation> validate(const SimConfig& cfg);

}  // namespace macsel::desim
