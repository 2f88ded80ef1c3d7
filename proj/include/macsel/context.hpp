#pragma once

#include <string>
#include <vector>

namespace macsel {

// Units at every boundary: seconds, meters, bits, joules, packets/second.

enum class ServiceRateMode {
    // mu = bandwidth value, lambda = G * dc (literal reading)
    bandwidth,
    // mu = B / (L_m + L_rts + L_cts + L_ack) packets/second
    packet_rate,
};

struct ScheduledParams {
    double frame_len = 0.15;     // T_f [s]
    double guard = 0.001;        // T_g [s]; idle-listen window is 2 * guard
    double slot_len = 0.005;     // T_slot [s]
    double sync_len = 160;       // L_Sync [bits]
    double ack_len = 160;        // L_Ack [bits]
    double sync_interval = 48;   // [s]

    double idle_window() const { return 2.0 * guard; }
    bool operator==(const ScheduledParams&) const = default;
};

struct CapParams {
    double duty_cycle = 0.05;    // fraction of the 1 s period that is active
    double rts_len = 160;        // [bits]
    double cts_len = 160;
    double ack_len = 160;
    double sync_len = 160;
    int cw_min = 32;             // [slots]
    int backoff_stages = 5;      // m: doublings until CW_max
    double sync_interval = 10;   // [s]
    ServiceRateMode service_rate_mode = ServiceRateMode::bandwidth;

    double control_len() const { return rts_len + cts_len + ack_len; }
    bool operator==(const CapParams&) const = default;
};

struct PspParams {
    double preamble_len = 10240;  // L_p [bits]
    double check_dur = 0.0015;    // T_Check [s]
    double check_interval = 0.04; // T_Interval [s]
    bool operator==(const PspParams&) const = default;
};

/// Network situation: everything the analytical models read.
///
/// Defaults are repo calibration (chosen so the rule-of-thumb orderings and
/// the two-scenario example reproduce), not ground-truth values.
struct NetworkContext {
    int n_nodes = 100;             // N
    double network_radius = 100;   // R [m]
    double tx_range = 20;          // d [m]
    double pkt_rate = 20;          // network-wide G [packets/s]
    double bandwidth = 256000;     // B [bits/s]
    double msg_len = 1024;         // L_m [bits]
    ScheduledParams sched;
    CapParams cap;
    PspParams psp;

    bool operator==(const NetworkContext&) const = default;
};

struct DerivedGeometry {
    double density = 0;    // nodes / m^2
    double neighbors = 0;  // expected neighbor count N' (fractional)
};

/// Uniform-disk deployment: density = N / (pi R^2), N' = density * pi d^2.
DerivedGeometry derive_geometry(const NetworkContext& ctx);

/// Fraction of the network area covered by one node's range, d^2 / R^2.
double coverage_ratio(const NetworkContext& ctx);

struct Violation {
    std::string field;
    std::string rule;
    bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate(const NetworkContext& ctx);

std::string describe(const std::vector<Violation>& violations);

}  // namespace macsel
