#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "macsel/desim/schedule.hpp"
#include "macsel/desim/stats.hpp"

namespace macsel::desim {

enum class Protocol { psa, smac, tsmp };

const char* to_string(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view name);
/// Category whose analytical model the protocol represents.
const char* category_of(Protocol p);

/// One replication of preamble sampling (low-power listening, no carrier sense).
RunResult run_psa_once(const SimConfig& cfg, std::uint64_t seed);
/// One replication of a single synchronised common-active-period cluster.
RunResult run_smac_once(const SimConfig& cfg, std::uint64_t seed);
/// One replication of the slotted multi-frequency superframe on a fixed layout.
RunResult run_tsmp_once(const SimConfig& cfg, const Topology& topo, const Schedule& sched,
                        std::uint64_t seed);

/// Connected layout for the scheduled protocol: redeploys with derived seeds
/// until the graph is connected. Throws Error(invalid_config) after placement_tries.
std::vector<Position> connected_layout(const SimConfig& cfg);

struct TsmpSetup {
    std::vector<Position> positions;
    Topology topology;
    Schedule schedule;
};
TsmpSetup tsmp_setup(const SimConfig& cfg);

SimStats run_psa(const SimConfig& cfg);
SimStats run_smac(const SimConfig& cfg);
SimStats run_tsmp(const SimConfig& cfg, const TsmpSetup& setup);
SimStats run_tsmp(const SimConfig& cfg);
SimStats run(Protocol p, const SimConfig& cfg);

}  // namespace macsel::desim
