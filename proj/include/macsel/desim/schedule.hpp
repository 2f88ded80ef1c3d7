#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "macsel/desim/topology.hpp"

namespace macsel::desim {

struct Link {
    int sender = 0;
    int receiver = 0;
    auto operator<=>(const Link&) const = default;
};

/// Superframe of rows (frequencies) x cols (slots). A cell may carry several
/// links when they are outside each other's two-hop conflict range.
struct Schedule {
    int rows = 0;
    int cols = 0;
    std::map<std::pair<int, int>, std::vector<Link>> cells;  // (row, col) -> links

    std::size_t link_count() const;
    /// Cells (row, col) assigned to each link.
    std::map<Link, std::vector<std::pair<int, int>>> cells_by_link() const;
};

/// Links share a node, or an endpoint of one is adjacent to an endpoint of the other.
bool two_hop_conflict(const Topology& topo, const Link& a, const Link& b);

/// Greedy two-hop colouring, column by column. Throws Error(insufficient_cells)
/// if some directed link of the topology cannot be placed.
Schedule build_tsmp_schedule(const Topology& topo, int rows, int cols, std::uint64_t seed);
Schedule build_tsmp_schedule(const std::vector<Position>& pos, double tx_range, int rows, int cols,
                             std::uint64_t seed, const Area& area = {}, Boundary boundary = Boundary::plane);

/// Brute-force check over every pair of placements. Empty result means valid.
std::vector<std::string> verify_schedule(const Topology& topo, const Schedule& sched);

}  // namespace macsel::desim
