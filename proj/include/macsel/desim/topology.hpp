#pragma once

#include <cstdint>
#include <vector>

#include "macsel/desim/sim_config.hpp"

namespace macsel::desim {

struct Position {
    double x = 0;
    double y = 0;
    bool operator==(const Position&) const = default;
};

/// n positions uniform over the area; deterministic in seed.
std::vector<Position> deploy(int n, const Area& area, std::uint64_t seed);
std::vector<Position> deploy(const SimConfig& cfg);

double distance(const Position& a, const Position& b, const Area& area, Boundary boundary);

/// Undirected unit-disk graph: i and j are neighbours iff distance <= range.
struct Topology {
    std::vector<std::vector<int>> neighbors;  // sorted ascending

    int size() const { return static_cast<int>(neighbors.size()); }
    bool adjacent(int a, int b) const;
    double mean_degree() const;
    bool connected() const;
    std::size_t directed_links() const;
};

Topology build_topology(const std::vector<Position>& pos, double range, const Area& area,
                        Boundary boundary);

}  // namespace macsel::desim
