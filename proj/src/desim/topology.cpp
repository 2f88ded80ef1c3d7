#include "macsel/desim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "macsel/desim/stats.hpp"

namespace macsel::desim {

std::vector<Position> deploy(int n, const Area& area, std::uint64_t seed) {
    std::mt19937_64 rng(splitmix64(seed));
    std::uniform_real_distribution<double> ux(0.0, area.width), uy(0.0, area.height);
    std::vector<Position> pos(static_cast<std::size_t>(std::max(n, 0)));
    for (auto& p : pos) {
        p.x = ux(rng);
        p.y = uy(rng);
    }
    return pos;
}

std::vector<Position> deploy(const SimConfig& cfg) {
    return deploy(cfg.context.n_nodes, cfg.area, cfg.seed);
}

double distance(const Position& a, const Position& b, const Area& area, Boundary boundary) {
    double dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
    if (boundary == Boundary::torus) {
        dx = std::min(dx, area.width - dx);
        dy = std::min(dy, area.height - dy);
    }
    return std::hypot(dx, dy);
}

bool Topology::adjacent(int a, int b) const {
    const auto& nb = neighbors[static_cast<std::size_t>(a)];
    return std::binary_search(nb.begin(), nb.end(), b);
}

double Topology::mean_degree() const {
    if (neighbors.empty()) return 0;
    return static_cast<double>(directed_links()) / static_cast<double>(neighbors.size());
}

std::size_t Topology::directed_links() const {
    std::size_t n = 0;
    for (const auto& nb : neighbors) n += nb.size();
    return n;
}

bool Topology::connected() const {
    if (neighbors.empty()) return true;
    std::vector<bool> seen(neighbors.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : neighbors[static_cast<std::size_t>(u)])
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = true;
                ++count;
                stack.push_back(v);
            }
    }
    return count == neighbors.size();
}

Topology build_topology(const std::vector<Position>& pos, double range, const Area& area,
                        Boundary boundary) {
    Topology t;
    t.neighbors.resize(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = i + 1; j < pos.size(); ++j)
            if (distance(pos[i], pos[j], area, boundary) <= range) {
                t.neighbors[i].push_back(static_cast<int>(j));
                t.neighbors[j].push_back(static_cast<int>(i));
            }
    for (auto& nb : t.neighbors) std::sort(nb.begin(), nb.end());
    return t;
}

}  // namespace macsel::desim
