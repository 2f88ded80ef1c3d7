#include "macsel/desim/schedule.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "macsel/desim/stats.hpp"
#include "macsel/errors.hpp"

namespace macsel::desim {

std::size_t Schedule::link_count() const {
    std::size_t n = 0;
    for (const auto& [cell, links] : cells) n += links.size();
    return n;
}

std::map<Link, std::vector<std::pair<int, int>>> Schedule::cells_by_link() const {
    std::map<Link, std::vector<std::pair<int, int>>> out;
    for (const auto& [cell, links] : cells)
        for (const auto& l : links) out[l].push_back(cell);
    return out;
}

bool two_hop_conflict(const Topology& topo, const Link& a, const Link& b) {
    const int ea[2] = {a.sender, a.receiver};
    const int eb[2] = {b.sender, b.receiver};
    for (int x : ea)
        for (int y : eb)
            if (x == y || topo.adjacent(x, y)) return true;
    return false;
}

namespace {

std::vector<Link> all_links(const Topology& topo) {
    std::vector<Link> links;
    for (int u = 0; u < topo.size(); ++u)
        for (int v : topo.neighbors[static_cast<std::size_t>(u)]) links.push_back({u, v});
    return links;
}

// One greedy pass; returns the number of links left unplaced.
std::size_t greedy_pass(const Topology& topo, const std::vector<Link>& links, int rows, int cols,
                        std::uint64_t seed, Schedule& out) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<double> key(links.size());
    for (auto& k : key) k = u01(rng);

    std::vector<int> incidence(static_cast<std::size_t>(topo.size()), 0);
    for (const auto& l : links) {
        ++incidence[static_cast<std::size_t>(l.sender)];
        ++incidence[static_cast<std::size_t>(l.receiver)];
    }
    std::vector<std::size_t> pending(links.size());
    for (std::size_t i = 0; i < links.size(); ++i) pending[i] = i;

    out = Schedule{rows, cols, {}};
    std::vector<bool> used(static_cast<std::size_t>(topo.size()));
    for (int c = 0; c < cols && !pending.empty(); ++c) {
        std::fill(used.begin(), used.end(), false);
        for (int r = 0; r < rows && !pending.empty(); ++r) {
            auto score = [&](std::size_t i) {
                return incidence[static_cast<std::size_t>(links[i].sender)] +
                       incidence[static_cast<std::size_t>(links[i].receiver)];
            };
            std::sort(pending.begin(), pending.end(), [&](std::size_t a, std::size_t b) {
                int sa = score(a), sb = score(b);
                if (sa != sb) return sa > sb;
                if (key[a] != key[b]) return key[a] < key[b];
                return a < b;
            });
            std::vector<Link> cell;
            std::vector<std::size_t> keep;
            keep.reserve(pending.size());
            for (std::size_t i : pending) {
                const Link& l = links[i];
                bool ok = !used[static_cast<std::size_t>(l.sender)] && !used[static_cast<std::size_t>(l.receiver)];
                for (std::size_t k = 0; ok && k < cell.size(); ++k) ok = !two_hop_conflict(topo, l, cell[k]);
                if (!ok) {
                    keep.push_back(i);
                    continue;
                }
                cell.push_back(l);
                used[static_cast<std::size_t>(l.sender)] = used[static_cast<std::size_t>(l.receiver)] = true;
                --incidence[static_cast<std::size_t>(l.sender)];
                --incidence[static_cast<std::size_t>(l.receiver)];
            }
            pending.swap(keep);
            if (!cell.empty()) out.cells[{r, c}] = std::move(cell);
        }
    }
    return pending.size();
}

constexpr int kScheduleAttempts = 64;

}  // namespace

Schedule build_tsmp_schedule(const Topology& topo, int rows, int cols, std::uint64_t seed) {
    if (rows < 1 || cols < 1) throw Error(ErrorCode::insufficient_cells, "schedule needs rows >= 1 and cols >= 1");
    const auto links = all_links(topo);
    Schedule best;
    std::size_t best_left = links.size() + 1;
    for (int attempt = 0; attempt < kScheduleAttempts; ++attempt) {
        Schedule s;
        auto left = greedy_pass(topo, links, rows, cols, derive_seed(seed, static_cast<std::uint64_t>(attempt)), s);
        if (left == 0) return s;
        best_left = std::min(best_left, left);
    }
    // a node joins at most one cell per slot, so its incident link count bounds the columns
    std::size_t max_incident = 0;
    for (int u = 0; u < topo.size(); ++u)
        max_incident = std::max(max_incident, 2 * topo.neighbors[static_cast<std::size_t>(u)].size());
    throw Error(ErrorCode::insufficient_cells,
                "cannot place " + std::to_string(links.size()) + " directed links in " + std::to_string(rows) +
                    "x" + std::to_string(cols) + " cells (" + std::to_string(best_left) +
                    " left over); at least " + std::to_string(max_incident) + " columns and " +
                    std::to_string((links.size() + static_cast<std::size_t>(rows) - 1) /
                                   static_cast<std::size_t>(rows)) +
                    " columns without spatial reuse are needed");
}

Schedule build_tsmp_schedule(const std::vector<Position>& pos, double tx_range, int rows, int cols,
                             std::uint64_t seed, const Area& area, Boundary boundary) {
    return build_tsmp_schedule(build_topology(pos, tx_range, area, boundary), rows, cols, seed);
}

std::vector<std::string> verify_schedule(const Topology& topo, const Schedule& sched) {
    std::vector<std::string> problems;
    struct Placement {
        int row, col;
        Link link;
    };
    std::vector<Placement> all;
    for (const auto& [cell, links] : sched.cells) {
        if (cell.first < 0 || cell.first >= sched.rows || cell.second < 0 || cell.second >= sched.cols)
            problems.push_back("cell (" + std::to_string(cell.first) + "," + std::to_string(cell.second) +
                               ") outside the superframe");
        for (const auto& l : links) all.push_back({cell.first, cell.second, l});
    }
    auto name = [](const Link& l) { return std::to_string(l.sender) + "->" + std::to_string(l.receiver); };
    for (const auto& p : all)
        if (p.link.sender < 0 || p.link.sender >= topo.size() || p.link.receiver < 0 ||
            p.link.receiver >= topo.size() || !topo.adjacent(p.link.sender, p.link.receiver))
            problems.push_back("link " + name(p.link) + " is not an edge of the topology");
    if (!problems.empty()) return problems;

    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const auto& a = all[i];
            const auto& b = all[j];
            if (a.col != b.col) continue;
            const bool share = a.link.sender == b.link.sender || a.link.sender == b.link.receiver ||
                               a.link.receiver == b.link.sender || a.link.receiver == b.link.receiver;
            if (share)
                problems.push_back("links " + name(a.link) + " and " + name(b.link) + " share a node in slot " +
                                   std::to_string(a.col));
            else if (a.row == b.row && two_hop_conflict(topo, a.link, b.link))
                problems.push_back("links " + name(a.link) + " and " + name(b.link) +
                                   " are within two hops in cell (" + std::to_string(a.row) + "," +
                                   std::to_string(a.col) + ")");
        }
    std::set<Link> placed;
    for (const auto& p : all) placed.insert(p.link);
    for (int u = 0; u < topo.size(); ++u)
        for (int v : topo.neighbors[static_cast<std::size_t>(u)])
            if (!placed.count({u, v})) problems.push_back("link " + name({u, v}) + " has no cell");
    return problems;
}

}  // namespace macsel::desim
