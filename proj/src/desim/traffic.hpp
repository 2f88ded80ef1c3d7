#pragma once

// Shared pieces of the protocol runners: Poisson sources, the upper queue and
// the single-packet MAC buffer.

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <vector>

#include "macsel/desim/topology.hpp"

namespace macsel::desim::detail {

struct Packet {
    int dest = -1;
    double generated = 0;
    double handoff = 0;  // entered the MAC buffer
    int attempts = 0;
};

class Traffic {
public:
    Traffic(const Topology& topo, double network_rate, std::mt19937_64& rng)
        : topo_(topo), rng_(rng), queues_(static_cast<std::size_t>(topo.size())),
          mac_(static_cast<std::size_t>(topo.size())) {
        // superposition of per-node sources of rate G/N: network-wide rate G, node uniform
        active_ = network_rate > 0 && topo.size() > 0;
        if (active_) gap_ = std::exponential_distribution<double>(network_rate);
    }

    bool active() const { return active_; }
    double next_gap() { return gap_(rng_); }
    int random_node() {
        std::uniform_int_distribution<int> pick(0, topo_.size() - 1);
        return pick(rng_);
    }

    /// New packet at node n. Returns false (and counts a drop) when n has no neighbour.
    bool arrive(int n, double now) {
        ++generated;
        const auto& nb = topo_.neighbors[static_cast<std::size_t>(n)];
        if (nb.empty()) {
            ++dropped;
            return false;
        }
        std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
        queues_[static_cast<std::size_t>(n)].push_back({nb[pick(rng_)], now, 0, 0});
        return true;
    }

    /// Moves the head of the upper queue into an empty MAC buffer.
    bool handoff(int n, double now) {
        auto& m = mac_[static_cast<std::size_t>(n)];
        auto& q = queues_[static_cast<std::size_t>(n)];
        if (m || q.empty()) return false;
        m = q.front();
        q.pop_front();
        m->handoff = now;
        return true;
    }

    std::optional<Packet>& mac(int n) { return mac_[static_cast<std::size_t>(n)]; }

    void deliver(int n, double now) {
        ++delivered;
        delay_sum += now - mac_[static_cast<std::size_t>(n)]->handoff;
        mac_[static_cast<std::size_t>(n)].reset();
    }
    void drop(int n) {
        ++dropped;
        mac_[static_cast<std::size_t>(n)].reset();
    }

    std::uint64_t in_flight() const {
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < queues_.size(); ++i) k += queues_[i].size() + (mac_[i] ? 1 : 0);
        return k;
    }

    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped = 0;
    double delay_sum = 0;

private:
    const Topology& topo_;
    std::mt19937_64& rng_;
    std::exponential_distribution<double> gap_{1.0};
    bool active_ = false;
    std::vector<std::deque<Packet>> queues_;
    std::vector<std::optional<Packet>> mac_;
};

}  // namespace macsel::desim::detail
