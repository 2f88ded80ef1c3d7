#include <random>
#include <variant>

#include "macsel/desim/event_queue.hpp"
#include "macsel/desim/protocols.hpp"
#include "traffic.hpp"

namespace macsel::desim {

namespace {

struct Arrival {};
struct Slot {
    long long index;
};
struct Deliver {
    int node;
};
struct Sync {
    Link link;
};
using Ev = std::variant<Arrival, Slot, Deliver, Sync>;

class TsmpRun {
public:
    TsmpRun(const SimConfig& cfg, const Topology& topo, const Schedule& sched, std::uint64_t seed)
        : cfg_(cfg), ctx_(cfg.context), topo_(topo), sched_(sched), rng_(seed), traffic_(topo_, ctx_.pkt_rate, rng_) {
        e_rcv_ = rx_energy_per_bit(cfg.profile);
        e_send_ = tx_energy_per_bit(ctx_.tx_range, cfg.profile);
        slot_ = ctx_.sched.slot_len;
        columns_.resize(static_cast<std::size_t>(sched.cols));
        for (const auto& [cell, links] : sched.cells) columns_[static_cast<std::size_t>(cell.second)].push_back(links);
        busy_.assign(static_cast<std::size_t>(topo.size()), false);
    }

    RunResult run() {
        const double horizon = cfg_.sim_duration;
        q_.push(0.0, Slot{0});
        std::uniform_real_distribution<double> offset(0.0, ctx_.sched.sync_interval);
        for (const auto& [link, cells] : sched_.cells_by_link()) q_.push(offset(rng_), Sync{link});
        if (traffic_.active()) q_.push(traffic_.next_gap(), Arrival{});

        while (!q_.empty() && q_.top().time < horizon) {
            auto ev = q_.pop();
            now_ = ev.time;
            std::visit([this](auto& e) { handle(e); }, ev.payload);
        }
        res_.elapsed = horizon;
        res_.generated = traffic_.generated;
        res_.delivered = traffic_.delivered;
        res_.dropped = traffic_.dropped;
        res_.delay_sum = traffic_.delay_sum;
        res_.in_flight = traffic_.in_flight();
        return res_;
    }

private:
    void handle(const Arrival&) {
        const int n = traffic_.random_node();
        if (traffic_.arrive(n, now_) && !busy_[static_cast<std::size_t>(n)]) traffic_.handoff(n, now_);
        q_.push(now_ + traffic_.next_gap(), Arrival{});
    }

    void handle(const Sync& s) {
        // one sync frame each way on the link
        res_.energy.overhead += 2 * ctx_.sched.sync_len * (e_send_ + e_rcv_);
        q_.push(now_ + ctx_.sched.sync_interval, Sync{s.link});
    }

    void handle(const Slot& s) {
        const auto col = static_cast<std::size_t>(s.index % sched_.cols);
        const double end = static_cast<double>(s.index + 1) * slot_;
        const double tg = ctx_.sched.guard;
        const auto& prof = cfg_.profile;
        std::uniform_real_distribution<double> skew(0.0, tg);

        for (const auto& cell : columns_[col]) {
            std::vector<const Link*> sending;
            for (const auto& l : cell) {
                const auto& pkt = traffic_.mac(l.sender);
                if (pkt && pkt->dest == l.receiver && !busy_[static_cast<std::size_t>(l.sender)]) sending.push_back(&l);
            }
            for (const auto& l : cell) {
                res_.energy.overhead += prof.transition_energy();  // receiver wakes for its cell
                bool tx = false;
                for (const Link* p : sending) tx = tx || p == &l;
                if (!tx) {
                    res_.energy.idle += prof.p_idle * 2 * tg;
                    continue;
                }
                res_.energy.overhead += prof.transition_energy();  // sender wakes
                bool clean = true;
                for (const Link* p : sending)
                    if (p != &l && (p->sender == l.receiver || topo_.adjacent(p->sender, l.receiver))) clean = false;
                if (!clean) {
                    ++res_.collisions;
                    res_.energy.collision += ctx_.msg_len * (e_send_ + e_rcv_);
                    continue;
                }
                // receiver listens from T_g early until the skewed start
                res_.energy.overhead += prof.p_idle * (tg + skew(rng_));
                res_.energy.overhead += ctx_.sched.ack_len * (e_send_ + e_rcv_);
                res_.energy.payload += ctx_.msg_len * (e_send_ + e_rcv_);
                busy_[static_cast<std::size_t>(l.sender)] = true;
                q_.push(end, Deliver{l.sender});
            }
        }
        q_.push(end, Slot{s.index + 1});
    }

    void handle(const Deliver& d) {
        busy_[static_cast<std::size_t>(d.node)] = false;
        traffic_.deliver(d.node, now_);
        traffic_.handoff(d.node, now_);
    }

    const SimConfig& cfg_;
    const NetworkContext& ctx_;
    const Topology& topo_;
    const Schedule& sched_;
    std::mt19937_64 rng_;
    detail::Traffic traffic_;
    std::vector<std::vector<std::vector<Link>>> columns_;  // col -> cells -> links
    std::vector<bool> busy_;  // MAC packet in the air this slot
    EventQueue<Ev> q_;
    RunResult res_;
    double now_ = 0;
    double e_rcv_ = 0, e_send_ = 0, slot_ = 0;
};

}  // namespace

RunResult run_tsmp_once(const SimConfig& cfg, const Topology& topo, const Schedule& sched, std::uint64_t seed) {
    return TsmpRun(cfg, topo, sched, seed).run();
}

}  // namespace macsel::desim
