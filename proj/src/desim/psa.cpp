#include <algorithm>
#include <cmath>
#include <random>
#include <variant>

#include "macsel/desim/event_queue.hpp"
#include "macsel/desim/protocols.hpp"
#include "macsel/errors.hpp"
#include "traffic.hpp"

namespace macsel::desim {

namespace {

struct Arrival {};
struct Check {
    int node;
};
struct TxEnd {
    int tx;
};
struct Retry {
    int node;
};
using Ev = std::variant<Arrival, Check, TxEnd, Retry>;

struct Tx {
    int sender = -1;
    int dest = -1;
    double start = 0;
    double preamble_end = 0;
    double end = 0;
    bool failed = false;
    double lock_time = -1;  // when the destination locked on; < 0 if it never did
};

struct Node {
    double phase = 0;
    int sending = -1;   // tx index while transmitting
    int locked = -1;    // tx index being received
    bool ready = false;  // MAC packet due for transmission (not in a retry wait)
};

class PsaRun {
public:
    PsaRun(const SimConfig& cfg, std::uint64_t seed)
        : cfg_(cfg), ctx_(cfg.context), rng_(seed),
          pos_(deploy(ctx_.n_nodes, cfg.area, splitmix64(seed ^ 0x5053412d6c61796fULL))),
          topo_(build_topology(pos_, ctx_.tx_range, cfg.area, cfg.boundary)),
          traffic_(topo_, ctx_.pkt_rate, rng_), nodes_(static_cast<std::size_t>(ctx_.n_nodes)) {
        e_rcv_ = rx_energy_per_bit(cfg.profile);
        e_send_ = tx_energy_per_bit(ctx_.tx_range, cfg.profile);
        tx_time_ = (ctx_.psp.preamble_len + ctx_.msg_len) / ctx_.bandwidth;
    }

    RunResult run() {
        const double horizon = cfg_.sim_duration;
        const double interval = ctx_.psp.check_interval;
        std::uniform_real_distribution<double> u(0.0, interval);
        for (int n = 0; n < topo_.size(); ++n) {
            node(n).phase = u(rng_);
            q_.push(node(n).phase, Check{n});
        }
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
    Node& node(int n) { return nodes_[static_cast<std::size_t>(n)]; }

    bool hears(int listener, int sender) const { return listener == sender || topo_.adjacent(listener, sender); }

    void handle(const Arrival&) {
        const int n = traffic_.random_node();
        if (traffic_.arrive(n, now_) && !traffic_.mac(n)) try_start(n);
        q_.push(now_ + traffic_.next_gap(), Arrival{});
    }

    // Packet in the MAC buffer wants the radio; starts now unless a reception holds it.
    void try_start(int n) {
        if (node(n).sending >= 0) return;
        if (!traffic_.mac(n) && !traffic_.handoff(n, now_)) return;
        node(n).ready = true;
        if (node(n).locked < 0) start(n);
    }

    void start(int n) {
        node(n).ready = false;
        const auto& pkt = *traffic_.mac(n);
        Tx tx{n, pkt.dest, now_, now_ + ctx_.psp.preamble_len / ctx_.bandwidth, now_ + tx_time_, false, -1};
        const int id = static_cast<int>(txs_.size());
        // any overlap heard at the destination ruins the attempt, in both directions
        for (int other : active_) {
            Tx& o = txs_[static_cast<std::size_t>(other)];
            if (hears(tx.dest, o.sender)) tx.failed = true;
            if (hears(o.dest, n)) o.failed = true;
        }
        txs_.push_back(tx);
        active_.push_back(id);
        node(n).sending = id;
        q_.push(tx.end, TxEnd{id});
    }

    void handle(const Check& c) {
        const int n = c.node;
        q_.push(now_ + ctx_.psp.check_interval, Check{n});
        Node& me = node(n);
        if (me.sending >= 0 || me.locked >= 0) return;  // radio already on
        res_.energy.overhead += cfg_.profile.transition_energy();

        int lock = -1;
        bool busy = false;
        for (int id : active_) {
            const Tx& t = txs_[static_cast<std::size_t>(id)];
            if (!topo_.adjacent(n, t.sender)) continue;
            busy = true;
            if (t.dest == n && now_ < t.preamble_end && lock < 0) lock = id;
        }
        if (lock >= 0) {
            me.locked = lock;
            txs_[static_cast<std::size_t>(lock)].lock_time = now_;
        } else if (busy) {
            res_.energy.overhearing += ctx_.psp.check_dur * ctx_.bandwidth * e_rcv_;
            ++res_.overheard;
        } else {
            res_.energy.idle += cfg_.profile.p_idle * ctx_.psp.check_dur;
        }
    }

    void handle(const TxEnd& e) {
        const Tx t = txs_[static_cast<std::size_t>(e.tx)];  // copy: start() below may grow txs_
        active_.erase(std::find(active_.begin(), active_.end(), e.tx));
        node(t.sender).sending = -1;
        const bool locked = t.lock_time >= 0;
        const bool ok = !t.failed && locked;
        const double lp = ctx_.psp.preamble_len, lm = ctx_.msg_len;

        if (ok) {
            res_.energy.overhead += e_send_ * lp + e_rcv_ * (t.preamble_end - t.lock_time) * ctx_.bandwidth;
            res_.energy.payload += (e_send_ + e_rcv_) * lm;
            traffic_.deliver(t.sender, now_);
        } else {
            ++res_.collisions;
            res_.energy.collision += e_send_ * (lp + lm);
            if (locked) res_.energy.collision += e_rcv_ * (t.end - t.lock_time) * ctx_.bandwidth;
            auto& pkt = *traffic_.mac(t.sender);
            if (++pkt.attempts > cfg_.retry_limit) {
                traffic_.drop(t.sender);
            } else {
                // binary exponential retry window in transmission times
                std::uniform_real_distribution<double> u(0.0, tx_time_ * std::ldexp(1.0, std::min(pkt.attempts, 10)));
                q_.push(now_ + u(rng_), Retry{t.sender});
            }
        }
        if (locked && node(t.dest).locked == e.tx) {
            node(t.dest).locked = -1;
            if (node(t.dest).ready) start(t.dest);
        }
        if (!traffic_.mac(t.sender)) try_start(t.sender);
    }

    void handle(const Retry& r) {
        if (traffic_.mac(r.node)) try_start(r.node);
    }

    const SimConfig& cfg_;
    const NetworkContext& ctx_;
    std::mt19937_64 rng_;
    std::vector<Position> pos_;
    Topology topo_;
    detail::Traffic traffic_;
    std::vector<Node> nodes_;
    std::vector<Tx> txs_;
    std::vector<int> active_;
    EventQueue<Ev> q_;
    RunResult res_;
    double now_ = 0;
    double e_rcv_ = 0, e_send_ = 0, tx_time_ = 0;
};

}  // namespace

RunResult run_psa_once(const SimConfig& cfg, std::uint64_t seed) { return PsaRun(cfg, seed).run(); }

}  // namespace macsel::desim
