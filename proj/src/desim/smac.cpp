#include <algorithm>
#include <cmath>
#include <random>
#include <variant>

#include "macsel/desim/event_queue.hpp"
#include "macsel/desim/protocols.hpp"
#include "traffic.hpp"

namespace macsel::desim {

namespace {

// Duty-cycle period of the common schedule [s].
constexpr double kPeriod = 1.0;

struct Arrival {};
struct WindowStart {};
struct WindowEnd {};
struct Fire {
    int node;
    std::uint64_t gen;
};
struct Resume {
    int node;
};
struct RtsEnd {
    int ex;
};
struct ExchangeEnd {
    int ex;
};
struct Sync {
    int node;
};
using Ev = std::variant<Arrival, WindowStart, WindowEnd, Fire, Resume, RtsEnd, ExchangeEnd, Sync>;

struct Exchange {
    int sender = -1;
    int dest = -1;
    double start = 0;
    bool failed = false;
};

struct Node {
    // contention
    bool contending = false;  // MAC packet waiting for channel access
    bool frozen = true;       // countdown suspended (busy medium or sleep)
    int remaining = 0;        // back-off slots still to count
    long long fire_slot = -1;
    std::uint64_t gen = 0;
    int stage = 0;
    bool attempting = false;  // own RTS or exchange in progress

    // carrier sense: medium busy until busy_until; a busy period that begins
    // in the current instant is not yet sensed (same-slot starts collide)
    double busy_until = 0;
    double stamp = -1;
    double prior_busy_until = 0;

    std::vector<std::pair<double, double>> activity;  // radio busy intervals in this window
};

class SmacRun {
public:
    SmacRun(const SimConfig& cfg, std::uint64_t seed)
        : cfg_(cfg), ctx_(cfg.context), rng_(seed),
          pos_(deploy(ctx_.n_nodes, cfg.area, splitmix64(seed ^ 0x534d41432d6c6179ULL))),
          topo_(build_topology(pos_, ctx_.tx_range, cfg.area, cfg.boundary)),
          traffic_(topo_, ctx_.pkt_rate, rng_), nodes_(static_cast<std::size_t>(ctx_.n_nodes)) {
        e_rcv_ = rx_energy_per_bit(cfg.profile);
        e_send_ = tx_energy_per_bit(ctx_.tx_range, cfg.profile);
        const double b = ctx_.bandwidth;
        t_rts_ = ctx_.cap.rts_len / b;
        t_cts_ = ctx_.cap.cts_len / b;
        t_data_ = ctx_.msg_len / b;
        t_ack_ = ctx_.cap.ack_len / b;
        t_exchange_ = t_rts_ + t_cts_ + t_data_ + t_ack_;
        sigma_ = cfg.effective_backoff_slot();
        active_ = ctx_.cap.duty_cycle * kPeriod;
    }

    RunResult run() {
        const double horizon = cfg_.sim_duration;
        for (double k = 0; k < horizon; k += kPeriod) {
            q_.push(k, WindowStart{});
            q_.push(std::min(k + active_, horizon), WindowEnd{});
        }
        std::uniform_real_distribution<double> offset(0.0, ctx_.cap.sync_interval);
        for (int n = 0; n < topo_.size(); ++n) q_.push(offset(rng_), Sync{n});
        if (traffic_.active()) q_.push(traffic_.next_gap(), Arrival{});

        while (!q_.empty() && q_.top().time <= horizon) {
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
    const std::vector<int>& nbrs(int n) const { return topo_.neighbors[static_cast<std::size_t>(n)]; }

    int window_size(int stage) const {
        return ctx_.cap.cw_min << std::min(stage, ctx_.cap.backoff_stages);
    }
    int draw_backoff(int stage) {
        std::uniform_int_distribution<int> u(1, window_size(stage));
        return u(rng_);
    }
    long long slot_ceil(double t) const { return static_cast<long long>(std::ceil(t / sigma_ - 1e-9)); }
    long long slot_floor(double t) const { return static_cast<long long>(std::floor(t / sigma_ + 1e-9)); }

    bool awake() const { return now_ - std::floor(now_ / kPeriod) * kPeriod < active_; }
    double window_end() const { return std::floor(now_ / kPeriod) * kPeriod + active_; }

    bool sensed_busy(int n) {
        const Node& m = node(n);
        const double until = m.stamp == now_ ? m.prior_busy_until : m.busy_until;
        return until > now_;
    }

    void freeze(int n) {
        Node& m = node(n);
        if (!m.contending || m.frozen) return;
        m.remaining = std::max(1, static_cast<int>(m.fire_slot - slot_floor(now_)));
        m.frozen = true;
        ++m.gen;
    }

    void schedule_fire(int n) {
        Node& m = node(n);
        m.frozen = false;
        m.fire_slot = slot_ceil(now_) + m.remaining;
        ++m.gen;
        q_.push(static_cast<double>(m.fire_slot) * sigma_, Fire{n, m.gen});
    }

    void set_busy(int n, double until) {
        Node& m = node(n);
        if (until <= m.busy_until) return;
        if (m.stamp != now_) {
            m.stamp = now_;
            m.prior_busy_until = m.busy_until;
        }
        m.busy_until = until;
        // a fire due in this very slot goes ahead: the node cannot sense it in time
        if (m.contending && !m.frozen && static_cast<double>(m.fire_slot) * sigma_ > now_) freeze(n);
        q_.push(until, Resume{n});
    }

    void try_contend(int n) {
        Node& m = node(n);
        if (m.contending || m.attempting) return;
        if (!traffic_.mac(n) && !traffic_.handoff(n, now_)) return;
        m.contending = true;
        m.frozen = true;
        m.remaining = draw_backoff(m.stage);
        if (awake() && !sensed_busy(n)) schedule_fire(n);
    }

    // --- events ---------------------------------------------------------

    void handle(const Arrival&) {
        const int n = traffic_.random_node();
        if (traffic_.arrive(n, now_)) try_contend(n);
        q_.push(now_ + traffic_.next_gap(), Arrival{});
    }

    void handle(const WindowStart&) {
        for (int n = 0; n < topo_.size(); ++n) {
            node(n).activity.clear();
            if (node(n).contending && node(n).frozen && !sensed_busy(n)) schedule_fire(n);
        }
    }

    void handle(const WindowEnd&) {
        const double start = std::floor(now_ / kPeriod) * kPeriod;
        for (int n = 0; n < topo_.size(); ++n) {
            Node& m = node(n);
            freeze(n);
            auto& iv = m.activity;
            std::sort(iv.begin(), iv.end());
            double busy = 0, cur_s = 0, cur_e = -1;
            for (auto [s, e] : iv) {
                s = std::max(s, start);
                e = std::min(e, now_);
                if (e <= s) continue;
                if (s > cur_e) {
                    if (cur_e > cur_s) busy += cur_e - cur_s;
                    cur_s = s;
                    cur_e = e;
                } else {
                    cur_e = std::max(cur_e, e);
                }
            }
            if (cur_e > cur_s) busy += cur_e - cur_s;
            res_.energy.idle += cfg_.profile.p_idle * std::max(0.0, (now_ - start) - busy);
            res_.energy.overhead += cfg_.profile.transition_energy();
            iv.clear();
        }
    }

    void handle(const Resume& r) {
        Node& m = node(r.node);
        if (m.busy_until > now_ || !m.contending || !m.frozen || !awake()) return;
        schedule_fire(r.node);
    }

    void handle(const Sync& s) {
        res_.energy.overhead += ctx_.cap.sync_len * (e_send_ + e_rcv_ * static_cast<double>(nbrs(s.node).size()));
        q_.push(now_ + ctx_.cap.sync_interval, Sync{s.node});
    }

    // radio activity of a frame from n over [from, from + dur), at n and every hearer
    void activity(int n, double from, double dur) {
        node(n).activity.emplace_back(from, from + dur);
        for (int v : nbrs(n)) node(v).activity.emplace_back(from, from + dur);
    }

    // a frame starting now at n ruins every RTS still arriving near n
    void corrupt_pending(int n) {
        for (int id : pending_rts_) {
            Exchange& x = exchanges_[static_cast<std::size_t>(id)];
            if (x.sender != n && (x.dest == n || topo_.adjacent(x.dest, n))) x.failed = true;
        }
    }

    void handle(const Fire& f) {
        Node& m = node(f.node);
        if (f.gen != m.gen || !m.contending || m.frozen) return;
        if (!awake() || now_ + t_exchange_ > window_end() + 1e-12) {
            // too late in the active period: try again next period
            m.frozen = true;
            m.remaining = draw_backoff(m.stage);
            ++m.gen;
            return;
        }
        if (sensed_busy(f.node)) {
            m.frozen = true;
            m.remaining = 1;
            ++m.gen;
            return;
        }
        m.contending = false;
        m.attempting = true;
        const int dest = traffic_.mac(f.node)->dest;
        Exchange x{f.node, dest, now_, false};
        const Node& d = node(dest);
        // destination already hearing something, sending, or deferring
        if (d.busy_until > now_ || d.attempting) x.failed = true;
        for (int id : pending_rts_) {
            const Exchange& o = exchanges_[static_cast<std::size_t>(id)];
            if (o.sender == dest || topo_.adjacent(dest, o.sender)) x.failed = true;
        }
        const int id = static_cast<int>(exchanges_.size());
        exchanges_.push_back(x);
        activity(f.node, now_, t_rts_);
        corrupt_pending(f.node);
        pending_rts_.push_back(id);
        for (int v : nbrs(f.node)) set_busy(v, now_ + t_rts_);
        q_.push(now_ + t_rts_, RtsEnd{id});
    }

    void handle(const RtsEnd& e) {
        Exchange& x = exchanges_[static_cast<std::size_t>(e.ex)];
        pending_rts_.erase(std::find(pending_rts_.begin(), pending_rts_.end(), e.ex));
        const double hearers = static_cast<double>(nbrs(x.sender).size());
        const double rts_energy = ctx_.cap.rts_len * (e_send_ + e_rcv_ * hearers);
        if (x.failed) {
            ++res_.collisions;
            res_.energy.collision += rts_energy;
            Node& m = node(x.sender);
            m.attempting = false;
            auto& pkt = *traffic_.mac(x.sender);
            if (++pkt.attempts > cfg_.retry_limit) {
                traffic_.drop(x.sender);
                m.stage = 0;
                try_contend(x.sender);
            } else {
                ++m.stage;
                m.contending = true;
                m.frozen = true;
                m.remaining = draw_backoff(m.stage);
                if (awake() && !sensed_busy(x.sender)) schedule_fire(x.sender);
            }
            return;
        }
        res_.energy.overhead += rts_energy;
        const double end = now_ + t_cts_ + t_data_ + t_ack_;
        // CTS, DATA, ACK back to back; neighbours of both ends defer until the end
        node(x.dest).attempting = true;
        for (int v : nbrs(x.sender)) set_busy(v, end);
        for (int v : nbrs(x.dest)) set_busy(v, end);
        activity(x.dest, now_, t_cts_);
        corrupt_pending(x.dest);
        activity(x.sender, now_ + t_cts_, t_data_);
        activity(x.dest, now_ + t_cts_ + t_data_, t_ack_);

        const double near_dest = static_cast<double>(nbrs(x.dest).size());
        const double near_sender = static_cast<double>(nbrs(x.sender).size());
        res_.energy.overhead += (ctx_.cap.cts_len + ctx_.cap.ack_len) * (e_send_ + e_rcv_ * near_dest);
        res_.energy.payload += ctx_.msg_len * (e_send_ + e_rcv_);
        res_.energy.overhearing += ctx_.msg_len * e_rcv_ * (near_sender - 1);
        res_.overheard += static_cast<std::uint64_t>(near_sender - 1);
        q_.push(end, ExchangeEnd{e.ex});
    }

    void handle(const ExchangeEnd& e) {
        const Exchange x = exchanges_[static_cast<std::size_t>(e.ex)];
        node(x.dest).attempting = false;
        Node& m = node(x.sender);
        m.attempting = false;
        m.stage = 0;
        traffic_.deliver(x.sender, now_);
        try_contend(x.sender);
        if (!node(x.dest).contending) try_contend(x.dest);
    }

    const SimConfig& cfg_;
    const NetworkContext& ctx_;
    std::mt19937_64 rng_;
    std::vector<Position> pos_;
    Topology topo_;
    detail::Traffic traffic_;
    std::vector<Node> nodes_;
    std::vector<Exchange> exchanges_;
    std::vector<int> pending_rts_;
    EventQueue<Ev> q_;
    RunResult res_;
    double now_ = 0;
    double e_rcv_ = 0, e_send_ = 0;
    double t_rts_ = 0, t_cts_ = 0, t_data_ = 0, t_ack_ = 0, t_exchange_ = 0;
    double sigma_ = 0, active_ = 0;
};

}  // namespace

RunResult run_smac_once(const SimConfig& cfg, std::uint64_t seed) { return SmacRun(cfg, seed).run(); }

}  // namespace macsel::desim
