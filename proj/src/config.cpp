#include "macsel/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "macsel/errors.hpp"

namespace macsel {

namespace {

// Reads known keys of one JSON object, collecting violations instead of
// stopping at the first problem.
class Reader {
public:
    Reader(const json& j, std::string path, std::vector<Violation>& out) : j_(j), path_(std::move(path)), out_(out) {
        ok_ = j_.is_object();
        if (!ok_) out_.push_back({path_, "expected an object"});
    }

    void num(const char* key, double& dst) {
        const json* v = get(key);
        if (!v) return;
        if (!v->is_number()) return bad(key, "expected a number");
        dst = v->get<double>();
    }

    void integer(const char* key, int& dst) {
        const json* v = get(key);
        if (!v) return;
        if (!is_integral(*v) || std::abs(v->get<double>()) > std::numeric_limits<int>::max())
            return bad(key, "expected an integer");
        dst = static_cast<int>(v->get<double>());
    }

    void u64(const char* key, std::uint64_t& dst) {
        const json* v = get(key);
        if (!v) return;
        if (v->is_number_unsigned()) {
            dst = v->get<std::uint64_t>();
        } else if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
            dst = static_cast<std::uint64_t>(v->get<std::int64_t>());
        } else {
            bad(key, "expected a non-negative integer");
        }
    }

    void num_list(const char* key, std::vector<double>& dst) {
        const json* v = get(key);
        if (!v) return;
        if (!v->is_array()) return bad(key, "expected an array of numbers");
        std::vector<double> tmp;
        for (const auto& e : *v) {
            if (!e.is_number()) return bad(key, "expected an array of numbers");
            tmp.push_back(e.get<double>());
        }
        dst = std::move(tmp);
    }

    template <class Enum>
    void choice(const char* key, Enum& dst, std::initializer_list<std::pair<const char*, Enum>> options) {
        const json* v = get(key);
        if (!v) return;
        std::string allowed;
        for (const auto& [name, value] : options) {
            if (v->is_string() && v->get<std::string>() == name) {
                dst = value;
                return;
            }
            allowed += allowed.empty() ? name : std::string(" | ") + name;
        }
        bad(key, "expected one of " + allowed);
    }

    /// Nested object reader, or nullopt when the key is absent.
    const json* child(const char* key) { return get(key); }
    std::string path(const char* key) const { return path_ + "." + key; }

    void finish() {
        if (!ok_) return;
        for (const auto& [k, v] : j_.items())
            if (!seen_.count(k)) out_.push_back({path_ + "." + k, "unknown field"});
    }

private:
    static bool is_integral(const json& v) {
        if (v.is_number_integer() || v.is_number_unsigned()) return true;
        if (!v.is_number_float()) return false;
        double d = v.get<double>();
        return std::isfinite(d) && d == std::floor(d);
    }

    const json* get(const char* key) {
        if (!ok_) return nullptr;
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void bad(const char* key, const std::string& rule) { out_.push_back({path(key), rule}); }

    const json& j_;
    std::string path_;
    std::vector<Violation>& out_;
    std::set<std::string> seen_;
    bool ok_ = false;
};

void read_context(const json& j, const std::string& where, NetworkContext& ctx, std::vector<Violation>& v) {
    Reader r(j, where, v);
    r.integer("n_nodes", ctx.n_nodes);
    r.num("network_radius", ctx.network_radius);
    r.num("tx_range", ctx.tx_range);
    r.num("pkt_rate", ctx.pkt_rate);
    r.num("bandwidth", ctx.bandwidth);
    r.num("msg_len", ctx.msg_len);
    if (const json* s = r.child("sched")) {
        Reader q(*s, r.path("sched"), v);
        q.num("frame_len", ctx.sched.frame_len);
        q.num("guard", ctx.sched.guard);
        q.num("slot_len", ctx.sched.slot_len);
        q.num("sync_len", ctx.sched.sync_len);
        q.num("ack_len", ctx.sched.ack_len);
        q.num("sync_interval", ctx.sched.sync_interval);
        q.finish();
    }
    if (const json* c = r.child("cap")) {
        Reader q(*c, r.path("cap"), v);
        q.num("duty_cycle", ctx.cap.duty_cycle);
        q.num("rts_len", ctx.cap.rts_len);
        q.num("cts_len", ctx.cap.cts_len);
        q.num("ack_len", ctx.cap.ack_len);
        q.num("sync_len", ctx.cap.sync_len);
        q.integer("cw_min", ctx.cap.cw_min);
        q.integer("backoff_stages", ctx.cap.backoff_stages);
        q.num("sync_interval", ctx.cap.sync_interval);
        q.choice("service_rate_mode", ctx.cap.service_rate_mode,
                 {{"bandwidth", ServiceRateMode::bandwidth}, {"packet_rate", ServiceRateMode::packet_rate}});
        q.finish();
    }
    if (const json* p = r.child("psp")) {
        Reader q(*p, r.path("psp"), v);
        q.num("preamble_len", ctx.psp.preamble_len);
        q.num("check_dur", ctx.psp.check_dur);
        q.num("check_interval", ctx.psp.check_interval);
        q.finish();
    }
    r.finish();
}

void read_profile(const json& j, const std::string& where, RadioProfile& prof, std::vector<Violation>& v) {
    Reader r(j, where, v);
    r.num("e_elec", prof.e_elec);
    r.num("amp_fs", prof.amp_fs);
    r.num("amp_mp", prof.amp_mp);
    r.num("p_idle", prof.p_idle);
    r.num("e_on", prof.e_on);
    r.num("e_off", prof.e_off);
    r.finish();
}

void read_weights(const json& j, const std::string& where, Weights& w, std::vector<Violation>& v) {
    Reader r(j, where, v);
    r.num("alpha", w.alpha);
    r.num("beta", w.beta);
    r.finish();
}

void read_simulation(const json& j, desim::SimConfig& cfg, std::vector<Violation>& v) {
    Reader r(j, "simulation", v);
    if (const json* a = r.child("area")) {
        Reader q(*a, r.path("area"), v);
        q.num("width", cfg.area.width);
        q.num("height", cfg.area.height);
        q.finish();
    }
    r.choice("boundary", cfg.boundary, {{"torus", desim::Boundary::torus}, {"plane", desim::Boundary::plane}});
    r.u64("seed", cfg.seed);
    r.num("sim_duration", cfg.sim_duration);
    r.num("confidence", cfg.confidence);
    r.num("rel_error", cfg.rel_error);
    r.integer("min_reps", cfg.min_reps);
    r.integer("max_reps", cfg.max_reps);
    r.integer("retry_limit", cfg.retry_limit);
    r.num("backoff_slot", cfg.backoff_slot);
    r.integer("sched_rows", cfg.sched_rows);
    r.integer("sched_cols", cfg.sched_cols);
    r.integer("placement_tries", cfg.placement_tries);
    r.num_list("sweep_pkt_rates", cfg.sweep_pkt_rates);
    r.finish();
}

void prefixed(std::vector<Violation>& out, const std::vector<Violation>& in, const std::string& prefix) {
    for (const auto& x : in) out.push_back({prefix + "." + x.field, x.rule});
}

bool looks_like_document(const json& j) {
    if (!j.is_object()) return false;
    for (const char* k : {"context", "profile", "weights", "simulation"})
        if (j.contains(k)) return true;
    return false;
}

}  // namespace

NetworkContext context_from_json(const json& j, const std::string& where) {
    std::vector<Violation> v;
    NetworkContext ctx;
    read_context(j, where, ctx, v);
    if (v.empty()) prefixed(v, validate(ctx), where);
    if (!v.empty()) throw ValidationError(std::move(v));
    return ctx;
}

RadioProfile profile_from_json(const json& j, const std::string& where) {
    std::vector<Violation> v;
    RadioProfile prof;
    read_profile(j, where, prof, v);
    if (v.empty()) prefixed(v, validate(prof), where);
    if (!v.empty()) throw ValidationError(std::move(v));
    return prof;
}

Weights weights_from_json(const json& j, const std::string& where) {
    std::vector<Violation> v;
    Weights w;
    read_weights(j, where, w, v);
    if (!v.empty()) throw ValidationError(std::move(v));
    return w;
}

ConfigDocument load_config(const json& doc) {
    std::vector<Violation> v;
    ConfigDocument out;
    Reader top(doc, "document", v);
    if (const json* c = top.child("context")) read_context(*c, "context", out.context, v);
    if (const json* p = top.child("profile")) read_profile(*p, "profile", out.profile, v);
    if (const json* w = top.child("weights")) read_weights(*w, "weights", out.weights, v);
    if (const json* s = top.child("simulation")) read_simulation(*s, out.simulation, v);
    top.finish();
    if (v.empty()) {
        out.simulation.context = out.context;
        out.simulation.profile = out.profile;
        v = desim::validate(out.simulation);
    }
    if (!v.empty()) throw ValidationError(std::move(v));
    return out;
}

json to_json(const NetworkContext& ctx) {
    return {{"n_nodes", ctx.n_nodes},
            {"network_radius", ctx.network_radius},
            {"tx_range", ctx.tx_range},
            {"pkt_rate", ctx.pkt_rate},
            {"bandwidth", ctx.bandwidth},
            {"msg_len", ctx.msg_len},
            {"sched",
             {{"frame_len", ctx.sched.frame_len},
              {"guard", ctx.sched.guard},
              {"slot_len", ctx.sched.slot_len},
              {"sync_len", ctx.sched.sync_len},
              {"ack_len", ctx.sched.ack_len},
              {"sync_interval", ctx.sched.sync_interval}}},
            {"cap",
             {{"duty_cycle", ctx.cap.duty_cycle},
              {"rts_len", ctx.cap.rts_len},
              {"cts_len", ctx.cap.cts_len},
              {"ack_len", ctx.cap.ack_len},
              {"sync_len", ctx.cap.sync_len},
              {"cw_min", ctx.cap.cw_min},
              {"backoff_stages", ctx.cap.backoff_stages},
              {"sync_interval", ctx.cap.sync_interval},
              {"service_rate_mode",
               ctx.cap.service_rate_mode == ServiceRateMode::bandwidth ? "bandwidth" : "packet_rate"}}},
            {"psp",
             {{"preamble_len", ctx.psp.preamble_len},
              {"check_dur", ctx.psp.check_dur},
              {"check_interval", ctx.psp.check_interval}}}};
}

json to_json(const RadioProfile& p) {
    return {{"e_elec", p.e_elec}, {"amp_fs", p.amp_fs}, {"amp_mp", p.amp_mp},
            {"p_idle", p.p_idle}, {"e_on", p.e_on},     {"e_off", p.e_off}};
}

json to_json(const Weights& w) { return {{"alpha", w.alpha}, {"beta", w.beta}}; }

json to_json(const ConfigDocument& d) {
    const auto& s = d.simulation;
    return {{"context", to_json(d.context)},
            {"profile", to_json(d.profile)},
            {"weights", to_json(d.weights)},
            {"simulation",
             {{"area", {{"width", s.area.width}, {"height", s.area.height}}},
              {"boundary", s.boundary == desim::Boundary::torus ? "torus" : "plane"},
              {"seed", s.seed},
              {"sim_duration", s.sim_duration},
              {"confidence", s.confidence},
              {"rel_error", s.rel_error},
              {"min_reps", s.min_reps},
              {"max_reps", s.max_reps},
              {"retry_limit", s.retry_limit},
              {"backoff_slot", s.backoff_slot},
              {"sched_rows", s.sched_rows},
              {"sched_cols", s.sched_cols},
              {"placement_tries", s.placement_tries},
              {"sweep_pkt_rates", s.sweep_pkt_rates}}}};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::invalid_document, "cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::invalid_document, path.string() + ": " + e.what());
    }
}

NetworkContext load_context_file(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    if (looks_like_document(j)) return load_config(j).context;
    return context_from_json(j);
}

RadioProfile load_profile_file(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    if (looks_like_document(j)) return load_config(j).profile;
    return profile_from_json(j);
}

ConfigDocument load_config_file(const std::filesystem::path& path) { return load_config(read_json_file(path)); }

// ---- results ---------------------------------------------------------------

json to_json(const EnergyBreakdown& e) {
    return {{"collision", e.collision},
            {"overhearing", e.overhearing},
            {"idle_listening", e.idle_listening},
            {"overhead", e.overhead},
            {"total", e.total}};
}

json to_json(const CategoryEvaluation& e) {
    json j{{"category", e.category}};
    if (e.error) {
        j["error"] = *e.error;
    } else {
        j["energy"] = to_json(e.energy);
        j["delay"] = e.delay.seconds;
        j["cpf"] = e.cpf;
    }
    j["notes"] = e.notes;
    return j;
}

json to_json(const std::vector<CategoryEvaluation>& evals) {
    json arr = json::array();
    for (const auto& e : evals) arr.push_back(to_json(e));
    return arr;
}

json to_json(const SelectionResult& r) {
    return {{"feasible_categories", r.feasible_categories},
            {"best_category", r.best_category},
            {"protocols", r.protocols},
            {"evaluations", to_json(r.evaluations)},
            {"ties", r.ties},
            {"warnings", r.warnings}};
}

json to_json(const SweepRow& row) {
    json j{{"axis_value", row.axis_value}};
    if (row.violation)
        j["violation"] = *row.violation;
    else
        j["evaluations"] = to_json(row.evaluations);
    return j;
}

json to_json(const desim::SimStats& s) {
    json j{{"energy_per_second", {{"mean", s.energy_per_second.mean}, {"half_width", s.energy_per_second.half_width}}},
           {"tallies",
            {{"collision", s.collision},
             {"overhearing", s.overhearing},
             {"idle", s.idle},
             {"overhead", s.overhead},
             {"total", s.total},
             {"payload", s.payload}}},
           {"replications", s.replications},
           {"converged", s.converged},
           {"packets",
            {{"generated", s.packets_generated},
             {"delivered", s.packets_delivered},
             {"dropped", s.packets_dropped},
             {"in_flight", s.packets_in_flight}}},
           {"collisions", s.collisions},
           {"overheard", s.overheard},
           {"seed", s.seed},
           {"prng", s.prng}};
    if (s.delay_tracked)
        j["delay"] = {{"mean", s.delay.mean}, {"half_width", s.delay.half_width}};
    else
        j["delay"] = nullptr;
    return j;
}

json to_json(const desim::DivergenceReport& r) {
    json pts = json::array();
    for (const auto& p : r.points)
        pts.push_back({{"pkt_rate", p.pkt_rate},
                       {"model_energy", to_json(p.model_energy)},
                       {"model_delay", p.model_delay},
                       {"sim", to_json(p.sim)},
                       {"energy_divergence", p.energy_divergence},
                       {"delay_divergence", p.delay_divergence}});
    return {{"protocol", desim::to_string(r.protocol)},
            {"points", pts},
            {"max_energy_divergence", r.max_energy_divergence},
            {"max_delay_divergence", r.max_delay_divergence},
            {"all_converged", r.all_converged}};
}

}  // namespace macsel
