#include "macsel/cpf.hpp"

#include <algorithm>
#include <cmath>

#include "macsel/categories.hpp"
#include "macsel/errors.hpp"
#include "macsel/format.hpp"

namespace macsel {

void check_weights(const Weights& w) {
    if (!(w.alpha >= 0) || !(w.beta >= 0) || !std::isfinite(w.alpha) || !std::isfinite(w.beta))
        throw Error(ErrorCode::degenerate_cpf, "degenerate CPF: weights must be finite and >= 0");
    if (w.alpha + w.beta <= 0)
        throw Error(ErrorCode::degenerate_cpf, "degenerate CPF: alpha + beta must be > 0");
}

double cpf_general(std::span<const CriterionValue> criteria) {
    double num = 0, den = 0;
    bool has_direct = false;
    for (const auto& c : criteria) {
        if (c.importance < 0 || c.cost < 0 || c.value < 0)
            throw Error(ErrorCode::domain, "criterion '" + c.id + "': importance, cost and value must be >= 0");
        const double term = c.importance * c.cost * c.value;
        if (c.direction == Direction::direct) {
            num += term;
            has_direct = true;
        } else {
            den += term;
        }
    }
    if (!has_direct) num = 1.0;
    if (!(den > 0)) throw Error(ErrorCode::degenerate_cpf, "degenerate CPF: zero denominator");
    return num / den;
}

double cpf_energy_delay(double energy, double delay, const Weights& w) {
    const double den = w.alpha * energy + w.beta * delay;
    if (!(den > 0)) throw Error(ErrorCode::degenerate_cpf, "degenerate CPF: alpha*E + beta*T is zero");
    return 1.0 / den;
}

const ModelTable& builtin_models() {
    static const ModelTable table = [] {
        ModelTable t;
        t.emplace(std::string(category::scheduled),
                  CategoryModel{[](const NetworkContext& c, const RadioProfile& p) { return scheduled_energy(c, p); },
                                [](const NetworkContext& c) { return scheduled_delay(c); }});
        t.emplace(std::string(category::common_active),
                  CategoryModel{[](const NetworkContext& c, const RadioProfile& p) { return cap_energy(c, p); },
                                [](const NetworkContext& c) { return cap_delay(c); }});
        t.emplace(std::string(category::preamble_sampling),
                  CategoryModel{[](const NetworkContext& c, const RadioProfile& p) { return psp_energy(c, p); },
                                [](const NetworkContext& c) { return psp_delay(c); }});
        return t;
    }();
    return table;
}

CategoryEvaluation evaluate_category(const std::string& category, const CategoryModel& model,
                                     const NetworkContext& ctx, const RadioProfile& prof,
                                     const Weights& w) {
    CategoryEvaluation ev;
    ev.category = category;
    try {
        ev.energy = model.energy(ctx, prof);
        ev.delay = model.delay(ctx);
        ev.delay.category = category;
        ev.cpf = cpf_energy_delay(ev.energy.total, ev.delay.seconds, w);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::degenerate_cpf) throw;
        ev.error = e.what();
    }
    if (sparse_neighborhood(ctx) && category != category::scheduled)
        ev.notes.push_back("expected neighbour count below 1; overhearer count clamped to 0");
    return ev;
}

std::vector<CategoryEvaluation> evaluate_all(const NetworkContext& ctx, const RadioProfile& prof,
                                             const Weights& w) {
    require_valid(ctx);
    if (auto v = validate(prof); !v.empty()) throw ValidationError(std::move(v));
    check_weights(w);
    std::vector<CategoryEvaluation> out;
    const auto& models = builtin_models();
    for (auto id : category::builtin) {
        const std::string name(id);
        out.push_back(evaluate_category(name, models.find(name)->second, ctx, prof, w));
    }
    return out;
}

namespace {

int builtin_index(const std::string& id) {
    for (std::size_t i = 0; i < category::builtin.size(); ++i)
        if (category::builtin[i] == id) return static_cast<int>(i);
    return static_cast<int>(category::builtin.size());
}

bool category_before(const std::string& a, const std::string& b) {
    const int ia = builtin_index(a), ib = builtin_index(b);
    if (ia != ib) return ia < ib;
    return a < b;
}

}  // namespace

std::vector<const CategoryEvaluation*> rank(const std::vector<CategoryEvaluation>& evals) {
    std::vector<const CategoryEvaluation*> out;
    for (const auto& e : evals)
        if (e.ok()) out.push_back(&e);
    std::stable_sort(out.begin(), out.end(), [](const CategoryEvaluation* a, const CategoryEvaluation* b) {
        if (a->cpf != b->cpf) return a->cpf > b->cpf;
        return category_before(a->category, b->category);
    });
    return out;
}

std::vector<std::string> top_ties(const std::vector<CategoryEvaluation>& evals) {
    std::vector<std::string> out;
    auto ranked = rank(evals);
    for (const auto* e : ranked) {
        if (e->cpf != ranked.front()->cpf) break;
        out.push_back(e->category);
    }
    return out;
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::pkt_rate: return "pkt_rate";
        case SweepAxis::n_nodes: return "n_nodes";
        case SweepAxis::network_radius: return "network_radius";
    }
    return "?";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
    if (name == "pkt_rate") return SweepAxis::pkt_rate;
    if (name == "n_nodes") return SweepAxis::n_nodes;
    if (name == "network_radius") return SweepAxis::network_radius;
    return std::nullopt;
}

NetworkContext with_axis(NetworkContext ctx, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::pkt_rate: ctx.pkt_rate = value; break;
        case SweepAxis::n_nodes: ctx.n_nodes = static_cast<int>(std::lround(value)); break;
        case SweepAxis::network_radius: ctx.network_radius = value; break;
    }
    return ctx;
}

std::vector<SweepRow> sweep(const NetworkContext& ctx, const RadioProfile& prof, const Weights& w,
                            SweepAxis axis, std::span<const double> values) {
    check_weights(w);
    if (auto v = validate(prof); !v.empty()) throw ValidationError(std::move(v));
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double x : values) {
        SweepRow row;
        row.axis_value = x;
        auto sub = with_axis(ctx, axis, x);
        auto v = validate(sub);
        if (axis == SweepAxis::n_nodes && std::abs(x - std::round(x)) > 1e-9)
            v.push_back({"n_nodes", "must be an integer"});
        if (!v.empty()) {
            row.violation = describe(v);
        } else {
            row.evaluations = evaluate_all(sub, prof, w);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> linspace(double from, double to, int steps) {
    std::vector<double> out;
    if (steps <= 0) return out;
    if (steps == 1) return {from};
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        out.push_back(i == steps - 1 ? to : from + (to - from) * i / (steps - 1));
    return out;
}

void write_sweep_csv_header(std::ostream& os) { os << kSweepCsvHeader << '\n'; }

namespace {

std::string csv_quoted(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

void write_sweep_csv_row(std::ostream& os, const SweepRow& row) {
    const auto axis = format_exact(row.axis_value);
    if (row.violation) {
        for (auto id : category::builtin)
            os << axis << ',' << id << ",,,,,,," << csv_quoted("invalid: " + *row.violation) << '\n';
        return;
    }
    for (const auto& e : row.evaluations) {
        os << axis << ',' << e.category << ',';
        if (!e.ok()) {
            os << ",,,,,," << csv_quoted("error: " + *e.error) << '\n';
            continue;
        }
        os << format_exact(e.energy.collision) << ',' << format_exact(e.energy.overhearing) << ','
           << format_exact(e.energy.idle_listening) << ',' << format_exact(e.energy.overhead) << ','
           << format_exact(e.energy.total) << ',' << format_exact(e.delay.seconds) << ','
           << format_exact(e.cpf) << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    write_sweep_csv_header(os);
    for (const auto& r : rows) write_sweep_csv_row(os, r);
}

}  // namespace macsel
