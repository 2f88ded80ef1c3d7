#include "macsel/selector.hpp"

#include <algorithm>

#include "macsel/errors.hpp"

namespace macsel {

void check_requirements(const Registry& reg, const std::set<std::string>& req) {
    for (const auto& r : req)
        if (!reg.find_requirement(r))
            throw Error(ErrorCode::unknown_requirement, "unknown requirement '" + r + "'");
}

namespace {

bool satisfies_all(const ProtocolRecord& p, const std::set<std::string>& req) {
    return std::includes(p.satisfies.begin(), p.satisfies.end(), req.begin(), req.end());
}

}  // namespace

std::vector<std::string> satisfying_categories(const Registry& reg, const std::set<std::string>& req) {
    check_requirements(reg, req);
    std::vector<std::string> out;
    for (const auto& c : reg.categories) {
        if (req.empty()) {
            out.push_back(c.id);
            continue;
        }
        for (const auto& p : reg.protocols) {
            if (p.category == c.id && satisfies_all(p, req)) {
                out.push_back(c.id);
                break;
            }
        }
    }
    return out;
}

std::vector<std::string> satisfying_protocols(const Registry& reg, const std::string& category,
                                              const std::set<std::string>& req) {
    std::vector<std::string> out;
    for (const auto& p : reg.protocols)
        if (p.category == category && satisfies_all(p, req)) out.push_back(p.name);
    return out;
}

SelectionResult select(const Registry& reg, const NetworkContext& ctx, const RadioProfile& prof,
                       const std::set<std::string>& req, const Weights& w, const ModelTable& models) {
    check_weights(w);
    require_valid(ctx);
    if (auto v = validate(prof); !v.empty()) throw ValidationError(std::move(v));

    const auto psi = satisfying_categories(reg, req);
    if (psi.empty()) {
        std::string msg = "no satisfying category: no protocol satisfies {";
        bool first = true;
        for (const auto& r : req) {
            msg += (first ? "" : ", ") + r;
            first = false;
        }
        throw Error(ErrorCode::no_satisfying_category, msg + "}");
    }

    SelectionResult res;
    for (const auto& id : psi) {
        auto it = models.find(id);
        if (it == models.end()) {
            CategoryEvaluation e;
            e.category = id;
            e.delay.category = id;
            e.error = std::string(to_string(ErrorCode::no_performance_model));
            res.warnings.push_back("category " + id + " has no performance model; excluded");
            res.evaluations.push_back(std::move(e));
            continue;
        }
        auto e = evaluate_category(id, it->second, ctx, prof, w);
        if (!e.ok()) res.warnings.push_back("category " + id + " excluded: " + *e.error);
        for (const auto& n : e.notes) res.warnings.push_back(id + ": " + n);
        res.evaluations.push_back(std::move(e));
    }

    const auto ranked = rank(res.evaluations);
    if (ranked.empty())
        throw Error(ErrorCode::no_evaluable_category,
                    "no evaluable category: every category of the feasible set failed evaluation");
    for (const auto* e : ranked) res.feasible_categories.push_back(e->category);
    for (const auto& e : res.evaluations)
        if (!e.ok()) res.feasible_categories.push_back(e.category);

    res.best_category = ranked.front()->category;
    res.ties = top_ties(res.evaluations);
    if (res.ties.size() > 1) {
        std::string msg = "CPF tie between";
        for (const auto& t : res.ties) msg += " " + t;
        res.warnings.push_back(msg + "; resolved by category order");
    }
    res.protocols = satisfying_protocols(reg, res.best_category, req);
    return res;
}

}  // namespace macsel
