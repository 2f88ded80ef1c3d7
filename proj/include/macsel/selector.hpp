#pragma once

#include <set>
#include <string>
#include <vector>

#include "macsel/cpf.hpp"
#include "macsel/registry.hpp"

namespace macsel {

struct SelectionResult {
    /// Psi ranked by CPF descending; categories that could not be evaluated trail.
    std::vector<std::string> feasible_categories;
    std::string best_category;
    /// Protocols of best_category satisfying every requirement, registry order.
    std::vector<std::string> protocols;
    /// One entry per category of Psi (failed ones carry an error marker).
    std::vector<CategoryEvaluation> evaluations;
    std::vector<std::string> warnings;
    /// Categories sharing the best CPF; more than one means the tie-break decided.
    std::vector<std::string> ties;
};

/// Throws Error(unknown_requirement) naming the first id missing from reg.
void check_requirements(const Registry& reg, const std::set<std::string>& req);

/// Categories with at least one protocol satisfying every id in req, in
/// registry order.
std::vector<std::string> satisfying_categories(const Registry& reg, const std::set<std::string>& req);

/// Protocols of one category satisfying all of req, registry order.
std::vector<std::string> satisfying_protocols(const Registry& reg, const std::string& category,
                                              const std::set<std::string>& req);

SelectionResult select(const Registry& reg, const NetworkContext& ctx, const RadioProfile& prof,
                       const std::set<std::string>& req, const Weights& w,
                       const ModelTable& models = builtin_models());

}  // namespace macsel
