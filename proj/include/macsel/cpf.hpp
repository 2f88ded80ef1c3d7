#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "macsel/context.hpp"
#include "macsel/delay.hpp"
#include "macsel/energy.hpp"
#include "macsel/radio.hpp"

namespace macsel {

enum class Direction { direct, inverse };

struct CriterionValue {
    std::string id;
    double value = 0;
    double importance = 1;  // rho
    double cost = 1;        // kappa
    Direction direction = Direction::inverse;
};

/// alpha = rho_E * kappa_E, beta = rho_T * kappa_T. Both absorb units.
struct Weights {
    double alpha = 10.0 / 11.0;
    double beta = 1.0 / 11.0;
};

/// Throws Error(degenerate_cpf) on negative weights or alpha + beta == 0.
void check_weights(const Weights& w);

/// sum(direct rho*kappa*value) / sum(inverse rho*kappa*value).
/// With no direct criteria the numerator is the constant 1.
double cpf_general(std::span<const CriterionValue> criteria);

/// 1 / (alpha E + beta T).
double cpf_energy_delay(double energy, double delay, const Weights& w);

struct CategoryEvaluation {
    std::string category;
    EnergyBreakdown energy;
    DelayEstimate delay;
    double cpf = 0;
    std::optional<std::string> error;  // set when the model failed; other fields meaningless
    std::vector<std::string> notes;

    bool ok() const { return !error.has_value(); }
};

/// Energy + delay model of one category (the representative protocol's analysis).
struct CategoryModel {
    std::function<EnergyBreakdown(const NetworkContext&, const RadioProfile&)> energy;
    std::function<DelayEstimate(const NetworkContext&)> delay;
};

using ModelTable = std::map<std::string, CategoryModel, std::less<>>;

/// Models for ScP, CAP and PSP.
const ModelTable& builtin_models();

/// Evaluates one category; model failures are captured in `error`.
CategoryEvaluation evaluate_category(const std::string& category, const CategoryModel& model,
                                     const NetworkContext& ctx, const RadioProfile& prof,
                                     const Weights& w);

/// One evaluation per built-in category, in ScP, CAP, PSP order.
/// Throws ValidationError for an invalid context or profile.
std::vector<CategoryEvaluation> evaluate_all(const NetworkContext& ctx, const RadioProfile& prof,
                                             const Weights& w);

/// Successful evaluations ordered by CPF descending. Equal CPFs keep the
/// built-in order (ScP < CAP < PSP, then other ids lexicographically).
std::vector<const CategoryEvaluation*> rank(const std::vector<CategoryEvaluation>& evals);

/// Categories tied with the best CPF (size > 1 means a tie).
std::vector<std::string> top_ties(const std::vector<CategoryEvaluation>& evals);

enum class SweepAxis { pkt_rate, n_nodes, network_radius };

const char* to_string(SweepAxis axis);
std::optional<SweepAxis> parse_axis(std::string_view name);

/// Copy of ctx with the axis field replaced by value.
NetworkContext with_axis(NetworkContext ctx, SweepAxis axis, double value);

struct SweepRow {
    double axis_value = 0;
    std::vector<CategoryEvaluation> evaluations;
    std::optional<std::string> violation;  // substituted context was invalid
};

std::vector<SweepRow> sweep(const NetworkContext& ctx, const RadioProfile& prof, const Weights& w,
                            SweepAxis axis, std::span<const double> values);

/// `steps` evenly spaced values from `from` to `to` inclusive.
std::vector<double> linspace(double from, double to, int steps);

inline constexpr const char* kSweepCsvHeader =
    "axis,category,collision,overhearing,idle,overhead,total_energy,delay,cpf";

void write_sweep_csv_header(std::ostream& os);
void write_sweep_csv_row(std::ostream& os, const SweepRow& row);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace macsel
