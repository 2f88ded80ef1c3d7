#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "macsel/context.hpp"

namespace macsel {

enum class ErrorCode {
    saturated,
    degenerate_cpf,
    domain,
    no_satisfying_category,
    no_evaluable_category,
    no_performance_model,
    unknown_requirement,
    duplicate,
    unknown_category,
    invalid_document,
    insufficient_cells,
    invalid_config,
};

const char* to_string(ErrorCode code);

/// Domain failure raised by the models, the selector and the simulator.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// A context (or sim config) that failed invariant checks.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> v)
        : Error(ErrorCode::invalid_config, describe(v)), violations_(std::move(v)) {}
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

inline void require_valid(const NetworkContext& ctx) {
    auto v = validate(ctx);
    if (!v.empty()) throw ValidationError(std::move(v));
}

}  // namespace macsel
