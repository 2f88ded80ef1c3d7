#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "macsel/context.hpp"
#include "macsel/cpf.hpp"
#include "macsel/desim/compare.hpp"
#include "macsel/radio.hpp"
#include "macsel/selector.hpp"

namespace macsel {

using nlohmann::json;

/// The shared configuration document:
///   {"context": {...}, "profile": {...}, "weights": {...}, "simulation": {...}}
/// Every section is optional; missing fields keep their defaults and unknown
/// keys are rejected. Errors throw ValidationError with dotted field paths.
struct ConfigDocument {
    NetworkContext context;
    RadioProfile profile;
    Weights weights;
    desim::SimConfig simulation;  // context/profile mirrored from the sections above
};

ConfigDocument load_config(const json& doc);
json to_json(const ConfigDocument& doc);

/// Parses one section; `where` prefixes field names in diagnostics.
NetworkContext context_from_json(const json& j, const std::string& where = "context");
RadioProfile profile_from_json(const json& j, const std::string& where = "profile");
Weights weights_from_json(const json& j, const std::string& where = "weights");

json to_json(const NetworkContext& ctx);
json to_json(const RadioProfile& prof);
json to_json(const Weights& w);

/// Context from a file holding either a bare context object or a full document.
NetworkContext load_context_file(const std::filesystem::path& path);
RadioProfile load_profile_file(const std::filesystem::path& path);
ConfigDocument load_config_file(const std::filesystem::path& path);

/// Throws Error(invalid_document) on unreadable or malformed JSON.
json read_json_file(const std::filesystem::path& path);

// Result serialisation (full precision).
json to_json(const EnergyBreakdown& e);
json to_json(const CategoryEvaluation& e);
json to_json(const std::vector<CategoryEvaluation>& evals);
json to_json(const SelectionResult& r);
json to_json(const SweepRow& row);
json to_json(const desim::SimStats& s);
json to_json(const desim::DivergenceReport& r);

}  // namespace macsel
