#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace macsel {

struct Requirement {
    std::string id;
    std::string description;
    bool operator==(const Requirement&) const = default;
};

struct CategoryInfo {
    std::string id;
    std::string representative;  // protocol whose analysis stands in for the category
    std::string note;
    bool operator==(const CategoryInfo&) const = default;
};

struct ProtocolRecord {
    std::string name;
    std::string category;
    std::set<std::string> satisfies;
    std::set<std::string> reviewed_against;  // superset of satisfies
    bool operator==(const ProtocolRecord&) const = default;
};

/// Categories, requirement vocabulary and the protocol table. Operations
/// return an updated copy; existing entries are never modified.
struct Registry {
    std::vector<CategoryInfo> categories;
    std::vector<Requirement> requirements;
    std::vector<ProtocolRecord> protocols;

    const CategoryInfo* find_category(std::string_view id) const;
    const Requirement* find_requirement(std::string_view id) const;
    const ProtocolRecord* find_protocol(std::string_view name) const;
    bool operator==(const Registry&) const = default;
};

/// Partial reconstruction of the qualitative protocol table: the three
/// behavioural categories, the protocols named in the two-scenario example
/// and its two requirements.
Registry seed_registry();

/// Throws Error(invalid_document) naming the first broken reference.
void check_registry(const Registry& reg);

Registry add_category(const Registry& reg, const CategoryInfo& info);
Registry add_protocol(const Registry& reg, const ProtocolRecord& rec);

struct RequirementAddition {
    Registry registry;
    /// Protocols to review against the new requirement, coverage-maximal first.
    std::vector<std::string> worklist;
};
RequirementAddition add_requirement(const Registry& reg, const Requirement& req);

/// Review order: greedily pick the protocol covering the most not-yet-covered
/// (category, requirement-subset) combinations; remaining protocols follow in
/// registry order. Ties go to the earlier registry entry.
std::vector<std::string> review_worklist(const Registry& reg);

/// Number of (category, subset-of-satisfies) combinations a protocol answers.
std::size_t combination_count(const ProtocolRecord& rec);

nlohmann::json save_registry(const Registry& reg);
/// Validates schema (unknown fields rejected) and references.
Registry load_registry(const nlohmann::json& doc);

Registry load_registry_file(const std::filesystem::path& path);
/// Write-temp-then-rename.
void save_registry_file(const std::filesystem::path& path, const Registry& reg);

}  // namespace macsel
