#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include <json.hpp>

#include "macsel/cpf.hpp"
#include "macsel/registry.hpp"

namespace macsel::service {

using nlohmann::json;

/// Body is {"status": "ok", "data": ...} or {"status": "error", "error": {...}}.
struct ApiResponse {
    int status = 200;
    json body;
};

inline constexpr std::size_t kMaxSweepRows = 10000;

/// Registry file watched by modification time; every call hands out an
/// immutable snapshot.
class RegistryCache {
public:
    explicit RegistryCache(std::filesystem::path path) : path_(std::move(path)) {}
    /// Throws Error(invalid_document) when the file is missing or broken.
    std::shared_ptr<const Registry> snapshot();
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::mutex mu_;
    std::shared_ptr<const Registry> current_;
    std::filesystem::file_time_type stamp_{};
};

/// Reads a registry file; an empty (whitespace-only) file is an empty registry.
Registry read_registry_file(const std::filesystem::path& path);

ApiResponse get_registry(RegistryCache& cache);
ApiResponse post_evaluate(std::string_view body);
ApiResponse post_select(std::string_view body, RegistryCache& cache);
ApiResponse post_sweep(std::string_view body);

/// Evaluation payload shared with the CLI's --json output:
/// {evaluations, ranking, best_category, ties}.
json evaluation_data(const std::vector<CategoryEvaluation>& evals);

}  // namespace macsel::service
