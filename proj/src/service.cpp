#include "macsel/service.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "macsel/categories.hpp"
#include "macsel/config.hpp"
#include "macsel/errors.hpp"
#include "macsel/selector.hpp"

namespace macsel::service {

Registry read_registry_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::invalid_document, "registry file '" + path.string() + "' is missing");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    bool blank = true;
    for (char c : text) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (blank) return Registry{};
    try {
        return load_registry(json::parse(text));
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::invalid_document, "registry file '" + path.string() + "': " + e.what());
    }
}

std::shared_ptr<const Registry> RegistryCache::snapshot() {
    std::error_code ec;
    auto stamp = std::filesystem::last_write_time(path_, ec);
    if (ec) throw Error(ErrorCode::invalid_document, "registry file '" + path_.string() + "' is missing");
    std::lock_guard<std::mutex> lock(mu_);
    if (!current_ || stamp != stamp_) {
        current_ = std::make_shared<const Registry>(read_registry_file(path_));
        stamp_ = stamp;
    }
    return current_;
}

namespace {

ApiResponse ok(json data) { return {200, {{"status", "ok"}, {"data", std::move(data)}}}; }

ApiResponse fail(int status, const std::string& code, const std::string& message, json violations = nullptr) {
    json err{{"code", code}, {"message", message}};
    if (!violations.is_null()) err["violations"] = std::move(violations);
    return {status, {{"status", "error"}, {"error", std::move(err)}}};
}

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::no_satisfying_category:
        case ErrorCode::no_evaluable_category: return 409;
        case ErrorCode::degenerate_cpf:
        case ErrorCode::unknown_requirement:
        case ErrorCode::invalid_config:
        case ErrorCode::domain: return 422;
        default: return 500;
    }
}

// Runs a handler body and turns exceptions into error responses.
template <class F>
ApiResponse guarded(F&& f) {
    try {
        return f();
    } catch (const json::parse_error& e) {
        return fail(400, "malformed_json", e.what());
    } catch (const ValidationError& e) {
        json v = json::array();
        for (const auto& x : e.violations()) v.push_back({{"field", x.field}, {"rule", x.rule}});
        return fail(422, "invalid_request", e.what(), v);
    } catch (const Error& e) {
        return fail(status_for(e.code()), to_string(e.code()), e.what());
    } catch (const std::exception& e) {
        return fail(500, "internal", e.what());
    }
}

struct Common {
    NetworkContext context;
    RadioProfile profile;
    Weights weights;
};

// Body must be an object; only `extra` keys besides context/profile/weights are allowed.
Common read_common(const json& body, std::initializer_list<const char*> extra) {
    if (!body.is_object()) throw ValidationError(std::vector<Violation>{{"body", "expected an object"}});
    std::vector<Violation> v;
    for (const auto& [k, val] : body.items()) {
        bool known = k == "context" || k == "profile" || k == "weights";
        for (const char* e : extra) known = known || k == e;
        if (!known) v.push_back({k, "unknown field"});
    }
    if (!v.empty()) throw ValidationError(std::move(v));
    Common c;
    auto section = [&](const char* key, auto&& parse, auto& dst) {
        if (auto it = body.find(key); it != body.end()) {
            try {
                dst = parse(*it, key);
            } catch (const ValidationError& e) {
                v.insert(v.end(), e.violations().begin(), e.violations().end());
            }
        }
    };
    section("context", context_from_json, c.context);
    section("profile", profile_from_json, c.profile);
    section("weights", weights_from_json, c.weights);
    if (!v.empty()) throw ValidationError(std::move(v));
    return c;
}

}  // namespace

json evaluation_data(const std::vector<CategoryEvaluation>& evals) {
    json ranking = json::array();
    for (const auto* e : rank(evals)) ranking.push_back(e->category);
    return {{"evaluations", to_json(evals)},
            {"ranking", ranking},
            {"best_category", ranking.empty() ? json(nullptr) : ranking.front()},
            {"ties", top_ties(evals)}};
}

ApiResponse get_registry(RegistryCache& cache) {
    return guarded([&] { return ok(save_registry(*cache.snapshot())); });
}

ApiResponse post_evaluate(std::string_view body) {
    return guarded([&] {
        const auto c = read_common(json::parse(body), {});
        return ok(evaluation_data(evaluate_all(c.context, c.profile, c.weights)));
    });
}

ApiResponse post_select(std::string_view body, RegistryCache& cache) {
    return guarded([&] {
        const json j = json::parse(body);
        const auto c = read_common(j, {"requirements"});
        std::set<std::string> req;
        if (auto it = j.find("requirements"); it != j.end()) {
            if (!it->is_array()) throw ValidationError(std::vector<Violation>{{"requirements", "expected an array of strings"}});
            for (const auto& r : *it) {
                if (!r.is_string())
                    throw ValidationError(std::vector<Violation>{{"requirements", "expected an array of strings"}});
                req.insert(r.get<std::string>());
            }
        }
        const auto reg = cache.snapshot();
        return ok(to_json(select(*reg, c.context, c.profile, req, c.weights)));
    });
}

ApiResponse post_sweep(std::string_view body) {
    return guarded([&] {
        const json j = json::parse(body);
        const auto c = read_common(j, {"axis", "from", "to", "steps"});
        std::vector<Violation> v;
        std::optional<SweepAxis> axis;
        double from = 0, to = 0;
        long long steps = 0;
        if (auto it = j.find("axis"); it != j.end() && it->is_string()) axis = parse_axis(it->get<std::string>());
        if (!axis) v.push_back({"axis", "expected one of pkt_rate | n_nodes | network_radius"});
        auto number = [&](const char* key, double& dst) {
            auto it = j.find(key);
            if (it == j.end() || !it->is_number())
                v.push_back({key, "expected a number"});
            else
                dst = it->get<double>();
        };
        number("from", from);
        number("to", to);
        if (auto it = j.find("steps"); it == j.end() || !it->is_number_integer())
            v.push_back({"steps", "expected an integer"});
        else
            steps = it->get<long long>();
        if (v.empty() && !(from < to)) v.push_back({"to", "must be greater than from"});
        if (v.empty() && steps < 2) v.push_back({"steps", "must be >= 2"});
        if (!v.empty()) throw ValidationError(std::move(v));

        const auto rows = static_cast<unsigned long long>(steps) * category::builtin.size();
        if (static_cast<unsigned long long>(steps) > kMaxSweepRows || rows > kMaxSweepRows)
            return fail(413, "too_many_rows",
                        "sweep of " + std::to_string(steps) + " steps exceeds the row limit of " +
                            std::to_string(kMaxSweepRows));
        check_weights(c.weights);
        const auto values = linspace(from, to, static_cast<int>(steps));
        json out = json::array();
        for (const auto& row : sweep(c.context, c.profile, c.weights, *axis, values)) out.push_back(to_json(row));
        return ok({{"axis", to_string(*axis)}, {"rows", out}});
    });
}

}  // namespace macsel::service
