#include <doctest.h>

#include "macsel/errors.hpp"
#include "macsel/selector.hpp"

using namespace macsel;

namespace {

const std::set<std::string> kBoth{"overhearing-avoidance", "distributed"};

NetworkContext scenario(int n, double r) {
    NetworkContext ctx;
    ctx.n_nodes = n;
    ctx.network_radius = r;
    ctx.pkt_rate = 100;
    return ctx;
}

ErrorCode code_of(const auto& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::domain;
}

}  // namespace

TEST_CASE("feasible set for both requirements") {
    auto reg = seed_registry();
    CHECK(satisfying_categories(reg, kBoth) == std::vector<std::string>{"ScP", "PSP"});
    CHECK(satisfying_categories(reg, {"distributed"}) == std::vector<std::string>{"ScP", "CAP", "PSP"});
    CHECK(satisfying_categories(reg, {}) == std::vector<std::string>{"ScP", "CAP", "PSP"});
    CHECK(satisfying_protocols(reg, "ScP", kBoth) == std::vector<std::string>{"SMACS", "AS-MAC"});
    CHECK(satisfying_protocols(reg, "ScP", {}) == std::vector<std::string>{"TSMP", "SMACS", "AS-MAC"});
}

TEST_CASE("scenario 1 selects the scheduled category") {
    auto res = select(seed_registry(), scenario(90, 100), RadioProfile{}, kBoth, Weights{});
    CHECK(res.best_category == "ScP");
    CHECK(res.protocols == std::vector<std::string>{"SMACS", "AS-MAC"});
    CHECK(res.feasible_categories == std::vector<std::string>{"ScP", "PSP"});
    CHECK(res.evaluations.size() == 2);
    CHECK(res.ties == std::vector<std::string>{"ScP"});
}

TEST_CASE("scenario 2 selects preamble sampling") {
    auto res = select(seed_registry(), scenario(110, 70), RadioProfile{}, kBoth, Weights{});
    CHECK(res.best_category == "PSP");
    CHECK(res.protocols == std::vector<std::string>{"STEM"});
    CHECK(res.feasible_categories == std::vector<std::string>{"PSP", "ScP"});
}

TEST_CASE("selection errors") {
    auto reg = seed_registry();
    NetworkContext ctx;
    CHECK(code_of([&] { select(reg, ctx, RadioProfile{}, {"mobility"}, Weights{}); }) ==
          ErrorCode::unknown_requirement);
    auto r2 = add_requirement(reg, {"mobility", ""}).registry;
    try {
        select(r2, ctx, RadioProfile{}, {"mobility"}, Weights{});
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::no_satisfying_category);
        CHECK(std::string(e.what()).find("mobility") != std::string::npos);
    }
    CHECK(code_of([&] { select(reg, ctx, RadioProfile{}, kBoth, Weights{0, 0}); }) == ErrorCode::degenerate_cpf);
    ctx.n_nodes = 0;
    CHECK(code_of([&] { select(reg, ctx, RadioProfile{}, kBoth, Weights{}); }) == ErrorCode::invalid_config);
}

TEST_CASE("category without a model is excluded with a warning") {
    auto reg = add_category(seed_registry(), {"HYB", "", ""});
    reg = add_protocol(reg, {"Z-MAC", "HYB", {"distributed"}, {"distributed"}});
    auto res = select(reg, NetworkContext{}, RadioProfile{}, {"distributed"}, Weights{});
    CHECK(res.feasible_categories.back() == "HYB");
    CHECK(res.evaluations.back().error.has_value());
    bool warned = false;
    for (const auto& w : res.warnings) warned = warned || w.find("HYB") != std::string::npos;
    CHECK(warned);
}

TEST_CASE("no evaluable category") {
    Registry reg;
    reg = add_category(reg, {"HYB", "", ""});
    reg = add_protocol(reg, {"Z-MAC", "HYB", {}, {}});
    CHECK(code_of([&] { select(reg, NetworkContext{}, RadioProfile{}, {}, Weights{}); }) ==
          ErrorCode::no_evaluable_category);
}

TEST_CASE("a custom model table participates") {
    auto reg = add_category(seed_registry(), {"HYB", "", ""});
    reg = add_protocol(reg, {"Z-MAC", "HYB", {"distributed"}, {"distributed"}});
    ModelTable models = builtin_models();
    models["HYB"] = CategoryModel{
        [](const NetworkContext&, const RadioProfile&) { return EnergyBreakdown::of(0, 0, 0.001, 0); },
        [](const NetworkContext&) { return DelayEstimate{0.001, "HYB"}; }};
    auto res = select(reg, NetworkContext{}, RadioProfile{}, {"distributed"}, Weights{}, models);
    CHECK(res.best_category == "HYB");
    CHECK(res.protocols == std::vector<std::string>{"Z-MAC"});
}

TEST_CASE("ties are reported") {
    auto reg = add_category(seed_registry(), {"TWIN", "", ""});
    reg = add_protocol(reg, {"T1", "TWIN", {"distributed"}, {"distributed"}});
    ModelTable models = builtin_models();
    models["TWIN"] = builtin_models().at("ScP");
    auto res = select(reg, NetworkContext{}, RadioProfile{}, {"distributed"}, Weights{}, models);
    CHECK(res.best_category == "ScP");
    CHECK(res.ties == std::vector<std::string>{"ScP", "TWIN"});
    bool warned = false;
    for (const auto& w : res.warnings) warned = warned || w.find("tie") != std::string::npos;
    CHECK(warned);
}
