#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "macsel/config.hpp"
#include "macsel/errors.hpp"

using namespace macsel;

namespace {

std::vector<Violation> violations_of(const json& doc) {
    try {
        load_config(doc);
    } catch (const ValidationError& e) {
        return e.violations();
    }
    FAIL("document accepted");
    return {};
}

bool names(const std::vector<Violation>& v, const std::string& field, const std::string& rule_part = "") {
    for (const auto& x : v)
        if (x.field == field && x.rule.find(rule_part) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("empty document yields defaults") {
    auto d = load_config(json::object());
    CHECK(d.context == NetworkContext{});
    CHECK(d.profile == RadioProfile{});
    CHECK(d.weights.alpha == doctest::Approx(10.0 / 11));
    CHECK(d.simulation.seed == 1);
}

TEST_CASE("partial sections override only named fields") {
    auto d = load_config(json::parse(R"({
        "context": {"n_nodes": 90, "cap": {"service_rate_mode": "packet_rate"}},
        "profile": {"p_idle": 0.05},
        "simulation": {"boundary": "plane", "seed": 99, "sweep_pkt_rates": [1, 2]}
    })"));
    CHECK(d.context.n_nodes == 90);
    CHECK(d.context.network_radius == 100);
    CHECK(d.context.cap.service_rate_mode == ServiceRateMode::packet_rate);
    CHECK(d.profile.p_idle == 0.05);
    CHECK(d.simulation.boundary == desim::Boundary::plane);
    CHECK(d.simulation.seed == 99);
    CHECK(d.simulation.sweep_pkt_rates == std::vector<double>{1, 2});
    CHECK(d.simulation.context.n_nodes == 90);
    CHECK(d.simulation.profile.p_idle == 0.05);
}

TEST_CASE("round trip through JSON") {
    auto d = load_config(json::parse(R"({"context": {"pkt_rate": 3.5}, "weights": {"alpha": 2, "beta": 1}})"));
    auto back = load_config(to_json(d));
    CHECK(back.context == d.context);
    CHECK(back.profile == d.profile);
    CHECK(back.weights.alpha == 2);
    CHECK(back.simulation.seed == d.simulation.seed);
}

TEST_CASE("unknown fields are rejected with their path") {
    auto v = violations_of(json::parse(R"({"context": {"n_nodez": 5, "sched": {"frame": 1}}, "extra": 1})"));
    CHECK(names(v, "context.n_nodez", "unknown field"));
    CHECK(names(v, "context.sched.frame", "unknown field"));
    CHECK(names(v, "document.extra", "unknown field"));
}

TEST_CASE("wrong types are rejected") {
    auto v = violations_of(json::parse(R"({
        "context": {"n_nodes": 2.5, "pkt_rate": "fast", "cap": {"service_rate_mode": "bogus"}},
        "profile": [],
        "simulation": {"seed": -1, "sweep_pkt_rates": [1, "x"], "boundary": 3}
    })"));
    CHECK(names(v, "context.n_nodes", "integer"));
    CHECK(names(v, "context.pkt_rate", "number"));
    CHECK(names(v, "context.cap.service_rate_mode", "bandwidth | packet_rate"));
    CHECK(names(v, "profile", "object"));
    CHECK(names(v, "simulation.seed", "non-negative"));
    CHECK(names(v, "simulation.sweep_pkt_rates"));
    CHECK(names(v, "simulation.boundary"));
}

TEST_CASE("integral floats are accepted as integers") {
    auto d = load_config(json::parse(R"({"context": {"n_nodes": 40.0}})"));
    CHECK(d.context.n_nodes == 40);
}

TEST_CASE("range violations carry the section prefix") {
    auto v = violations_of(json::parse(R"({"context": {"network_radius": -3}, "profile": {"e_on": -1}})"));
    CHECK(names(v, "context.network_radius"));
    CHECK(names(v, "profile.e_on"));
}

TEST_CASE("simulation limits") {
    auto v = violations_of(json::parse(R"({"simulation": {"sim_duration": 0, "min_reps": 5, "max_reps": 2,
                                           "confidence": 1.5}})"));
    CHECK(names(v, "simulation.sim_duration"));
    CHECK(names(v, "simulation.max_reps"));
    CHECK(names(v, "simulation.confidence"));
}

TEST_CASE("bare context and profile objects") {
    auto ctx = context_from_json(json::parse(R"({"n_nodes": 12})"));
    CHECK(ctx.n_nodes == 12);
    CHECK_THROWS_AS(context_from_json(json::parse(R"({"n_nodes": 0})")), ValidationError);
    auto prof = profile_from_json(json::parse(R"({"amp_fs": 1e-11})"));
    CHECK(prof.amp_fs == 1e-11);
    auto w = weights_from_json(json::parse(R"({"beta": 1})"));
    CHECK(w.beta == 1);
    CHECK(w.alpha == doctest::Approx(10.0 / 11));
}

TEST_CASE("context files may be bare or full documents") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / ("macsel_cfg_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::ofstream(dir / "bare.json") << R"({"n_nodes": 33})";
    std::ofstream(dir / "doc.json") << R"({"context": {"n_nodes": 44}, "profile": {"p_idle": 0.01}})";
    std::ofstream(dir / "broken.json") << "{";
    CHECK(load_context_file(dir / "bare.json").n_nodes == 33);
    CHECK(load_context_file(dir / "doc.json").n_nodes == 44);
    CHECK(load_profile_file(dir / "doc.json").p_idle == 0.01);
    try {
        load_context_file(dir / "broken.json");
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_document);
    }
    CHECK_THROWS_AS(read_json_file(dir / "absent.json"), Error);
    fs::remove_all(dir);
}

TEST_CASE("result serialisation") {
    auto evals = evaluate_all(NetworkContext{}, RadioProfile{}, Weights{});
    auto j = to_json(evals);
    REQUIRE(j.size() == 3);
    CHECK(j[0]["category"] == "ScP");
    CHECK(j[0]["cpf"].get<double>() == evals[0].cpf);
    CHECK(j[1]["energy"]["total"].get<double>() == evals[1].energy.total);
    CategoryEvaluation failed;
    failed.category = "CAP";
    failed.error = "saturated";
    auto f = to_json(failed);
    CHECK(f["error"] == "saturated");
    CHECK_FALSE(f.contains("cpf"));
}
