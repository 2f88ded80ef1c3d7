#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "macsel/cpf.hpp"
#include "macsel/errors.hpp"
#include "macsel/format.hpp"

using namespace macsel;

namespace {

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("energy-delay CPF") {
    Weights w;
    CHECK(cpf_energy_delay(0.1, 0.08, w) == doctest::Approx(1.0 / (10.0 / 11 * 0.1 + 1.0 / 11 * 0.08)));
    CHECK_THROWS_AS(cpf_energy_delay(0, 0, w), Error);
    CHECK(cpf_energy_delay(1, 0, Weights{1, 0}) == 1.0);
}

TEST_CASE("general CPF with direct and inverse criteria") {
    std::vector<CriterionValue> c = {
        {"throughput", 10, 2, 1, Direction::direct},
        {"energy", 4, 1, 0.5, Direction::inverse},
        {"delay", 2, 1, 1, Direction::inverse},
    };
    CHECK(cpf_general(c) == doctest::Approx(20.0 / 4.0));
    c.erase(c.begin());
    CHECK(cpf_general(c) == doctest::Approx(1.0 / 4.0));
}

TEST_CASE("general CPF reduces to the energy-delay form") {
    Weights w{0.7, 0.3};
    std::vector<CriterionValue> c = {{"E", 0.12, w.alpha, 1, Direction::inverse},
                                     {"T", 0.05, w.beta, 1, Direction::inverse}};
    CHECK(cpf_general(c) == doctest::Approx(cpf_energy_delay(0.12, 0.05, w)).epsilon(1e-15));
}

TEST_CASE("general CPF errors") {
    std::vector<CriterionValue> neg = {{"E", -1, 1, 1, Direction::inverse}};
    CHECK_THROWS_AS(cpf_general(neg), Error);
    std::vector<CriterionValue> zero = {{"E", 0, 1, 1, Direction::inverse}};
    try {
        cpf_general(zero);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::degenerate_cpf);
    }
}

TEST_CASE("weight checks") {
    CHECK_NOTHROW(check_weights({1, 0}));
    CHECK_THROWS_AS(check_weights({0, 0}), Error);
    CHECK_THROWS_AS(check_weights({-1, 2}), Error);
}

TEST_CASE("evaluate_all at the default context") {
    auto evals = evaluate_all(NetworkContext{}, RadioProfile{}, Weights{});
    REQUIRE(evals.size() == 3);
    CHECK(evals[0].category == "ScP");
    CHECK(evals[1].category == "CAP");
    CHECK(evals[2].category == "PSP");
    CHECK(evals[0].cpf == doctest::Approx(8.39202665917996).epsilon(1e-12));
    CHECK(evals[1].cpf == doctest::Approx(7.663139409775377).epsilon(1e-12));
    CHECK(evals[2].cpf == doctest::Approx(7.600942510863355).epsilon(1e-12));
    auto r = rank(evals);
    CHECK(r[0]->category == "ScP");
    CHECK(r[1]->category == "CAP");
    CHECK(r[2]->category == "PSP");
    CHECK(top_ties(evals) == std::vector<std::string>{"ScP"});
}

TEST_CASE("evaluate_all rejects invalid inputs") {
    NetworkContext bad;
    bad.n_nodes = 0;
    CHECK_THROWS_AS(evaluate_all(bad, RadioProfile{}, Weights{}), ValidationError);
    RadioProfile prof;
    prof.p_idle = -1;
    CHECK_THROWS_AS(evaluate_all(NetworkContext{}, prof, Weights{}), ValidationError);
    CHECK_THROWS_AS(evaluate_all(NetworkContext{}, RadioProfile{}, Weights{0, 0}), Error);
}

TEST_CASE("ties keep the built-in order") {
    std::vector<CategoryEvaluation> evals(3);
    evals[0].category = "PSP";
    evals[1].category = "CAP";
    evals[2].category = "ScP";
    for (auto& e : evals) e.cpf = 5.0;
    auto r = rank(evals);
    CHECK(r[0]->category == "ScP");
    CHECK(r[1]->category == "CAP");
    CHECK(r[2]->category == "PSP");
    CHECK(top_ties(evals).size() == 3);
}

TEST_CASE("failed evaluations are left out of the ranking") {
    std::vector<CategoryEvaluation> evals(2);
    evals[0].category = "CAP";
    evals[0].error = "saturated";
    evals[1].category = "PSP";
    evals[1].cpf = 1;
    auto r = rank(evals);
    REQUIRE(r.size() == 1);
    CHECK(r[0]->category == "PSP");
}

TEST_CASE("saturation is captured per category") {
    NetworkContext ctx;
    ctx.cap.service_rate_mode = ServiceRateMode::packet_rate;
    ctx.cap.cw_min = 2;
    ctx.cap.backoff_stages = 0;
    ctx.pkt_rate = 1e6;
    ctx.n_nodes = 500;
    auto evals = evaluate_all(ctx, RadioProfile{}, Weights{});
    CHECK(evals[0].ok());
    CHECK_FALSE(evals[1].ok());
    CHECK(evals[1].error->find("saturated") != std::string::npos);
}

TEST_CASE("sparse networks carry a note") {
    NetworkContext ctx;
    ctx.n_nodes = 10;
    auto evals = evaluate_all(ctx, RadioProfile{}, Weights{});
    CHECK(evals[0].notes.empty());
    CHECK(evals[1].notes.size() == 1);
    CHECK(evals[2].notes.size() == 1);
}

TEST_CASE("scaling both weights scales the CPF and keeps the order") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> c(0.01, 100);
    NetworkContext ctx;
    Weights w;
    auto base = evaluate_all(ctx, RadioProfile{}, w);
    for (int i = 0; i < 20; ++i) {
        double k = c(rng);
        auto scaled = evaluate_all(ctx, RadioProfile{}, Weights{k * w.alpha, k * w.beta});
        for (std::size_t j = 0; j < 3; ++j) CHECK(scaled[j].cpf == doctest::Approx(base[j].cpf / k).epsilon(1e-12));
        auto a = rank(base), b = rank(scaled);
        for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j]->category == b[j]->category);
    }
}

TEST_CASE("axis parsing and substitution") {
    CHECK(parse_axis("pkt_rate") == SweepAxis::pkt_rate);
    CHECK(parse_axis("n_nodes") == SweepAxis::n_nodes);
    CHECK(parse_axis("network_radius") == SweepAxis::network_radius);
    CHECK_FALSE(parse_axis("bogus").has_value());
    CHECK(std::string(to_string(SweepAxis::n_nodes)) == "n_nodes");
    NetworkContext ctx;
    CHECK(with_axis(ctx, SweepAxis::pkt_rate, 7).pkt_rate == 7);
    CHECK(with_axis(ctx, SweepAxis::n_nodes, 42).n_nodes == 42);
    CHECK(with_axis(ctx, SweepAxis::network_radius, 55).network_radius == 55);
}

TEST_CASE("linspace") {
    CHECK(linspace(0, 1, 5) == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
    CHECK(linspace(3, 9, 1) == std::vector<double>{3});
    CHECK(linspace(0, 1, 0).empty());
    auto v = linspace(0.1, 0.7, 7);
    CHECK(v.back() == 0.7);
}

TEST_CASE("sweep marks invalid points instead of failing") {
    NetworkContext ctx;
    std::vector<double> xs = {-1, 10, 20.5};
    auto rows = sweep(ctx, RadioProfile{}, Weights{}, SweepAxis::n_nodes, xs);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].violation.has_value());
    CHECK_FALSE(rows[1].violation.has_value());
    CHECK(rows[1].evaluations.size() == 3);
    REQUIRE(rows[2].violation.has_value());
    CHECK(rows[2].violation->find("integer") != std::string::npos);
}

TEST_CASE("sweep CSV layout") {
    NetworkContext ctx;
    std::vector<double> xs = {20, -5};
    auto rows = sweep(ctx, RadioProfile{}, Weights{}, SweepAxis::pkt_rate, xs);
    std::ostringstream os;
    write_sweep_csv(os, rows);
    auto l = lines(os.str());
    REQUIRE(l.size() == 7);
    CHECK(l[0] == kSweepCsvHeader);
    CHECK(l[1].rfind("20,ScP,0,0,", 0) == 0);
    CHECK(l[1].substr(l[1].rfind(',') + 1) == format_exact(rows[0].evaluations[0].cpf));
    CHECK(l[4].rfind("-5,ScP,,,,,,,\"invalid: pkt_rate", 0) == 0);
    for (const auto& line : l) {
        if (line.find('"') != std::string::npos) continue;
        CHECK(std::count(line.begin(), line.end(), ',') == 8);
    }
}

TEST_CASE("number formatting") {
    CHECK(format_exact(0.1) == "0.1");
    CHECK(format_exact(1e-20) == "1e-20");
    CHECK(std::stod(format_exact(0.45587501510602046)) == 0.45587501510602046);
    CHECK(format_sig6(0.45587501510602046) == "0.455875");
    CHECK(format_sig6(100) == "100");
}
