#include <doctest.h>

#include <cmath>
#include <random>

#include "macsel/energy.hpp"
#include "macsel/errors.hpp"

using namespace macsel;

namespace {

// Independent bisection on f(p) = p - RHS(p) over [0, 0.999].
double bisect_oracle(const CsmaInputs& in) {
    auto rhs = [&](double p) {
        double den = 1 - p - p * std::pow(2 * p, in.stages);
        double w = (1 - 2 * p) / den;
        return 1 - std::pow(1 - in.load * w * 2 / in.cw_min, in.n_nodes - 1);
    };
    double lo = 0, hi = 0.999;
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2;
        (mid - rhs(mid) <= 0 ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

TEST_CASE("collision probability at the default context") {
    NetworkContext ctx;
    auto s = csma_collision_probability(ctx);
    CHECK(s.p == doctest::Approx(2.4169048571387464e-05).epsilon(1e-9));
    CHECK(s.p == doctest::Approx(bisect_oracle(csma_inputs(ctx))).epsilon(1e-8));
    CHECK(std::abs(s.residual) <= kCollisionTolerance);
}

TEST_CASE("load is G dc / B in the literal mode") {
    NetworkContext ctx;
    auto in = csma_inputs(ctx);
    CHECK(in.load == doctest::Approx(20 * 0.05 / 256000.0));
    CHECK(in.n_nodes == 100);
    ctx.cap.service_rate_mode = ServiceRateMode::packet_rate;
    CHECK(csma_inputs(ctx).load == doctest::Approx(20 * 0.05 / (256000.0 / (1024 + 480))));
}

TEST_CASE("m = 0 collapses to a closed form") {
    CsmaInputs in{0.5, 4, 0, 2};
    auto s = solve_collision(in);
    CHECK(std::abs(s.p - 0.25) <= 1e-12);
    auto b = solve_collision_bisection(in);
    CHECK(std::abs(b.p - 0.25) <= 1e-12);
}

TEST_CASE("damped iteration and bisection agree") {
    for (double load : {1e-4, 1e-3, 5e-3, 0.01}) {
        for (int n : {2, 5, 20, 50}) {
            for (int m : {0, 3, 5}) {
                CsmaInputs in{load, 32, m, n};
                auto d = solve_collision_damped(in);
                REQUIRE(d.has_value());
                auto b = solve_collision_bisection(in);
                CHECK(std::abs(d->p - b.p) <= 1e-8);
                CHECK(std::abs(d->p - bisect_oracle(in)) <= 1e-8);
            }
        }
    }
}

TEST_CASE("zero load or a single node gives p = 0 exactly") {
    CHECK(solve_collision(CsmaInputs{0.0, 32, 5, 50}).p == 0.0);
    CHECK(solve_collision(CsmaInputs{0.3, 32, 5, 1}).p == 0.0);
    NetworkContext ctx;
    ctx.pkt_rate = 0;
    CHECK(csma_collision_probability(ctx).p == 0.0);
}

TEST_CASE("collision probability nondecreasing in load and N") {
    double prev = 0;
    for (double load = 0; load <= 0.02; load += 0.002) {
        double p = solve_collision(CsmaInputs{load, 32, 5, 20}).p;
        CHECK(p >= prev);
        prev = p;
    }
    prev = 0;
    for (int n = 1; n <= 60; n += 3) {
        double p = solve_collision(CsmaInputs{0.005, 32, 5, n}).p;
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("overload is reported as saturation") {
    CsmaInputs in{50.0, 2, 0, 200};
    CHECK_THROWS_AS(solve_collision_bisection(in), Error);
    try {
        solve_collision(in);
        FAIL("expected saturation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::saturated);
    }
}

TEST_CASE("rhs rejects an infeasible denominator") {
    CsmaInputs in{0.01, 32, 5, 10};
    CHECK_FALSE(collision_rhs(0.9999999, in).has_value());
    CHECK(collision_rhs(0.0, in).has_value());
}

TEST_CASE("expected attempts of CSMA") {
    CHECK(expected_attempts_csma(0) == 1.0);
    CHECK(expected_attempts_csma(0.25) == doctest::Approx(4.0 / 3.0));
    CHECK_THROWS_AS(expected_attempts_csma(1.0), Error);
    CHECK_THROWS_AS(expected_attempts_csma(-0.1), Error);
}

TEST_CASE("geometric retries match 1/(1-p) by Monte Carlo") {
    std::mt19937_64 rng(42);
    const int n = 1'000'000;
    for (double p : {0.1, 0.25}) {
        std::geometric_distribution<long> failures(1 - p);
        double sum = 0, sq = 0;
        for (int i = 0; i < n; ++i) {
            double a = 1.0 + static_cast<double>(failures(rng));
            sum += a;
            sq += a * a;
        }
        double mean = sum / n;
        double sd = std::sqrt((sq / n - mean * mean) / n);
        CHECK(std::abs(mean - expected_attempts_csma(p)) <= 3 * sd);
    }
}

TEST_CASE("preamble-sampling attempts") {
    NetworkContext ctx;
    // G' = 20 * 0.04 * (10240 + 1024) / 256000
    CHECK(psa_offered_load(ctx) == doctest::Approx(0.0352).epsilon(1e-12));
    CHECK(expected_attempts_psa(0) == 1.0);
    CHECK(expected_attempts_psa(0.1) == doctest::Approx(std::exp(0.2)));
    CHECK_THROWS_AS(expected_attempts_psa(-1), Error);

    std::mt19937_64 rng(7);
    const double g = 0.1;
    std::geometric_distribution<long> failures(std::exp(-2 * g));
    const int n = 1'000'000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
        double a = 1.0 + static_cast<double>(failures(rng));
        sum += a;
        sq += a * a;
    }
    double mean = sum / n;
    double sd = std::sqrt((sq / n - mean * mean) / n);
    CHECK(std::abs(mean - expected_attempts_psa(g)) <= 3 * sd);
}

TEST_CASE("overhearer count is clamped") {
    NetworkContext ctx;
    CHECK(overhearing_neighbors(ctx) == doctest::Approx(3.0));
    CHECK_FALSE(sparse_neighborhood(ctx));
    ctx.n_nodes = 10;  // N' = 0.4
    CHECK(overhearing_neighbors(ctx) == 0.0);
    CHECK(sparse_neighborhood(ctx));
}

// Oracle values below come from a separate evaluation of the formulas in
// double precision outside this code base.
TEST_CASE("scheduled energy at the default context") {
    NetworkContext ctx;
    RadioProfile prof;
    auto e = scheduled_energy(ctx, prof);
    CHECK(e.collision == 0);
    CHECK(e.overhearing == 0);
    CHECK(e.idle_listening == doctest::Approx(0.10586666666666668).epsilon(1e-12));
    CHECK(e.overhead == doctest::Approx(0.017210133333333332).epsilon(1e-12));
    CHECK(e.total == doctest::Approx(0.12307680000000001).epsilon(1e-12));

    auto o = scheduled_overhead(ctx, prof);
    CHECK(o.timing_error == doctest::Approx(0.02 * 20 * 1.5 * 0.001));
    CHECK(o.duty_cycling == doctest::Approx(2 * 400 * 2e-5));
    CHECK(o.sum() == doctest::Approx(e.overhead));
}

TEST_CASE("scheduled idle vanishes when every cell is busy") {
    NetworkContext ctx;
    RadioProfile prof;
    ctx.pkt_rate = 400 / ctx.sched.frame_len;  // one packet per link per frame
    CHECK(scheduled_energy(ctx, prof).idle_listening == doctest::Approx(0.0));
}

TEST_CASE("common-active energy at the default context") {
    NetworkContext ctx;
    RadioProfile prof;
    auto e = cap_energy(ctx, prof);
    CHECK(e.collision == doctest::Approx(7.888968122527728e-10).epsilon(1e-7));
    CHECK(e.overhearing == doctest::Approx(0.003072).epsilon(1e-12));
    CHECK(e.idle_listening == doctest::Approx(0.0906).epsilon(1e-12));
    CHECK(e.overhead == doctest::Approx(0.0042848).epsilon(1e-12));
    CHECK(e.total == doctest::Approx(0.09795680078889682).epsilon(1e-12));
}

TEST_CASE("common-active collision term is zero without collisions") {
    NetworkContext ctx;
    RadioProfile prof;
    CHECK(cap_energy(ctx, prof, 0.0).collision == 0.0);
    CHECK(cap_energy(ctx, prof, 0.5).collision > cap_energy(ctx, prof, 0.1).collision);
}

TEST_CASE("preamble-sampling energy at the default context") {
    NetworkContext ctx;
    RadioProfile prof;
    auto e = psp_energy(ctx, prof);
    CHECK(e.collision == doctest::Approx(6.677086175528913e-05).epsilon(1e-12));
    CHECK(e.overhearing == doctest::Approx(0.001152).epsilon(1e-12));
    CHECK(e.idle_listening == doctest::Approx(0.0726).epsilon(1e-12));
    CHECK(e.overhead == doctest::Approx(0.0661792).epsilon(1e-12));
    CHECK(e.total == doctest::Approx(0.13999797086175528).epsilon(1e-12));
}

TEST_CASE("breakdown totals are the exact component sums") {
    NetworkContext ctx;
    RadioProfile prof;
    for (double g : {0.0, 1.0, 20.0, 100.0}) {
        ctx.pkt_rate = g;
        for (auto e : {scheduled_energy(ctx, prof), cap_energy(ctx, prof), psp_energy(ctx, prof)}) {
            CHECK(e.total == e.collision + e.overhearing + e.idle_listening + e.overhead);
            CHECK(e.collision >= 0);
            CHECK(e.idle_listening >= 0);
        }
    }
}

TEST_CASE("no traffic means no collision or overhearing energy") {
    NetworkContext ctx;
    RadioProfile prof;
    ctx.pkt_rate = 0;
    auto c = cap_energy(ctx, prof);
    auto p = psp_energy(ctx, prof);
    CHECK(c.collision == 0);
    CHECK(c.overhearing == 0);
    CHECK(p.collision == 0);
    CHECK(p.overhearing == 0);
    // PSP idle: N P_idle T_check / T_interval
    CHECK(p.idle_listening == doctest::Approx(100 * 0.02 * 0.0015 / 0.04));
}
