#include <doctest.h>

#include <cmath>

#include "macsel/delay.hpp"
#include "macsel/energy.hpp"
#include "macsel/errors.hpp"

using namespace macsel;

TEST_CASE("scheduled delay is half a frame plus a slot") {
    NetworkContext ctx;
    auto d = scheduled_delay(ctx);
    CHECK(d.seconds == doctest::Approx(0.08));
    CHECK(d.category == "ScP");

    ctx.sched.frame_len = 0.58875;
    ctx.sched.slot_len = 0.019625;
    // 0.58875 / 2 + 0.58875 / 30
    CHECK(scheduled_delay(ctx).seconds == doctest::Approx(0.314).epsilon(1e-14));
}

TEST_CASE("scheduled delay ignores traffic") {
    NetworkContext ctx;
    double base = scheduled_delay(ctx).seconds;
    ctx.pkt_rate = 500;
    ctx.n_nodes = 7;
    CHECK(scheduled_delay(ctx).seconds == base);
}

TEST_CASE("common-active delay at the default context") {
    NetworkContext ctx;
    auto d = cap_delay(ctx);
    CHECK(d.seconds == doctest::Approx(0.45587501510602046).epsilon(1e-12));
    CHECK(d.category == "CAP");
}

TEST_CASE("common-active delay without collisions") {
    NetworkContext ctx;
    // (0.95^2)/2 + (160 + 1024) / 256000
    CHECK(cap_delay(ctx, 0.0).seconds == doctest::Approx(0.45125 + 1184.0 / 256000));
    CHECK(cap_delay(ctx, 0.5).seconds > cap_delay(ctx, 0.0).seconds);
    CHECK_THROWS_AS(cap_delay(ctx, 1.0), Error);
}

TEST_CASE("full duty cycle removes the sleep wait") {
    NetworkContext ctx;
    ctx.cap.duty_cycle = 1.0;
    CHECK(cap_delay(ctx, 0.0).seconds == doctest::Approx(1184.0 / 256000));
}

TEST_CASE("preamble-sampling delay at the default context") {
    NetworkContext ctx;
    auto d = psp_delay(ctx);
    CHECK(d.seconds == doctest::Approx(0.04720923989490781).epsilon(1e-12));
    CHECK(d.category == "PSP");
    ctx.pkt_rate = 0;
    CHECK(psp_delay(ctx).seconds == doctest::Approx(11264.0 / 256000));
}

TEST_CASE("preamble-sampling delay grows with traffic") {
    NetworkContext ctx;
    double prev = 0;
    for (double g = 0; g <= 200; g += 20) {
        ctx.pkt_rate = g;
        double t = psp_delay(ctx).seconds;
        CHECK(t > prev);
        prev = t;
    }
}
