#include <catch_amalgamated.hpp>

#include <selfsim/error.hpp>
#include <selfsim/reactor.hpp>
#include <selfsim/series.hpp>
#include <selfsim/synthesis.hpp>

#include "oracles.hpp"

#include <cmath>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using selfsim::ProgramKind;
using selfsim::ReactivityProgram;
using selfsim::ReactorParams;

namespace {

const ReactorParams kDefaults{};

ReactivityProgram step(double rho) { return {ProgramKind::Step, 0.0, rho, 0.0}; }

double final_error(double dt, double t_end) {
    const auto states = selfsim::simulate(kDefaults, step(0.0022), t_end, dt);
    const double exact = oracle::analytic_power(0.0022, kDefaults.beta, kDefaults.lambda, kDefaults.gen_time, t_end);
    return std::abs(states.back().p - exact);
}

}  // namespace

TEST_CASE("zero reactivity holds the equilibrium", "[reactor]") {
    const auto states = selfsim::simulate(kDefaults, {ProgramKind::Constant, 0.0, 0.0, 0.0}, 100.0, 1e-3);
    CHECK(states.size() == 100001);
    const double c0 = kDefaults.equilibrium_precursors();
    for (std::size_t i = 0; i < states.size(); i += 997) {
        CHECK_THAT(states[i].p, WithinAbs(1.0, 1e-9));
        CHECK_THAT(states[i].c, WithinRel(c0, 1e-9));
    }
    CHECK_THAT(states.back().t, WithinAbs(100.0, 1e-9));
}

TEST_CASE("prompt jump after a positive step", "[reactor]") {
    const double rho = 0.0022;
    const double jump = kDefaults.beta / (kDefaults.beta - rho);
    const auto coarse = selfsim::simulate(kDefaults, step(rho), 10.0, 1e-3);
    const auto fine = selfsim::simulate(kDefaults, step(rho), 0.05, 1e-5);
    const double p_coarse = selfsim::power_at(coarse, 0.05);
    CHECK_THAT(p_coarse, WithinRel(jump, 0.05));
    CHECK_THAT(fine.back().p, WithinRel(jump, 0.05));
    CHECK_THAT(p_coarse, WithinRel(fine.back().p, 1e-6));
    CHECK_THAT(p_coarse,
               WithinRel(oracle::analytic_power(rho, kDefaults.beta, kDefaults.lambda, kDefaults.gen_time, 0.05), 1e-7));

    for (std::size_t i = 101; i < coarse.size(); ++i) CHECK(coarse[i].p > coarse[i - 1].p);
}

TEST_CASE("negative step lowers the power", "[reactor]") {
    const auto states = selfsim::simulate(kDefaults, step(-0.002), 5.0, 1e-3);
    for (std::size_t i = 1; i < states.size(); ++i) CHECK(states[i].p < 1.0);
}

TEST_CASE("RK4 global error is fourth order", "[reactor][oracle]") {
    // Measured while the prompt mode is still alive; later the error sits at rounding level.
    const double e1 = final_error(1e-3, 0.05);
    const double e2 = final_error(5e-4, 0.05);
    INFO("errors " << e1 << " " << e2);
    CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("late-time period follows the inhour root", "[reactor][oracle]") {
    const double rho = 0.0022;
    const double dt = 1e-3;
    const auto states = selfsim::simulate(kDefaults, step(rho), 50.0 + dt, dt);
    const std::size_t i = states.size() - 2;
    const double growth = (std::log(states[i + 1].p) - std::log(states[i - 1].p)) / (2.0 * dt);
    const double root = oracle::inhour_root(rho, kDefaults.beta, kDefaults.lambda, kDefaults.gen_time);
    CHECK_THAT(growth, WithinRel(root, 0.01));
}

TEST_CASE("ramp and super-prompt-critical programs", "[reactor]") {
    const ReactivityProgram ramp{ProgramKind::Ramp, 0.0, 0.002, 2.0};
    CHECK(ramp.at(-1.0) == 0.0);
    CHECK_THAT(ramp.at(1.0), WithinAbs(0.001, 1e-15));
    CHECK(ramp.at(3.0) == 0.002);
    CHECK_FALSE(ramp.super_prompt_critical(kDefaults));
    CHECK(step(0.007).super_prompt_critical(kDefaults));
}

TEST_CASE("simulate guards", "[reactor]") {
    CHECK_THROWS_AS(selfsim::simulate(kDefaults, step(0.001), 1.0, 2e-3), selfsim::Error);
    CHECK_THROWS_AS(selfsim::simulate(kDefaults, step(0.001), -1.0, 1e-4), selfsim::Error);
    ReactorParams bad = kDefaults;
    bad.beta = 0.0;
    CHECK_THROWS_AS(bad.validate(), selfsim::Error);
}

TEST_CASE("identity and constant-delay channels", "[reactor]") {
    const auto states = selfsim::simulate(kDefaults, step(0.0022), 2.0, 1e-3);
    const std::size_t ticks = selfsim::tick_count(states, 0.01);
    REQUIRE(ticks == 201);

    const auto clean = selfsim::sample_on_ticks(states, 0.01);
    const auto identity = selfsim::measure_through_channel(
        states, {0.01, selfsim::TimeSeries(std::vector<double>(ticks, 0.0))});
    for (std::size_t k = 0; k < ticks; ++k) {
        CHECK(identity[k] == states[10 * k].p);
        CHECK(clean[k] == states[10 * k].p);
    }

    const auto shifted = selfsim::measure_through_channel(
        states, {0.01, selfsim::TimeSeries(std::vector<double>(ticks, 0.1))});
    for (std::size_t k = 0; k < ticks; ++k) {
        if (k < 10) {
            CHECK(shifted[k] == 1.0);
        } else {
            CHECK_THAT(shifted[k], WithinAbs(states[10 * k - 100].p, 1e-12));
        }
    }

    CHECK_THROWS_AS(selfsim::measure_through_channel(states, {0.01, selfsim::TimeSeries({0.0, 0.0})}),
                    selfsim::Error);
}

TEST_CASE("power interpolation", "[reactor]") {
    const auto states = selfsim::simulate(kDefaults, step(0.0022), 0.01, 1e-3);
    CHECK(selfsim::power_at(states, 0.0) == states[0].p);
    CHECK_THAT(selfsim::power_at(states, 0.0015), WithinAbs(0.5 * (states[1].p + states[2].p), 1e-15));
    CHECK(selfsim::power_at(states, -3.0) == states[0].p);
}

TEST_CASE("long-range dependent delays corrupt the transient", "[reactor][montecarlo]") {
    const auto states = selfsim::simulate(kDefaults, step(0.0022), 10.0, 1e-3);
    const auto clean = selfsim::sample_on_ticks(states, 0.01);
    const auto delays =
        selfsim::generate_delay_trace({.h = 0.88, .n = clean.size(), .sigma = 1.0, .seed = 5}, 0.127, 0.03, 0.5);
    const auto measured = selfsim::measure_through_channel(states, {0.01, delays});
    std::vector<double> error(clean.size());
    for (std::size_t k = 0; k < error.size(); ++k) error[k] = measured[k] - clean[k];
    const selfsim::TimeSeries e(error);
    CHECK(selfsim::summary_stats(e).variance > 0.0);
    const auto rv = selfsim::running_variance(e);
    CHECK(rv[50] >= rv[2]);
    CHECK(rv[50] > 0.0);
}
