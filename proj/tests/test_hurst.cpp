#include <catch_amalgamated.hpp>

#include <selfsim/error.hpp>
#include <selfsim/hurst.hpp>

#include "oracles.hpp"
#include "support.hpp"

#include <cmath>

using Catch::Matchers::WithinAbs;
using selfsim::ErrorKind;
using selfsim::HurstMethod;
using selfsim::TimeSeries;

namespace {

std::vector<std::pair<double, double>> pts(std::initializer_list<std::pair<double, double>> in) { return in; }

ErrorKind error_of(HurstMethod method, const TimeSeries& series) {
    try {
        (void)selfsim::estimate(method, series);
    } catch (const selfsim::Error& e) {
        return e.kind();
    }
    FAIL("estimator did not throw");
    return ErrorKind::InvalidArgument;
}

auto fgn_maker(double h, std::size_t n = 8192) {
    return [h, n](std::uint64_t seed) { return testing::fgn(h, n, seed); };
}

auto white_maker(std::size_t n = 8192) {
    return [n](std::uint64_t seed) { return testing::white_noise(n, 1000 + seed); };
}

bool in_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

}  // namespace

TEST_CASE("log-log fit", "[hurst]") {
    const auto exact = selfsim::loglog_fit(pts({{1, 1}, {2, 4}, {4, 16}}));
    CHECK_THAT(exact.slope, WithinAbs(2.0, 1e-14));
    CHECK_THAT(exact.intercept, WithinAbs(0.0, 1e-14));
    CHECK_THAT(exact.r_squared, WithinAbs(1.0, 1e-14));

    CHECK_THAT(selfsim::loglog_fit(pts({{1, 3}, {10, 3}, {100, 3}})).slope, WithinAbs(0.0, 1e-15));

    const auto raw = pts({{1, 1}, {2, 2.2}, {4, 3.7}, {8, 8.5}});
    std::vector<std::pair<double, double>> logged;
    for (const auto& [x, y] : raw) logged.emplace_back(std::log(x), std::log(y));
    const auto [slope, intercept] = oracle::ols_raw_sums(logged);
    const auto fit = selfsim::loglog_fit(raw);
    CHECK_THAT(fit.slope, WithinAbs(slope, 1e-12));
    CHECK_THAT(fit.intercept, WithinAbs(intercept, 1e-12));
    CHECK(fit.r_squared > 0.9);
    CHECK(fit.r_squared <= 1.0);

    CHECK_THROWS_AS(selfsim::loglog_fit(pts({{1, 1}})), selfsim::Error);
    CHECK_THROWS_AS(selfsim::loglog_fit(pts({{1, 1}, {2, 0}})), selfsim::Error);
    CHECK_THROWS_AS(selfsim::loglog_fit(pts({{2, 1}, {2, 3}})), selfsim::Error);
}

TEST_CASE("aggregation", "[hurst]") {
    const auto a = selfsim::aggregate(TimeSeries({1, 2, 3, 4}), 2);
    CHECK(std::vector<double>(a.values().begin(), a.values().end()) == std::vector<double>{1.5, 3.5});
    const auto b = selfsim::aggregate(TimeSeries({1, 2, 3, 4, 5}), 2);
    CHECK(std::vector<double>(b.values().begin(), b.values().end()) == std::vector<double>{1.5, 3.5});
    const auto x = testing::white_noise(37, 1);
    CHECK(selfsim::aggregate(x, 1) == x);
    CHECK_THROWS_AS(selfsim::aggregate(x, 38), selfsim::Error);
}

TEST_CASE("scale ladder", "[hurst]") {
    const auto ladder = selfsim::scale_ladder(8192, {});
    REQUIRE(ladder.size() >= 3);
    CHECK(ladder.front() == 8);
    CHECK(ladder.back() <= 8192 / 20 + 1);
    for (std::size_t i = 1; i < ladder.size(); ++i) CHECK(ladder[i] > ladder[i - 1]);
}

TEST_CASE("every estimator rejects constant input", "[hurst]") {
    const auto flat = testing::constant_series(8192, 4.2);
    for (const auto method : selfsim::kAllHurstMethods) {
        INFO(selfsim::method_name(method));
        CHECK(error_of(method, flat) == ErrorKind::DegenerateSeries);
    }
}

TEST_CASE("length preconditions", "[hurst]") {
    CHECK(error_of(HurstMethod::Boxper, testing::white_noise(63, 1)) == ErrorKind::SeriesTooShort);
    CHECK(error_of(HurstMethod::Per, testing::white_noise(63, 1)) == ErrorKind::SeriesTooShort);
    CHECK(error_of(HurstMethod::RS, testing::white_noise(20, 1)) == ErrorKind::SeriesTooShort);
}

TEST_CASE("estimates are invariant to positive scaling and shifts", "[hurst][property]") {
    const auto base = testing::fgn(0.7, 4096, 9);
    std::vector<double> mapped;
    for (double v : base.values()) mapped.push_back(2.5 * v - 40.0);
    const TimeSeries moved(mapped);
    for (const auto method : selfsim::kAllHurstMethods) {
        INFO(selfsim::method_name(method));
        CHECK_THAT(selfsim::estimate(method, moved).h, WithinAbs(selfsim::estimate(method, base).h, 1e-9));
    }
}

TEST_CASE("method names and keys round trip", "[hurst]") {
    for (const auto method : selfsim::kAllHurstMethods) CHECK(selfsim::parse_method(selfsim::method_key(method)) == method);
    CHECK_FALSE(selfsim::parse_method("whittle").has_value());
    CHECK(selfsim::method_name(HurstMethod::RS) == "R/S");
}

TEST_CASE("white-noise and fGn calibration bands", "[hurst][montecarlo]") {
    using M = HurstMethod;
    struct Band {
        M method;
        double h;
        std::size_t n;
        double lo;
        double hi;
    };
    const Band bands[] = {
        {M::RS, 0.5, 8192, 0.45, 0.65},       {M::RS, 0.8, 8192, 0.7, 0.9},
        {M::Aggvar, 0.5, 8192, 0.4, 0.6},     {M::Aggvar, 0.9, 8192, 0.8, 1.0},
        {M::Absval, 0.5, 8192, 0.4, 0.6},     {M::Absval, 0.8, 8192, 0.7, 0.9},
        {M::Per, 0.5, 8192, 0.4, 0.6},        {M::Per, 0.9, 8192, 0.8, 1.0},
        {M::Boxper, 0.5, 8192, 0.4, 0.6},     {M::Boxper, 0.7, 8192, 0.6, 0.8},
        {M::Diffvar, 0.8, 16384, 0.65, 0.95}, {M::Diffvar, 0.5, 16384, 0.35, 0.65},
        {M::Higuchi, 0.9, 8192, 0.8, 1.0},    {M::Higuchi, 0.5, 8192, 0.4, 0.6},
        {M::Peng, 0.8, 8192, 0.7, 0.9},       {M::Peng, 0.5, 8192, 0.4, 0.6},
    };
    for (const auto& band : bands) {
        const double mean = band.h == 0.5 ? testing::mean_h(band.method, white_maker(band.n))
                                          : testing::mean_h(band.method, fgn_maker(band.h, band.n));
        INFO(selfsim::method_name(band.method) << " H=" << band.h << " mean=" << mean);
        CHECK(in_band(mean, band.lo, band.hi));
    }
}

TEST_CASE("estimate_all reports all methods with exact identities", "[hurst]") {
    const auto x = testing::fgn(0.8, 8192, 12);
    const auto results = selfsim::estimate_all(x);
    REQUIRE(results.size() == 8);
    for (std::size_t i = 0; i < results.size(); ++i) {
        CHECK(results[i].method == selfsim::kAllHurstMethods[i]);
        REQUIRE(results[i].estimate.has_value());
        const auto& e = *results[i].estimate;
        CHECK(e.alpha == 2.0 * e.h - 1.0);
        CHECK(e.fractal_dim == 2.0 - e.h);
    }

    const auto threaded = selfsim::estimate_all(x, {}, 4);
    for (std::size_t i = 0; i < results.size(); ++i) CHECK(threaded[i].estimate->h == results[i].estimate->h);

    const auto strong = selfsim::estimate_all(testing::fgn(0.9, 8192, 13));
    for (const auto& r : strong) {
        INFO(selfsim::method_name(r.method));
        CHECK(r.estimate->h > 0.5);
    }
}

TEST_CASE("estimate_all captures per-method failures", "[hurst]") {
    const auto results = selfsim::estimate_all(testing::constant_series(512, 1.0));
    for (const auto& r : results) {
        CHECK_FALSE(r.estimate.has_value());
        CHECK(r.error == ErrorKind::DegenerateSeries);
    }
}

TEST_CASE("estimator config validation", "[hurst]") {
    selfsim::EstimatorConfig bad;
    bad.num_scales = 2;
    CHECK_THROWS_AS(bad.validate(), selfsim::Error);
    bad = {};
    bad.max_block_fraction = 0.0;
    CHECK_THROWS_AS(bad.validate(), selfsim::Error);
    bad = {};
    bad.low_freq_fraction = 1.5;
    CHECK_THROWS_AS(bad.validate(), selfsim::Error);
}
