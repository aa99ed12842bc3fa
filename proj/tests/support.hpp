#pragma once

#include <selfsim/hurst.hpp>
#include <selfsim/series.hpp>
#include <selfsim/synthesis.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace testing {

inline selfsim::TimeSeries white_noise(std::size_t n, std::uint64_t seed, double sigma = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, sigma);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return selfsim::TimeSeries(std::move(v));
}

inline selfsim::TimeSeries fgn(double h, std::size_t n, std::uint64_t seed) {
    return selfsim::generate_fgn({.h = h, .n = n, .sigma = 1.0, .seed = seed});
}

/// Mean estimate over seeds 1..count.
inline double mean_h(selfsim::HurstMethod method, const std::function<selfsim::TimeSeries(std::uint64_t)>& make,
                     std::size_t count = 20) {
    double acc = 0.0;
    for (std::uint64_t s = 1; s <= count; ++s) acc += selfsim::estimate(method, make(s)).h;
    return acc / static_cast<double>(count);
}

inline selfsim::TimeSeries constant_series(std::size_t n, double c) {
    return selfsim::TimeSeries(std::vector<double>(n, c));
}

}  // namespace testing
