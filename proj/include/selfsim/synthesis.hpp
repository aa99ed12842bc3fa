#pragma once

#include <cstddef>
#include <cstdint>

#include "selfsim/series.hpp"

namespace selfsim {

struct FgnSpec {
    double h = 0.5;
    std::size_t n = 1024;
    double sigma = 1.0;  // marginal standard deviation
    std::uint64_t seed = 0;
};

/// Exact fGn autocovariance
/// gamma(k) = sigma^2 / 2 * (|k+1|^{2h} - 2|k|^{2h} + |k-1|^{2h}).
[[nodiscard]] double fgn_autocovariance(double h, double sigma, std::size_t lag);

/// Fractional Gaussian noise by circulant embedding (Davies-Harte / Dietrich-Newsam).
/// Same spec, same output bits. Throws InvalidH for h outside (0,1),
/// InvalidArgument for n < 2 or sigma <= 0, and EmbeddingFailure if an
/// eigenvalue of the embedding falls below -1e-9.
[[nodiscard]] TimeSeries generate_fgn(const FgnSpec& spec);

/// Clamped delay trace: tau_k = clamp(mu + sigma_d * G_k, 0, tau_max), with
/// G drawn by generate_fgn(spec) at unit variance (spec.sigma is ignored).
/// Throws InvalidBounds when mu > tau_max or mu < 0.
[[nodiscard]] TimeSeries generate_delay_trace(const FgnSpec& spec, double mu, double sigma_d, double tau_max);

/// Applies the clamp of generate_delay_trace to an existing unit-variance noise path.
[[nodiscard]] TimeSeries delay_from_noise(const TimeSeries& noise, double mu, double sigma_d, double tau_max);

/// Fraction of samples of `noise` that generate_delay_trace would clamp.
[[nodiscard]] double clamp_fraction(const TimeSeries& noise, double mu, double sigma_d, double tau_max);

}  // namespace selfsim
