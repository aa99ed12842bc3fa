#include "selfsim/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "fft.hpp"
#include "selfsim/error.hpp"

namespace selfsim {

double fgn_autocovariance(double h, double sigma, std::size_t lag) {
    if (lag == 0) return sigma * sigma;
    const double k = static_cast<double>(lag);
    const double e = 2.0 * h;
    return 0.5 * sigma * sigma * (std::pow(k + 1.0, e) - 2.0 * std::pow(k, e) + std::pow(k - 1.0, e));
}

TimeSeries generate_fgn(const FgnSpec& spec) {
    if (!(spec.h > 0.0 && spec.h < 1.0)) {
        throw Error(ErrorKind::InvalidH, "Hurst exponent must lie in (0, 1), got " + std::to_string(spec.h));
    }
    if (spec.n < 2) throw Error(ErrorKind::InvalidArgument, "fGn length must be at least 2");
    if (!(spec.sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be positive");

    // First row of the 2n-point circulant: gamma(0..n), then gamma(n-1..1).
    const std::size_t n = spec.n;
    const std::size_t size = 2 * n;
    std::vector<std::complex<double>> row(size);
    for (std::size_t k = 0; k <= n; ++k) row[k] = fgn_autocovariance(spec.h, 1.0, k);
    for (std::size_t k = n + 1; k < size; ++k) row[k] = row[size - k];

    const auto eigen = detail::complex_dft(row);

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::complex<double>> weighted(size);
    for (std::size_t k = 0; k < size; ++k) {
        const double lambda = eigen[k].real();
        if (lambda < -1e-9) {
            throw Error(ErrorKind::EmbeddingFailure, "negative circulant eigenvalue " + std::to_string(lambda));
        }
        const double scale = std::sqrt(std::max(lambda, 0.0) / static_cast<double>(size));
        const double re = normal(rng);
        const double im = normal(rng);
        weighted[k] = scale * std::complex<double>(re, im);
    }
    // Real and imaginary parts of the transform are independent draws with the
    // target covariance; only the real part is used.
    const auto field = detail::complex_dft(weighted);
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) out[t] = spec.sigma * field[t].real();
    return TimeSeries(std::move(out));
}

TimeSeries delay_from_noise(const TimeSeries& noise, double mu, double sigma_d, double tau_max) {
    if (!(mu >= 0.0) || !(mu <= tau_max)) {
        throw Error(ErrorKind::InvalidBounds, "mean delay must lie in [0, tau_max]");
    }
    if (!(sigma_d > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma_d must be positive");
    std::vector<double> tau(noise.size());
    for (std::size_t k = 0; k < tau.size(); ++k) tau[k] = std::clamp(mu + sigma_d * noise[k], 0.0, tau_max);
    return TimeSeries(std::move(tau), noise.dt());
}

TimeSeries generate_delay_trace(const FgnSpec& spec, double mu, double sigma_d, double tau_max) {
    if (!(mu >= 0.0) || !(mu <= tau_max)) {
        throw Error(ErrorKind::InvalidBounds, "mean delay must lie in [0, tau_max]");
    }
    FgnSpec unit = spec;
    unit.sigma = 1.0;
    return delay_from_noise(generate_fgn(unit), mu, sigma_d, tau_max);
}

double clamp_fraction(const TimeSeries& noise, double mu, double sigma_d, double tau_max) {
    std::size_t clamped = 0;
    for (double g : noise.values()) {
        const double raw = mu + sigma_d * g;
        if (raw < 0.0 || raw > tau_max) ++clamped;
    }
    return static_cast<double>(clamped) / static_cast<double>(noise.size());
}

}  // namespace selfsim
