#pragma once

#include <complex>
#include <span>
#include <vector>

namespace selfsim::detail {

/// Forward DFT of a real sequence, X_j = sum_t x_t exp(-2 pi i j t / n),
/// returning bins j = 0..n/2.
[[nodiscard]] std::vector<std::complex<double>> real_dft(std::span<const double> input);

/// Forward DFT of a complex sequence (same sign convention as real_dft).
[[nodiscard]] std::vector<std::complex<double>> complex_dft(std::span<const std::complex<double>> input);

}  // namespace selfsim::detail
