#pragma once

#include <cstddef>
#include <vector>

#include "selfsim/series.hpp"

namespace selfsim {

/// Frequency/power pairs. Frequencies are in radians per sample, strictly
/// increasing inside (0, pi]; the DC bin is never included.
struct Spectrum {
    std::vector<double> frequencies;
    std::vector<double> power;
};

enum class Window { Hann, Rectangular };

struct WelchConfig {
    std::size_t segment_length = 256;
    double overlap_fraction = 0.5;
    Window window = Window::Hann;
};

/// Raw periodogram I(xi_j) = |sum_t x_t e^{i t xi_j}|^2 / (2 pi N) at the
/// Fourier frequencies xi_j = 2 pi j / N, j = 1..floor(N/2).
///
/// The series mean is removed before the transform; this leaves every j >= 1
/// ordinate unchanged and makes a constant input map to exact zeros.
/// Throws SeriesTooShort below 8 samples.
[[nodiscard]] Spectrum periodogram(const TimeSeries& series);

/// Welch estimate: segments of `segment_length` samples, advanced by
/// round(segment_length * (1 - overlap_fraction)), each detrended by its mean,
/// tapered, and transformed. Segment ordinates are |sum_t w_t x_t e^{-i w t}|^2
/// / (2 pi sum_t w_t^2), so a rectangular window, zero overlap and
/// segment_length = N reproduce periodogram() exactly (normalization constant 1).
/// Frequencies 2 pi j / segment_length, j = 1..segment_length/2.
[[nodiscard]] Spectrum welch_psd(const TimeSeries& series, const WelchConfig& config = {});

}  // namespace selfsim
