#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "selfsim/series.hpp"

namespace selfsim {

struct MovingAverageConfig {
    std::size_t window = 11;  // odd
    /// Optional weights for offsets -window/2..window/2; must sum to 1.
    std::optional<std::vector<double>> weights;
    /// Emit only the n - window + 1 fully covered points.
    bool valid_only = false;
};

struct SavitzkyGolayConfig {
    std::size_t n_left = 5;
    std::size_t n_right = 5;
    std::size_t degree = 3;
    bool valid_only = false;
};

struct KernelConfig {
    double bandwidth = 4.0;  // in sample-index units
};

/// Centered weighted moving average. Near the ends the window is clipped to
/// the available samples and the surviving weights are renormalized, so the
/// output keeps the input length. Throws WindowTooLarge when window > size,
/// InvalidArgument for an even window or bad weights.
[[nodiscard]] TimeSeries moving_average(const TimeSeries& series, const MovingAverageConfig& config = {});

/// Savitzky-Golay convolution weights for offsets -n_left..n_right: the
/// least-squares polynomial of the given degree evaluated at offset 0.
/// Throws RankDeficient when the design matrix is singular.
[[nodiscard]] std::vector<double> savgol_coefficients(const SavitzkyGolayConfig& config);

/// Weights that evaluate the local least-squares polynomial at `position`
/// (an offset in -n_left..n_right) rather than at the window center.
[[nodiscard]] std::vector<double> savgol_coefficients_at(const SavitzkyGolayConfig& config, long position);

/// Savitzky-Golay smoothing. Points closer than n_left / n_right to an end are
/// evaluated on the first (last) full window at their own offset, so
/// polynomials up to `degree` are reproduced everywhere.
[[nodiscard]] TimeSeries savgol_smooth(const TimeSeries& series, const SavitzkyGolayConfig& config = {});

/// Nadaraya-Watson regression on the sample index with Gaussian kernel
/// exp(-t^2/2), t = |i - x0| / bandwidth.
[[nodiscard]] TimeSeries kernel_smooth(const TimeSeries& series, const KernelConfig& config = {});

}  // namespace selfsim
