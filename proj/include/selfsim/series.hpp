#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace selfsim {

/// Uniformly sampled, finite, non-empty real sequence.
///
/// `dt` is the sampling interval in seconds (1.0 for unit-tick traces). The
/// value unit is carried by context: milliseconds for delay traces, normalized
/// power for reactor output.
class TimeSeries {
public:
    /// Throws Error(InvalidSeries) if `values` is empty, holds a non-finite
    /// element, or `dt` is not a positive finite number.
    explicit TimeSeries(std::vector<double> values, double dt = 1.0);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

    /// True when every element compares equal to the first one.
    [[nodiscard]] bool is_constant() const noexcept;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<double> values_;
    double dt_;
};

/// Population (1/N) moments of a series.
struct SummaryStats {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double kurtosis_raw = 0.0;
    double kurtosis_excess = 0.0;
    std::size_t n = 0;
};

/// Mean, variance, skewness and kurtosis with 1/N normalization.
/// Skewness and kurtosis are standardized by the population standard
/// deviation. Throws TooShort for fewer than two samples and
/// DegenerateSeries when the variance is zero.
[[nodiscard]] SummaryStats summary_stats(const TimeSeries& series);

/// Mean and population variance only; tolerates zero variance.
/// Throws TooShort for fewer than two samples.
[[nodiscard]] SummaryStats mean_variance(const TimeSeries& series);

/// output[k] = population variance of values[0..k]; output[0] = 0.
/// Uses Welford's update, so the last element matches summary_stats().variance.
[[nodiscard]] TimeSeries running_variance(const TimeSeries& series);

/// Biased (fixed 1/N divisor) sample autocorrelation for lags 0..max_lag.
/// Throws DegenerateSeries on zero variance, LagTooLarge when max_lag >= size.
[[nodiscard]] std::vector<double> autocorrelation(const TimeSeries& series, std::size_t max_lag);

/// Biased sample autocovariance for lags 0..max_lag (no variance check).
[[nodiscard]] std::vector<double> autocovariance(const TimeSeries& series, std::size_t max_lag);

namespace detail {

[[nodiscard]] double mean(std::span<const double> data) noexcept;
/// Population variance about the sample mean.
[[nodiscard]] double population_variance(std::span<const double> data) noexcept;

}  // namespace detail

}  // namespace selfsim
