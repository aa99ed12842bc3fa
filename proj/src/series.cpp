#include "selfsim/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "selfsim/error.hpp"

namespace selfsim {

TimeSeries::TimeSeries(std::vector<double> values, double dt) : values_(std::move(values)), dt_(dt) {
    if (values_.empty()) {
        throw Error(ErrorKind::InvalidSeries, "series must hold at least one value");
    }
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw Error(ErrorKind::InvalidSeries, "sampling interval must be positive and finite");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw Error(ErrorKind::InvalidSeries, "non-finite value at index " + std::to_string(i));
        }
    }
}

bool TimeSeries::is_constant() const noexcept {
    const double first = values_.front();
    return std::all_of(values_.begin(), values_.end(), [first](double v) { return v == first; });
}

namespace detail {

double mean(std::span<const double> data) noexcept {
    double sum = 0.0;
    for (double v : data) sum += v;
    return sum / static_cast<double>(data.size());
}

double population_variance(std::span<const double> data) noexcept {
    const double m = mean(data);
    double acc = 0.0;
    for (double v : data) acc += (v - m) * (v - m);
    return acc / static_cast<double>(data.size());
}

}  // namespace detail

SummaryStats mean_variance(const TimeSeries& series) {
    if (series.size() < 2) {
        throw Error(ErrorKind::TooShort, "need at least 2 samples, got " + std::to_string(series.size()));
    }
    SummaryStats s;
    s.n = series.size();
    s.mean = detail::mean(series.values());
    // An exactly constant series can still show a rounding residue in the mean.
    s.variance = series.is_constant() ? 0.0 : detail::population_variance(series.values());
    return s;
}

SummaryStats summary_stats(const TimeSeries& series) {
    SummaryStats s = mean_variance(series);
    if (s.variance == 0.0) {
        throw Error(ErrorKind::DegenerateSeries, "zero variance: skewness and kurtosis undefined");
    }
    const double sd = std::sqrt(s.variance);
    double m3 = 0.0;
    double m4 = 0.0;
    for (double v : series.values()) {
        const double z = (v - s.mean) / sd;
        const double z2 = z * z;
        m3 += z2 * z;
        m4 += z2 * z2;
    }
    const auto n = static_cast<double>(s.n);
    s.skewness = m3 / n;
    s.kurtosis_raw = m4 / n;
    s.kurtosis_excess = s.kurtosis_raw - 3.0;
    return s;
}

TimeSeries running_variance(const TimeSeries& series) {
    if (series.size() < 2) {
        throw Error(ErrorKind::TooShort, "running variance needs at least 2 samples");
    }
    const auto values = series.values();
    std::vector<double> out(values.size(), 0.0);
    // Welford: m2 holds the sum of squared deviations about the running mean.
    double mean = values[0];
    double m2 = 0.0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        const double count = static_cast<double>(k + 1);
        const double delta = values[k] - mean;
        mean += delta / count;
        m2 += delta * (values[k] - mean);
        out[k] = std::max(0.0, m2 / count);
    }
    return TimeSeries(std::move(out), series.dt());
}

std::vector<double> autocovariance(const TimeSeries& series, std::size_t max_lag) {
    if (max_lag >= series.size()) {
        throw Error(ErrorKind::LagTooLarge, "max_lag " + std::to_string(max_lag) +
                                                " must be below series length " +
                                                std::to_string(series.size()));
    }
    const auto values = series.values();
    const std::size_t n = values.size();
    const double m = detail::mean(values);
    std::vector<double> centered(n);
    for (std::size_t t = 0; t < n; ++t) centered[t] = values[t] - m;

    std::vector<double> gamma(max_lag + 1, 0.0);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) acc += centered[t] * centered[t + k];
        gamma[k] = acc / static_cast<double>(n);
    }
    return gamma;
}

std::vector<double> autocorrelation(const TimeSeries& series, std::size_t max_lag) {
    if (max_lag >= series.size()) {
        throw Error(ErrorKind::LagTooLarge, "max_lag " + std::to_string(max_lag) +
                                                " must be below series length " +
                                                std::to_string(series.size()));
    }
    if (series.is_constant()) {
        throw Error(ErrorKind::DegenerateSeries, "autocorrelation of a constant series");
    }
    auto rho = autocovariance(series, max_lag);
    const double gamma0 = rho[0];
    for (double& r : rho) r /= gamma0;
    rho[0] = 1.0;
    return rho;
}

}  // namespace selfsim
