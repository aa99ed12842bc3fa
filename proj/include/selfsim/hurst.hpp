#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selfsim/error.hpp"
#include "selfsim/series.hpp"

namespace selfsim {

/// Least-squares line through (ln x, ln y).
struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points;  // (log_x, log_y)
};

/// Fits ln y = intercept + slope * ln x by ordinary least squares.
/// Throws TooFewPoints for fewer than 3 points (or fewer than 2 distinct
/// abscissae) and NonPositivePoint when any coordinate is <= 0.
[[nodiscard]] LogLogFit loglog_fit(std::span<const std::pair<double, double>> points);

// Row order of the estimator report.
enum class HurstMethod { Absval, Aggvar, Boxper, Diffvar, Higuchi, Peng, Per, RS };

inline constexpr std::array<HurstMethod, 8> kAllHurstMethods = {
    HurstMethod::Absval, HurstMethod::Aggvar, HurstMethod::Boxper, HurstMethod::Diffvar,
    HurstMethod::Higuchi, HurstMethod::Peng, HurstMethod::Per, HurstMethod::RS,
};

/// Display name ("Absval", ..., "Per", "R/S").
[[nodiscard]] std::string_view method_name(HurstMethod method) noexcept;
/// Lower-case command-line key ("absval", ..., "per", "rs").
[[nodiscard]] std::string_view method_key(HurstMethod method) noexcept;
[[nodiscard]] std::optional<HurstMethod> parse_method(std::string_view key) noexcept;

struct HurstEstimate {
    double h = 0.0;
    double alpha = 0.0;        // 2h - 1
    double fractal_dim = 0.0;  // 2 - h
    HurstMethod method = HurstMethod::RS;
    LogLogFit fit;
    /// Set when h falls outside (0, 1.5). The raw value is still reported.
    bool out_of_range = false;
};

/// Builds an estimate whose alpha and fractal_dim are derived from h.
[[nodiscard]] HurstEstimate make_estimate(HurstMethod method, double h, LogLogFit fit);

struct EstimatorConfig {
    std::size_t min_block = 8;
    double max_block_fraction = 0.05;
    std::size_t num_scales = 20;
    double low_freq_fraction = 0.1;
    std::size_t boxes = 60;

    /// Throws InvalidArgument when an invariant is violated.
    void validate() const;
};

/// Block sizes geometrically spaced between min_block and
/// floor(max_block_fraction * n), rounded and deduplicated.
[[nodiscard]] std::vector<std::size_t> scale_ladder(std::size_t n, const EstimatorConfig& config);

/// Block means of length m; the trailing partial block is dropped.
/// Throws BlockTooLarge when m exceeds the series length (or m == 0).
[[nodiscard]] TimeSeries aggregate(const TimeSeries& series, std::size_t m);

[[nodiscard]] HurstEstimate rs_estimate(const TimeSeries& series, const EstimatorConfig& config = {});
[[nodiscard]] HurstEstimate aggvar_estimate(const TimeSeries& series, const EstimatorConfig& config = {});
[[nodiscard]] HurstEstimate absval_estimate(const TimeSeries& series, const EstimatorConfig& config = {});
[[nodiscard]] HurstEstimate periodogram_estimate(const TimeSeries& series, const EstimatorConfig& config = {});
[[nodiscard]] HurstEstimate boxper_estimate(const TimeSeries& series, const EstimatorConfig& config = {});
[[nodiscard]] HurstEstimate diffvar_estimate(const TimeSeries& series, const EstimatorConfig& config = {});
[[nodiscard]] HurstEstimate higuchi_estimate(const TimeSeries& series, const EstimatorConfig& config = {});
[[nodiscard]] HurstEstimate peng_estimate(const TimeSeries& series, const EstimatorConfig& config = {});

[[nodiscard]] HurstEstimate estimate(HurstMethod method, const TimeSeries& series,
                                     const EstimatorConfig& config = {});

/// One row of estimate_all: either an estimate or the error that stopped it.
struct MethodResult {
    HurstMethod method = HurstMethod::RS;
    std::optional<HurstEstimate> estimate;
    std::optional<ErrorKind> error;
    std::string message;
};

/// Runs every estimator in report order. Failures are carried inline.
/// `threads` > 1 evaluates methods concurrently; the result is identical to
/// the sequential one.
[[nodiscard]] std::vector<MethodResult> estimate_all(const TimeSeries& series,
                                                     const EstimatorConfig& config = {},
                                                     unsigned threads = 1);

}  // namespace selfsim
