#include "selfsim/hurst.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "selfsim/spectral.hpp"

namespace selfsim {

namespace {

void require_nondegenerate(const TimeSeries& series) {
    if (series.is_constant()) {
        throw Error(ErrorKind::DegenerateSeries, "series has zero variance");
    }
}

void require_length(const TimeSeries& series, std::size_t minimum, std::string_view what) {
    if (series.size() < minimum) {
        throw Error(ErrorKind::SeriesTooShort, std::string(what) + " needs at least " +
                                                   std::to_string(minimum) + " samples, got " +
                                                   std::to_string(series.size()));
    }
}

/// Shared entry checks for the time-domain estimators.
void time_domain_checks(const TimeSeries& series, const EstimatorConfig& config, std::string_view what) {
    config.validate();
    require_length(series, 4 * config.min_block, what);
    require_nondegenerate(series);
}

std::vector<double> centered(std::span<const double> values) {
    const double m = detail::mean(values);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] - m;
    return out;
}

LogLogFit fit_or_degenerate(const std::vector<std::pair<double, double>>& points, std::string_view what) {
    if (points.size() < 3) {
        throw Error(ErrorKind::DegenerateSeries,
                    std::string(what) + ": fewer than 3 scales carry a positive statistic");
    }
    return loglog_fit(points);
}

double population_variance_of(std::span<const double> data) {
    bool flat = std::all_of(data.begin(), data.end(), [&](double v) { return v == data[0]; });
    return flat ? 0.0 : detail::population_variance(data);
}

std::vector<double> block_means(std::span<const double> values, std::size_t m) {
    const std::size_t blocks = values.size() / m;
    std::vector<double> out(blocks);
    for (std::size_t k = 0; k < blocks; ++k) {
        double acc = 0.0;
        for (std::size_t i = k * m; i < (k + 1) * m; ++i) acc += values[i];
        out[k] = acc / static_cast<double>(m);
    }
    return out;
}

HurstEstimate spectral_slope_estimate(HurstMethod method, LogLogFit fit) {
    const double h = (1.0 - fit.slope) / 2.0;
    return make_estimate(method, h, std::move(fit));
}

}  // namespace

std::string_view method_name(HurstMethod method) noexcept {
    switch (method) {
        case HurstMethod::Absval: return "Absval";
        case HurstMethod::Aggvar: return "Aggvar";
        case HurstMethod::Boxper: return "Boxper";
        case HurstMethod::Diffvar: return "Diffvar";
        case HurstMethod::Higuchi: return "Higuchi";
        case HurstMethod::Peng: return "Peng";
        case HurstMethod::Per: return "Per";
        case HurstMethod::RS: return "R/S";
    }
    return "?";
}

std::string_view method_key(HurstMethod method) noexcept {
    switch (method) {
        case HurstMethod::Absval: return "absval";
        case HurstMethod::Aggvar: return "aggvar";
        case HurstMethod::Boxper: return "boxper";
        case HurstMethod::Diffvar: return "diffvar";
        case HurstMethod::Higuchi: return "higuchi";
        case HurstMethod::Peng: return "peng";
        case HurstMethod::Per: return "per";
        case HurstMethod::RS: return "rs";
    }
    return "?";
}

std::optional<HurstMethod> parse_method(std::string_view key) noexcept {
    for (HurstMethod m : kAllHurstMethods) {
        if (key == method_key(m)) return m;
    }
    return std::nullopt;
}

HurstEstimate make_estimate(HurstMethod method, double h, LogLogFit fit) {
    HurstEstimate e;
    e.h = h;
    e.alpha = 2.0 * h - 1.0;
    e.fractal_dim = 2.0 - h;
    e.method = method;
    e.fit = std::move(fit);
    e.out_of_range = !(h > 0.0 && h < 1.5);
    return e;
}

void EstimatorConfig::validate() const {
    if (min_block < 4) throw Error(ErrorKind::InvalidArgument, "min_block must be >= 4");
    if (num_scales < 3) throw Error(ErrorKind::InvalidArgument, "num_scales must be >= 3");
    if (!(max_block_fraction > 0.0 && max_block_fraction <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "max_block_fraction must lie in (0, 1]");
    }
    if (!(low_freq_fraction > 0.0 && low_freq_fraction <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "low_freq_fraction must lie in (0, 1]");
    }
    if (boxes < 3) throw Error(ErrorKind::InvalidArgument, "boxes must be >= 3");
}

LogLogFit loglog_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) {
        throw Error(ErrorKind::TooFewPoints, "log-log fit needs at least 3 points, got " +
                                                 std::to_string(points.size()));
    }
    LogLogFit fit;
    fit.points.reserve(points.size());
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
            throw Error(ErrorKind::NonPositivePoint, "log-log fit requires strictly positive coordinates");
        }
        fit.points.emplace_back(std::log(x), std::log(y));
    }
    const auto n = static_cast<double>(fit.points.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [lx, ly] : fit.points) {
        mx += lx;
        my += ly;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& [lx, ly] : fit.points) {
        sxx += (lx - mx) * (lx - mx);
        sxy += (lx - mx) * (ly - my);
        syy += (ly - my) * (ly - my);
    }
    if (!(sxx > 0.0)) {
        throw Error(ErrorKind::TooFewPoints, "log-log fit needs at least 2 distinct abscissae");
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (const auto& [lx, ly] : fit.points) {
        const double r = ly - (fit.intercept + fit.slope * lx);
        ss_res += r * r;
    }
    // A flat response fits perfectly even though the total sum of squares is zero.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

std::vector<std::size_t> scale_ladder(std::size_t n, const EstimatorConfig& config) {
    const auto largest = static_cast<std::size_t>(std::floor(config.max_block_fraction * static_cast<double>(n)));
    std::vector<std::size_t> ladder;
    if (largest < config.min_block) return ladder;
    const double lo = std::log(static_cast<double>(config.min_block));
    const double hi = std::log(static_cast<double>(largest));
    const std::size_t steps = config.num_scales - 1;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(steps);
        auto m = static_cast<std::size_t>(std::lround(std::exp(lo + t * (hi - lo))));
        m = std::clamp(m, config.min_block, largest);
        if (ladder.empty() || ladder.back() != m) ladder.push_back(m);
    }
    return ladder;
}

TimeSeries aggregate(const TimeSeries& series, std::size_t m) {
    if (m == 0 || m > series.size()) {
        throw Error(ErrorKind::BlockTooLarge, "block size " + std::to_string(m) + " does not fit series length " +
                                                  std::to_string(series.size()));
    }
    return TimeSeries(block_means(series.values(), m), series.dt() * static_cast<double>(m));
}

HurstEstimate rs_estimate(const TimeSeries& series, const EstimatorConfig& config) {
    time_domain_checks(series, config, "R/S");
    const auto values = series.values();
    std::vector<std::pair<double, double>> points;
    for (std::size_t n : scale_ladder(series.size(), config)) {
        const std::size_t blocks = values.size() / n;
        double sum_ratio = 0.0;
        std::size_t used = 0;
        for (std::size_t b = 0; b < blocks; ++b) {
            const auto block = values.subspan(b * n, n);
            const double s2 = population_variance_of(block);
            if (!(s2 > 0.0)) continue;
            const double m = detail::mean(block);
            // Z_n is zero up to rounding, so starting the extremes at 0 is exact.
            double z = 0.0;
            double zmax = 0.0;
            double zmin = 0.0;
            for (double v : block) {
                z += v - m;
                zmax = std::max(zmax, z);
                zmin = std::min(zmin, z);
            }
            sum_ratio += (zmax - zmin) / std::sqrt(s2);
            ++used;
        }
        if (used > 0 && sum_ratio > 0.0) {
            points.emplace_back(static_cast<double>(n), sum_ratio / static_cast<double>(used));
        }
    }
    auto fit = fit_or_degenerate(points, "R/S");
    const double h = fit.slope;
    return make_estimate(HurstMethod::RS, h, std::move(fit));
}

HurstEstimate aggvar_estimate(const TimeSeries& series, const EstimatorConfig& config) {
    time_domain_checks(series, config, "Aggvar");
    std::vector<std::pair<double, double>> points;
    for (std::size_t m : scale_ladder(series.size(), config)) {
        const auto agg = block_means(series.values(), m);
        if (agg.size() < 2) continue;
        const double v = population_variance_of(agg);
        if (v > 0.0) points.emplace_back(static_cast<double>(m), v);
    }
    auto fit = fit_or_degenerate(points, "Aggvar");
    const double h = 1.0 + fit.slope / 2.0;
    return make_estimate(HurstMethod::Aggvar, h, std::move(fit));
}

HurstEstimate absval_estimate(const TimeSeries& series, const EstimatorConfig& config) {
    time_domain_checks(series, config, "Absval");
    const auto x = centered(series.values());
    std::vector<std::pair<double, double>> points;
    for (std::size_t m : scale_ladder(series.size(), config)) {
        const auto agg = block_means(x, m);
        double acc = 0.0;
        for (double v : agg) acc += std::abs(v);
        const double stat = acc / static_cast<double>(agg.size());
        if (stat > 0.0) points.emplace_back(static_cast<double>(m), stat);
    }
    auto fit = fit_or_degenerate(points, "Absval");
    const double h = 1.0 + fit.slope;
    return make_estimate(HurstMethod::Absval, h, std::move(fit));
}

HurstEstimate periodogram_estimate(const TimeSeries& series, const EstimatorConfig& config) {
    config.validate();
    require_length(series, 64, "Per");
    require_nondegenerate(series);
    const auto spec = periodogram(series);
    const auto band = std::max<std::size_t>(
        3, static_cast<std::size_t>(std::floor(config.low_freq_fraction * static_cast<double>(spec.power.size()))));
    std::vector<std::pair<double, double>> points;
    for (std::size_t j = 0; j < std::min(band, spec.power.size()); ++j) {
        if (spec.power[j] > 0.0) points.emplace_back(spec.frequencies[j], spec.power[j]);
    }
    return spectral_slope_estimate(HurstMethod::Per, fit_or_degenerate(points, "Per"));
}

HurstEstimate boxper_estimate(const TimeSeries& series, const EstimatorConfig& config) {
    config.validate();
    require_length(series, 64, "Boxper");
    require_nondegenerate(series);
    const auto spec = periodogram(series);
    const double lo = std::log(spec.frequencies.front());
    const double hi = std::log(spec.frequencies.back());
    const double width = (hi - lo) / static_cast<double>(config.boxes);

    // Each box reports the mean ordinate and the geometric mean of its member frequencies.
    std::vector<double> power_sum(config.boxes, 0.0);
    std::vector<double> logfreq_sum(config.boxes, 0.0);
    std::vector<std::size_t> count(config.boxes, 0);
    for (std::size_t j = 0; j < spec.power.size(); ++j) {
        const double lf = std::log(spec.frequencies[j]);
        auto box = static_cast<std::size_t>(std::floor((lf - lo) / width));
        box = std::min(box, config.boxes - 1);
        power_sum[box] += spec.power[j];
        logfreq_sum[box] += lf;
        ++count[box];
    }
    std::vector<std::pair<double, double>> points;
    for (std::size_t b = 0; b < config.boxes; ++b) {
        if (count[b] == 0 || !(power_sum[b] > 0.0)) continue;
        const auto c = static_cast<double>(count[b]);
        points.emplace_back(std::exp(logfreq_sum[b] / c), power_sum[b] / c);
    }
    return spectral_slope_estimate(HurstMethod::Boxper, fit_or_degenerate(points, "Boxper"));
}

HurstEstimate diffvar_estimate(const TimeSeries& series, const EstimatorConfig& config) {
    time_domain_checks(series, config, "Diffvar");
    const auto ladder = scale_ladder(series.size(), config);
    if (ladder.size() < 4) {
        throw Error(ErrorKind::TooFewScales, "Diffvar needs at least 4 scales, got " + std::to_string(ladder.size()));
    }
    std::vector<double> variances;
    variances.reserve(ladder.size());
    for (std::size_t m : ladder) variances.push_back(population_variance_of(block_means(series.values(), m)));

    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
        const double d = std::abs(variances[i + 1] - variances[i]);
        if (d > 0.0) points.emplace_back(static_cast<double>(ladder[i]), d);
    }
    if (points.size() < 3) {
        throw Error(ErrorKind::TooFewScales, "fewer than 3 nonzero variance differences");
    }
    auto fit = loglog_fit(points);
    const double h = 1.0 + fit.slope / 2.0;
    return make_estimate(HurstMethod::Diffvar, h, std::move(fit));
}

HurstEstimate higuchi_estimate(const TimeSeries& series, const EstimatorConfig& config) {
    config.validate();
    require_length(series, 128, "Higuchi");
    require_nondegenerate(series);
    const auto x = centered(series.values());
    const std::size_t n = x.size();
    std::vector<double> path(n);
    std::partial_sum(x.begin(), x.end(), path.begin());

    std::vector<std::pair<double, double>> points;
    for (std::size_t m : scale_ladder(n, config)) {
        // L(m) = (N-1)/m^3 * sum_{i=1..m} [ (1/floor((N-i)/m)) * sum_k |Y(i+km) - Y(i+(k-1)m)| ]
        double total = 0.0;
        for (std::size_t start = 0; start < m; ++start) {
            const std::size_t steps = (n - 1 - start) / m;
            if (steps == 0) continue;
            double length = 0.0;
            for (std::size_t k = 1; k <= steps; ++k) {
                length += std::abs(path[start + k * m] - path[start + (k - 1) * m]);
            }
            total += length / static_cast<double>(steps);
        }
        const auto md = static_cast<double>(m);
        const double curve = static_cast<double>(n - 1) / (md * md * md) * total;
        if (curve > 0.0) points.emplace_back(md, curve);
    }
    auto fit = fit_or_degenerate(points, "Higuchi");
    const double dimension = -fit.slope;
    return make_estimate(HurstMethod::Higuchi, 2.0 - dimension, std::move(fit));
}

HurstEstimate peng_estimate(const TimeSeries& series, const EstimatorConfig& config) {
    time_domain_checks(series, config, "Peng");
    const auto x = centered(series.values());
    std::vector<double> path(x.size());
    std::partial_sum(x.begin(), x.end(), path.begin());

    std::vector<std::pair<double, double>> points;
    for (std::size_t m : scale_ladder(x.size(), config)) {
        const std::size_t blocks = path.size() / m;
        // Abscissae 0..m-1 are shared by every block.
        const auto md = static_cast<double>(m);
        const double tbar = (md - 1.0) / 2.0;
        double stt = 0.0;
        for (std::size_t t = 0; t < m; ++t) stt += (static_cast<double>(t) - tbar) * (static_cast<double>(t) - tbar);

        double residual_sum = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::span<const double> block(path.data() + b * m, m);
            const double ybar = detail::mean(block);
            double sty = 0.0;
            for (std::size_t t = 0; t < m; ++t) sty += (static_cast<double>(t) - tbar) * (block[t] - ybar);
            const double slope = sty / stt;
            double rss = 0.0;
            for (std::size_t t = 0; t < m; ++t) {
                const double r = block[t] - ybar - slope * (static_cast<double>(t) - tbar);
                rss += r * r;
            }
            residual_sum += rss / md;
        }
        const double stat = residual_sum / static_cast<double>(blocks);
        if (stat > 0.0) points.emplace_back(md, stat);
    }
    auto fit = fit_or_degenerate(points, "Peng");
    const double h = fit.slope / 2.0;
    return make_estimate(HurstMethod::Peng, h, std::move(fit));
}

HurstEstimate estimate(HurstMethod method, const TimeSeries& series, const EstimatorConfig& config) {
    switch (method) {
        case HurstMethod::Absval: return absval_estimate(series, config);
        case HurstMethod::Aggvar: return aggvar_estimate(series, config);
        case HurstMethod::Boxper: return boxper_estimate(series, config);
        case HurstMethod::Diffvar: return diffvar_estimate(series, config);
        case HurstMethod::Higuchi: return higuchi_estimate(series, config);
        case HurstMethod::Peng: return peng_estimate(series, config);
        case HurstMethod::Per: return periodogram_estimate(series, config);
        case HurstMethod::RS: return rs_estimate(series, config);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown estimator");
}

std::vector<MethodResult> estimate_all(const TimeSeries& series, const EstimatorConfig& config, unsigned threads) {
    auto run = [&](HurstMethod method) {
        MethodResult r;
        r.method = method;
        try {
            r.estimate = estimate(method, series, config);
        } catch (const Error& e) {
            r.error = e.kind();
            r.message = e.what();
        }
        return r;
    };

    std::vector<MethodResult> results;
    results.reserve(kAllHurstMethods.size());
    if (threads <= 1) {
        for (HurstMethod m : kAllHurstMethods) results.push_back(run(m));
        return results;
    }
    std::vector<std::future<MethodResult>> pending;
    for (HurstMethod m : kAllHurstMethods) pending.push_back(std::async(std::launch::async, run, m));
    for (auto& f : pending) results.push_back(f.get());
    return results;
}

}  // namespace selfsim
