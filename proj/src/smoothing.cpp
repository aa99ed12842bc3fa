#include "selfsim/smoothing.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "selfsim/error.hpp"

namespace selfsim {

namespace {

using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

void require_window(std::size_t window, std::size_t length) {
    if (window > length) {
        throw Error(ErrorKind::WindowTooLarge, "window of " + std::to_string(window) +
                                                   " samples exceeds series length " + std::to_string(length));
    }
}

/// Least-squares operator (degree+1) x window for offsets -n_left..n_right.
MatrixL savgol_operator(const SavitzkyGolayConfig& config) {
    const std::size_t width = config.n_left + config.n_right + 1;
    const std::size_t cols = config.degree + 1;
    if (config.degree > config.n_left + config.n_right) {
        throw Error(ErrorKind::RankDeficient, "degree exceeds n_left + n_right");
    }
    MatrixL design(width, cols);
    for (std::size_t r = 0; r < width; ++r) {
        const long double offset = static_cast<long double>(r) - static_cast<long double>(config.n_left);
        long double power = 1.0L;
        for (std::size_t c = 0; c < cols; ++c) {
            design(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = power;
            power *= offset;
        }
    }
    Eigen::ColPivHouseholderQR<MatrixL> qr(design);
    if (qr.rank() < static_cast<Eigen::Index>(cols)) {
        throw Error(ErrorKind::RankDeficient, "Savitzky-Golay design matrix is singular");
    }
    return qr.solve(MatrixL::Identity(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(width)));
}

std::vector<double> evaluate_at(const MatrixL& op, long position) {
    VectorL basis(op.rows());
    long double power = 1.0L;
    for (Eigen::Index c = 0; c < op.rows(); ++c) {
        basis(c) = power;
        power *= static_cast<long double>(position);
    }
    const VectorL weights = op.transpose() * basis;
    std::vector<double> out(static_cast<std::size_t>(weights.size()));
    for (Eigen::Index i = 0; i < weights.size(); ++i) out[static_cast<std::size_t>(i)] = static_cast<double>(weights(i));
    return out;
}

/// sum_j w_j x_j written as x_ref + sum_j w_j (x_j - x_ref) / sum_j w_j.
/// Identical for weights summing to one and exact on constant input.
double anchored_sum(std::span<const double> x, std::span<const double> w, double ref, double weight_total) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += w[j] * (x[j] - ref);
    return ref + acc / weight_total;
}

}  // namespace

TimeSeries moving_average(const TimeSeries& series, const MovingAverageConfig& config) {
    const std::size_t r = config.window;
    if (r == 0 || r % 2 == 0) throw Error(ErrorKind::InvalidArgument, "moving-average window must be odd");
    std::vector<double> weights = config.weights.value_or(std::vector<double>(r, 1.0 / static_cast<double>(r)));
    if (weights.size() != r) throw Error(ErrorKind::InvalidArgument, "weights must have one entry per window slot");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw Error(ErrorKind::InvalidArgument, "moving-average weights must be non-negative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "moving-average weights must sum to 1");
    require_window(r, series.size());

    const auto x = series.values();
    const std::size_t n = x.size();
    const std::size_t half = r / 2;
    if (config.valid_only) {
        std::vector<double> out(n - r + 1);
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] = anchored_sum(x.subspan(k, r), weights, x[k + half], 1.0);
        }
        return TimeSeries(std::move(out), series.dt());
    }

    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t lo = k >= half ? k - half : 0;
        const std::size_t hi = std::min(n - 1, k + half);
        const std::span<const double> w(weights.data() + (lo + half - k), hi - lo + 1);
        double wsum = 0.0;
        for (double v : w) wsum += v;
        out[k] = anchored_sum(x.subspan(lo, hi - lo + 1), w, x[k], wsum);
    }
    return TimeSeries(std::move(out), series.dt());
}

std::vector<double> savgol_coefficients(const SavitzkyGolayConfig& config) {
    return evaluate_at(savgol_operator(config), 0);
}

std::vector<double> savgol_coefficients_at(const SavitzkyGolayConfig& config, long position) {
    if (position < -static_cast<long>(config.n_left) || position > static_cast<long>(config.n_right)) {
        throw Error(ErrorKind::InvalidArgument, "evaluation offset lies outside the window");
    }
    return evaluate_at(savgol_operator(config), position);
}

TimeSeries savgol_smooth(const TimeSeries& series, const SavitzkyGolayConfig& config) {
    const std::size_t width = config.n_left + config.n_right + 1;
    require_window(width, series.size());
    const MatrixL op = savgol_operator(config);
    const auto center = evaluate_at(op, 0);
    const auto x = series.values();
    const std::size_t n = x.size();

    if (config.valid_only) {
        std::vector<double> out(n - width + 1);
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] = anchored_sum(x.subspan(k, width), center, x[k + config.n_left], 1.0);
        }
        return TimeSeries(std::move(out), series.dt());
    }

    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t start = 0;
        long position = 0;
        if (k < config.n_left) {
            start = 0;
            position = static_cast<long>(k) - static_cast<long>(config.n_left);
        } else if (k + config.n_right >= n) {
            start = n - width;
            position = static_cast<long>(k - start) - static_cast<long>(config.n_left);
        } else {
            start = k - config.n_left;
        }
        const auto weights = position == 0 ? center : evaluate_at(op, position);
        out[k] = anchored_sum(x.subspan(start, width), weights, x[k], 1.0);
    }
    return TimeSeries(std::move(out), series.dt());
}

TimeSeries kernel_smooth(const TimeSeries& series, const KernelConfig& config) {
    if (!(config.bandwidth > 0.0) || !std::isfinite(config.bandwidth)) {
        throw Error(ErrorKind::InvalidArgument, "kernel bandwidth must be positive");
    }
    if (series.size() < 2) throw Error(ErrorKind::TooShort, "kernel smoothing needs at least 2 samples");
    const auto y = series.values();
    const std::size_t n = y.size();
    // exp(-t^2/2) underflows to exactly 0 for t > 38.6, so the truncated sum is bit-identical.
    const double reach = std::ceil(39.0 * config.bandwidth);
    const std::size_t radius = reach >= static_cast<double>(n) ? n : static_cast<std::size_t>(reach);

    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t lo = k >= radius ? k - radius : 0;
        const std::size_t hi = std::min(n - 1, k + radius);
        double wsum = 0.0;
        double acc = 0.0;
        for (std::size_t i = lo; i <= hi; ++i) {
            const double t = (static_cast<double>(i) - static_cast<double>(k)) / config.bandwidth;
            const double w = std::exp(-0.5 * t * t);
            wsum += w;
            acc += w * (y[i] - y[k]);
        }
        out[k] = y[k] + acc / wsum;
    }
    return TimeSeries(std::move(out), series.dt());
}

}  // namespace selfsim
