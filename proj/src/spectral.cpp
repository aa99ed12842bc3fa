#include "selfsim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "selfsim/error.hpp"

namespace selfsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> taper(Window window, std::size_t length) {
    std::vector<double> w(length, 1.0);
    if (window == Window::Hann) {
        // Periodic Hann, the usual choice for spectral averaging.
        for (std::size_t t = 0; t < length; ++t) {
            w[t] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(t) / static_cast<double>(length));
        }
    }
    return w;
}

}  // namespace

Spectrum periodogram(const TimeSeries& series) {
    const std::size_t n = series.size();
    if (n < 8) {
        throw Error(ErrorKind::SeriesTooShort, "periodogram needs at least 8 samples, got " + std::to_string(n));
    }
    const auto values = series.values();
    std::vector<double> centered(n);
    if (!series.is_constant()) {
        const double m = detail::mean(values);
        for (std::size_t t = 0; t < n; ++t) centered[t] = values[t] - m;
    }
    const auto bins = detail::real_dft(centered);

    Spectrum s;
    const std::size_t half = n / 2;
    s.frequencies.resize(half);
    s.power.resize(half);
    const double norm = kTwoPi * static_cast<double>(n);
    for (std::size_t j = 1; j <= half; ++j) {
        s.frequencies[j - 1] = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        s.power[j - 1] = std::norm(bins[j]) / norm;
    }
    return s;
}

Spectrum welch_psd(const TimeSeries& series, const WelchConfig& config) {
    const std::size_t seg = config.segment_length;
    if (seg < 8) {
        throw Error(ErrorKind::InvalidArgument, "segment_length must be at least 8");
    }
    if (!(config.overlap_fraction >= 0.0 && config.overlap_fraction < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "overlap_fraction must lie in [0, 1)");
    }
    if (series.size() < seg) {
        throw Error(ErrorKind::SeriesTooShort, "series length " + std::to_string(series.size()) +
                                                   " is below segment_length " + std::to_string(seg));
    }
    const auto step = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(static_cast<double>(seg) * (1.0 - config.overlap_fraction))));
    const auto window = taper(config.window, seg);
    double energy = 0.0;
    for (double w : window) energy += w * w;

    const std::size_t half = seg / 2;
    Spectrum s;
    s.frequencies.resize(half);
    s.power.assign(half, 0.0);
    for (std::size_t j = 1; j <= half; ++j) {
        s.frequencies[j - 1] = kTwoPi * static_cast<double>(j) / static_cast<double>(seg);
    }

    const auto values = series.values();
    std::vector<double> buffer(seg);
    std::size_t segments = 0;
    for (std::size_t start = 0; start + seg <= values.size(); start += step) {
        const auto piece = values.subspan(start, seg);
        const double m = detail::mean(piece);
        const bool flat = std::all_of(piece.begin(), piece.end(), [&](double v) { return v == piece[0]; });
        for (std::size_t t = 0; t < seg; ++t) buffer[t] = flat ? 0.0 : (piece[t] - m) * window[t];
        const auto bins = detail::real_dft(buffer);
        for (std::size_t j = 1; j <= half; ++j) s.power[j - 1] += std::norm(bins[j]);
        ++segments;
    }
    const double norm = kTwoPi * energy * static_cast<double>(segments);
    for (double& p : s.power) p /= norm;
    return s;
}

}  // namespace selfsim
