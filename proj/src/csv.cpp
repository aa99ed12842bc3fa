#include "selfsim/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "selfsim/error.hpp"

namespace selfsim::csv {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view cell, std::size_t line) {
    cell = trim(cell);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw Error(ErrorKind::MalformedCsv, "line " + std::to_string(line) + ": cannot parse number '" +
                                                 std::string(cell) + "'");
    }
    return value;
}

}  // namespace

TimeSeries read_trace(std::istream& in) {
    std::string raw;
    std::size_t line = 0;
    if (!std::getline(in, raw)) throw Error(ErrorKind::MalformedCsv, "line 1: missing header");
    ++line;
    const auto header = trim(raw);
    bool timed = false;
    if (header == "t,value") {
        timed = true;
    } else if (header != "value") {
        throw Error(ErrorKind::MalformedCsv, "line 1: expected header 'value' or 't,value', got '" +
                                                 std::string(header) + "'");
    }

    std::vector<double> times;
    std::vector<double> values;
    while (std::getline(in, raw)) {
        ++line;
        const auto row = trim(raw);
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (timed) {
            if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
                throw Error(ErrorKind::MalformedCsv, "line " + std::to_string(line) + ": expected 2 columns");
            }
            times.push_back(parse_cell(row.substr(0, comma), line));
            values.push_back(parse_cell(row.substr(comma + 1), line));
        } else {
            if (comma != std::string_view::npos) {
                throw Error(ErrorKind::MalformedCsv, "line " + std::to_string(line) + ": expected 1 column");
            }
            values.push_back(parse_cell(row, line));
        }
    }
    if (values.empty()) throw Error(ErrorKind::TooShort, "trace holds no samples");
    double dt = 1.0;
    if (timed && times.size() >= 2) {
        dt = times[1] - times[0];
        if (!(dt > 0.0)) throw Error(ErrorKind::MalformedCsv, "line 3: time column must increase");
    }
    return TimeSeries(std::move(values), dt);
}

TimeSeries read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::FileNotFound, "cannot open '" + path + "'");
    return read_trace(in);
}

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_trace(std::ostream& out, const TimeSeries& series) {
    out << "value\n";
    for (double v : series.values()) out << format_number(v) << '\n';
}

void write_timed_trace(std::ostream& out, const TimeSeries& series) {
    out << "t,value\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        out << format_number(static_cast<double>(k) * series.dt()) << ',' << format_number(series[k]) << '\n';
    }
}

void write_spectrum(std::ostream& out, const Spectrum& spectrum, bool cycles) {
    out << (cycles ? "freq_cycles_per_sample,power\n" : "freq_rad_per_sample,power\n");
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    for (std::size_t j = 0; j < spectrum.power.size(); ++j) {
        const double f = cycles ? spectrum.frequencies[j] / kTwoPi : spectrum.frequencies[j];
        out << format_number(f) << ',' << format_number(spectrum.power[j]) << '\n';
    }
}

void write_benchmark_records(std::ostream& out, const BenchmarkResult& result) {
    out << "smoother,alpha,seed,mse\n";
    for (const auto& r : result.records) {
        out << r.smoother << ',' << format_number(r.alpha) << ',' << r.seed << ',' << format_number(r.mse) << '\n';
    }
}

void write_benchmark_aggregate(std::ostream& out, const BenchmarkResult& result) {
    out << "smoother,alpha,mean_mse,std_mse\n";
    for (const auto& a : result.aggregate) {
        out << a.smoother << ',' << format_number(a.alpha) << ',' << format_number(a.mean_mse) << ','
            << format_number(a.std_mse) << '\n';
    }
}

void write_estimates(std::ostream& out, const std::vector<MethodResult>& results) {
    out << "method,h,alpha,fractal_dim,r_squared,status\n";
    for (const auto& r : results) {
        out << method_key(r.method) << ',';
        if (r.estimate) {
            const auto& e = *r.estimate;
            out << format_number(e.h) << ',' << format_number(e.alpha) << ',' << format_number(e.fractal_dim) << ','
                << format_number(e.fit.r_squared) << ',' << (e.out_of_range ? "out_of_range" : "ok") << '\n';
        } else {
            out << ",,,," << to_string(r.error.value_or(ErrorKind::InvalidArgument)) << '\n';
        }
    }
}

}  // namespace selfsim::csv
