#pragma once

#include <iosfwd>
#include <string>

#include "selfsim/benchmark.hpp"
#include "selfsim/series.hpp"
#include "selfsim/spectral.hpp"

namespace selfsim::csv {

/// Parses a trace: header `value` (one column) or `t,value`. With a time
/// column, dt is taken from the first two rows. Throws MalformedCsv with the
/// offending line number.
[[nodiscard]] TimeSeries read_trace(std::istream& in);
/// As above; throws FileNotFound when the file cannot be opened.
[[nodiscard]] TimeSeries read_trace_file(const std::string& path);

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_number(double value);

void write_trace(std::ostream& out, const TimeSeries& series);
void write_timed_trace(std::ostream& out, const TimeSeries& series);
/// Header `freq_rad_per_sample,power`, or `freq_cycles_per_sample,power`.
void write_spectrum(std::ostream& out, const Spectrum& spectrum, bool cycles = false);
/// Header `smoother,alpha,seed,mse`.
void write_benchmark_records(std::ostream& out, const BenchmarkResult& result);
/// Header `smoother,alpha,mean_mse,std_mse`.
void write_benchmark_aggregate(std::ostream& out, const BenchmarkResult& result);
/// Header `method,h,alpha,fractal_dim,r_squared,status`.
void write_estimates(std::ostream& out, const std::vector<MethodResult>& results);

}  // namespace selfsim::csv
