#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "selfsim/hurst.hpp"
#include "selfsim/reactor.hpp"
#include "selfsim/series.hpp"
#include "selfsim/smoothing.hpp"

namespace selfsim {

enum class SmootherKind { MovingAverage, SavitzkyGolay, Kernel };

/// One smoother in a benchmark plan. `id` keys the result rows.
struct SmootherSpec {
    std::string id;
    SmootherKind kind = SmootherKind::MovingAverage;
    MovingAverageConfig moving_average;
    SavitzkyGolayConfig savgol;
    KernelConfig kernel;

    [[nodiscard]] TimeSeries apply(const TimeSeries& series) const;
};

/// Reactor transient plus the delay channel that corrupts it. Times in seconds.
struct Scenario {
    ReactorParams params;
    ReactivityProgram program;
    double t_end = 10.0;
    double dt = 1e-3;
    double tick = 0.01;
    double mu = 0.127;
    double sigma_d = 0.03;
    double tau_max = 0.5;
};

struct BenchmarkPlan {
    std::vector<double> alphas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::size_t seeds = 20;
    std::uint64_t seed_base = 1;
    std::vector<SmootherSpec> smoothers = default_smoothers();
    Scenario scenario;
    unsigned threads = 1;
    /// Largest tolerated fraction of clamped delay samples per trial.
    double max_clamp_fraction = 0.1;

    void validate() const;

    /// MA(11), SG(5,5,3), kernel at bandwidths 2/4/8, and the identity (MA window 1).
    static std::vector<SmootherSpec> default_smoothers();
};

struct BenchmarkRecord {
    std::string smoother;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    double mse = 0.0;
};

struct BenchmarkAggregate {
    std::string smoother;
    double alpha = 0.0;
    double mean_mse = 0.0;
    double std_mse = 0.0;  // sample standard deviation over seeds (0 for one seed)
};

struct BenchmarkResult {
    std::vector<BenchmarkRecord> records;        // sorted by (plan smoother order, alpha, seed)
    std::vector<BenchmarkAggregate> aggregate;   // sorted by (plan smoother order, alpha)
};

/// For every (alpha, seed): H = (alpha + 1) / 2, delay trace, channel, each
/// smoother, MSE against the clean power on the tick grid. The reactor
/// transient is simulated once. Deterministic for a given plan regardless of
/// `threads`. Errors are rethrown with the (smoother, alpha, seed) context.
[[nodiscard]] BenchmarkResult run_benchmark(const BenchmarkPlan& plan);

/// Mean and sample standard deviation per (smoother, alpha), in first-seen order.
[[nodiscard]] std::vector<BenchmarkAggregate> aggregate_records(const std::vector<BenchmarkRecord>& records);

/// Mean MSE for a smoother id at alpha; NaN when absent.
[[nodiscard]] double mean_mse(const BenchmarkResult& result, const std::string& smoother, double alpha);

/// Smallest mean MSE over the smoother ids that start with `prefix` at alpha.
[[nodiscard]] double best_mean_mse(const BenchmarkResult& result, const std::string& prefix, double alpha);

/// One pass/fail statement about a benchmark result.
struct Finding {
    std::string claim;
    bool holds = false;
    std::string detail;
};

/// Trend (alpha = 0.9 vs 0.3 per smoother family), ordering (best kernel vs SG
/// and MA at alpha 0.7 and 0.8) and identity-baseline checks, for the alphas
/// present in the result.
[[nodiscard]] std::vector<Finding> benchmark_findings(const BenchmarkResult& result);

/// Text table with eight estimator rows and H, alpha = 2H-1, D = 2-H columns.
/// Failed estimators show the error name in every cell.
[[nodiscard]] std::string table1_report(const TimeSeries& series, const EstimatorConfig& config = {},
                                        unsigned threads = 1);
[[nodiscard]] std::string format_estimate_table(const std::vector<MethodResult>& results);

}  // namespace selfsim
