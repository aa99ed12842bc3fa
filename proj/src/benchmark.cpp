#include "selfsim/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "selfsim/error.hpp"
#include "selfsim/synthesis.hpp"

namespace selfsim {

TimeSeries SmootherSpec::apply(const TimeSeries& series) const {
    switch (kind) {
        case SmootherKind::MovingAverage: return selfsim::moving_average(series, moving_average);
        case SmootherKind::SavitzkyGolay: return savgol_smooth(series, savgol);
        case SmootherKind::Kernel: return kernel_smooth(series, kernel);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown smoother kind");
}

std::vector<SmootherSpec> BenchmarkPlan::default_smoothers() {
    std::vector<SmootherSpec> s;
    SmootherSpec ma{"ma", SmootherKind::MovingAverage, {}, {}, {}};
    s.push_back(ma);
    SmootherSpec sg{"sg", SmootherKind::SavitzkyGolay, {}, {}, {}};
    s.push_back(sg);
    for (double bw : {2.0, 4.0, 8.0}) {
        SmootherSpec k{"kernel_bw" + std::to_string(static_cast<int>(bw)), SmootherKind::Kernel, {}, {}, {bw}};
        s.push_back(k);
    }
    SmootherSpec identity{"identity", SmootherKind::MovingAverage, {}, {}, {}};
    identity.moving_average.window = 1;
    s.push_back(identity);
    return s;
}

void BenchmarkPlan::validate() const {
    if (alphas.empty()) throw Error(ErrorKind::InvalidArgument, "benchmark needs at least one alpha");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0 && alphas[i] < 1.0)) {
            throw Error(ErrorKind::InvalidArgument, "every alpha must lie in (0, 1)");
        }
        if (i > 0 && !(alphas[i] > alphas[i - 1])) {
            throw Error(ErrorKind::InvalidArgument, "alphas must be strictly increasing");
        }
    }
    if (seeds < 1) throw Error(ErrorKind::InvalidArgument, "seeds must be >= 1");
    if (smoothers.empty()) throw Error(ErrorKind::InvalidArgument, "benchmark needs at least one smoother");
    for (std::size_t i = 0; i < smoothers.size(); ++i) {
        for (std::size_t j = i + 1; j < smoothers.size(); ++j) {
            if (smoothers[i].id == smoothers[j].id) {
                throw Error(ErrorKind::InvalidArgument, "duplicate smoother id '" + smoothers[i].id + "'");
            }
        }
    }
}

namespace {

double mse_between(const TimeSeries& a, const TimeSeries& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

std::string context(const std::string& smoother, double alpha, std::uint64_t seed) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "smoother=%s alpha=%g seed=%llu", smoother.c_str(), alpha,
                  static_cast<unsigned long long>(seed));
    return buf;
}

}  // namespace

BenchmarkResult run_benchmark(const BenchmarkPlan& plan) {
    plan.validate();
    const Scenario& sc = plan.scenario;
    const auto states = simulate(sc.params, sc.program, sc.t_end, sc.dt);
    const auto clean = sample_on_ticks(states, sc.tick);
    const std::size_t ticks = clean.size();

    const std::size_t trials = plan.alphas.size() * plan.seeds;
    const std::size_t width = plan.smoothers.size();
    std::vector<double> mse(trials * width, 0.0);
    std::vector<std::exception_ptr> failures(trials);

    auto run_trial = [&](std::size_t trial) {
        const double alpha = plan.alphas[trial / plan.seeds];
        const std::uint64_t seed = plan.seed_base + trial % plan.seeds;
        std::string current = "channel";
        try {
            const auto noise = generate_fgn({(alpha + 1.0) / 2.0, ticks, 1.0, seed});
            const double clamped = clamp_fraction(noise, sc.mu, sc.sigma_d, sc.tau_max);
            if (clamped > plan.max_clamp_fraction) {
                throw Error(ErrorKind::InvalidBounds, "delay clamp active on " + std::to_string(100.0 * clamped) +
                                                          "% of samples");
            }
            auto delays = delay_from_noise(noise, sc.mu, sc.sigma_d, sc.tau_max);
            const auto measured = measure_through_channel(states, ChannelConfig{sc.tick, std::move(delays)});
            for (std::size_t s = 0; s < width; ++s) {
                current = plan.smoothers[s].id;
                mse[trial * width + s] = mse_between(plan.smoothers[s].apply(measured), clean);
            }
        } catch (const Error& e) {
            failures[trial] = std::make_exception_ptr(Error(e.kind(), context(current, alpha, seed) + ": " + e.what()));
        } catch (...) {
            failures[trial] = std::current_exception();
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(plan.threads, static_cast<unsigned>(trials)));
    if (workers == 1) {
        for (std::size_t t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < trials; t = next++) run_trial(t);
            });
        }
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    BenchmarkResult result;
    result.records.reserve(trials * width);
    for (std::size_t s = 0; s < width; ++s) {
        for (std::size_t trial = 0; trial < trials; ++trial) {
            result.records.push_back({plan.smoothers[s].id, plan.alphas[trial / plan.seeds],
                                      plan.seed_base + trial % plan.seeds, mse[trial * width + s]});
        }
    }
    result.aggregate = aggregate_records(result.records);
    return result;
}

std::vector<BenchmarkAggregate> aggregate_records(const std::vector<BenchmarkRecord>& records) {
    struct Acc {
        std::string smoother;
        double alpha;
        std::vector<double> values;
    };
    std::vector<Acc> groups;
    for (const auto& r : records) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const Acc& a) { return a.smoother == r.smoother && a.alpha == r.alpha; });
        if (it == groups.end()) {
            groups.push_back({r.smoother, r.alpha, {}});
            it = groups.end() - 1;
        }
        it->values.push_back(r.mse);
    }
    std::vector<BenchmarkAggregate> out;
    out.reserve(groups.size());
    for (const auto& g : groups) {
        const auto n = static_cast<double>(g.values.size());
        double mean = 0.0;
        for (double v : g.values) mean += v;
        mean /= n;
        double ss = 0.0;
        for (double v : g.values) ss += (v - mean) * (v - mean);
        out.push_back({g.smoother, g.alpha, mean, g.values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0});
    }
    return out;
}

double mean_mse(const BenchmarkResult& result, const std::string& smoother, double alpha) {
    for (const auto& a : result.aggregate) {
        if (a.smoother == smoother && std::abs(a.alpha - alpha) < 1e-12) return a.mean_mse;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double best_mean_mse(const BenchmarkResult& result, const std::string& prefix, double alpha) {
    double best = std::numeric_limits<double>::quiet_NaN();
    for (const auto& a : result.aggregate) {
        if (a.smoother.rfind(prefix, 0) != 0 || std::abs(a.alpha - alpha) >= 1e-12) continue;
        if (std::isnan(best) || a.mean_mse < best) best = a.mean_mse;
    }
    return best;
}

std::vector<Finding> benchmark_findings(const BenchmarkResult& result) {
    auto has_alpha = [&](double alpha) {
        return std::any_of(result.aggregate.begin(), result.aggregate.end(),
                           [&](const BenchmarkAggregate& a) { return std::abs(a.alpha - alpha) < 1e-12; });
    };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6e", v);
        return std::string(buf);
    };
    const std::vector<std::pair<std::string, std::string>> families = {
        {"MA", "ma"}, {"SG", "sg"}, {"Kernel (best bandwidth)", "kernel"}};

    std::vector<Finding> findings;
    if (has_alpha(0.3) && has_alpha(0.9)) {
        for (const auto& [label, prefix] : families) {
            const double lo = best_mean_mse(result, prefix, 0.3);
            const double hi = best_mean_mse(result, prefix, 0.9);
            if (std::isnan(lo) || std::isnan(hi)) continue;
            findings.push_back({label + ": mean MSE at alpha=0.9 <= mean MSE at alpha=0.3", hi <= lo,
                                "alpha=0.9 " + fmt(hi) + ", alpha=0.3 " + fmt(lo)});
        }
    }
    for (double alpha : {0.7, 0.8}) {
        if (!has_alpha(alpha)) continue;
        const double kernel = best_mean_mse(result, "kernel", alpha);
        for (const auto& [label, prefix] : {std::pair<std::string, std::string>{"SG", "sg"}, {"MA", "ma"}}) {
            const double other = best_mean_mse(result, prefix, alpha);
            if (std::isnan(kernel) || std::isnan(other)) continue;
            char claim[96];
            std::snprintf(claim, sizeof claim, "alpha=%.1f: best kernel mean MSE <= %s mean MSE", alpha, label.c_str());
            findings.push_back({claim, kernel <= other, "kernel " + fmt(kernel) + ", " + label + " " + fmt(other)});
        }
    }
    return findings;
}

std::string format_estimate_table(const std::vector<MethodResult>& results) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %18s %18s %18s\n", "Estimator", "Hurst (H)", "alpha=(2H-1)", "D=(2-H)");
    out << line;
    for (const auto& r : results) {
        const std::string name(method_name(r.method));
        if (r.estimate) {
            const auto& e = *r.estimate;
            std::snprintf(line, sizeof line, "%-10s %18.4f %18.4f %18.4f%s\n", name.c_str(), e.h, e.alpha, e.fractal_dim,
                          e.out_of_range ? "  (h outside (0, 1.5))" : "");
        } else {
            const std::string cell(to_string(r.error.value_or(ErrorKind::InvalidArgument)));
            std::snprintf(line, sizeof line, "%-10s %18s %18s %18s\n", name.c_str(), cell.c_str(), cell.c_str(),
                          cell.c_str());
        }
        out << line;
    }
    return out.str();
}

std::string table1_report(const TimeSeries& series, const EstimatorConfig& config, unsigned threads) {
    return format_estimate_table(estimate_all(series, config, threads));
}

}  // namespace selfsim
