#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "selfsim/benchmark.hpp"
#include "selfsim/csv.hpp"
#include "selfsim/error.hpp"
#include "selfsim/hurst.hpp"
#include "selfsim/reactor.hpp"
#include "selfsim/series.hpp"
#include "selfsim/smoothing.hpp"
#include "selfsim/spectral.hpp"
#include "selfsim/synthesis.hpp"

namespace selfsim::cli {

namespace {

void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::FileNotFound, "cannot write '" + path + "'");
    write(file);
    if (!file) throw Error(ErrorKind::FileNotFound, "write to '" + path + "' failed");
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidArgument, "cannot parse list element '" + item + "'");
        }
    }
    return values;
}

// Smoother flags shared by `smooth` and `simulate`.
struct SmootherFlags {
    std::string method = "kernel";
    std::size_t window = 11;
    std::size_t n_left = 5;
    std::size_t n_right = 5;
    std::size_t degree = 3;
    double bandwidth = 4.0;
    bool valid_only = false;

    void add_to(CLI::App& app, const std::string& method_flag, bool allow_none) {
        auto* opt = app.add_option(method_flag, method, "Smoother: ma, sg or kernel")->capture_default_str();
        if (allow_none) {
            opt->check(CLI::IsMember({"none", "ma", "sg", "kernel"}));
        } else {
            opt->check(CLI::IsMember({"ma", "sg", "kernel"}));
        }
        app.add_option("--window", window, "Moving-average window (odd)")->capture_default_str();
        app.add_option("--nl", n_left, "Savitzky-Golay points left of center")->capture_default_str();
        app.add_option("--nr", n_right, "Savitzky-Golay points right of center")->capture_default_str();
        app.add_option("--degree", degree, "Savitzky-Golay polynomial degree")->capture_default_str();
        app.add_option("--bandwidth", bandwidth, "Kernel bandwidth in samples")->capture_default_str();
    }

    [[nodiscard]] TimeSeries apply(const TimeSeries& series) const {
        if (method == "ma") {
            MovingAverageConfig c;
            c.window = window;
            c.valid_only = valid_only;
            return moving_average(series, c);
        }
        if (method == "sg") {
            return savgol_smooth(series, {n_left, n_right, degree, valid_only});
        }
        return kernel_smooth(series, {bandwidth});
    }
};

struct EstimatorFlags {
    EstimatorConfig config;

    void add_to(CLI::App& app) {
        app.add_option("--min-block", config.min_block, "Smallest block size")->capture_default_str();
        app.add_option("--max-block-fraction", config.max_block_fraction, "Largest block as a fraction of N")
            ->capture_default_str();
        app.add_option("--num-scales", config.num_scales, "Number of block sizes")->capture_default_str();
        app.add_option("--low-freq-fraction", config.low_freq_fraction, "Periodogram regression band")
            ->capture_default_str();
        app.add_option("--boxes", config.boxes, "Boxed-periodogram box count")->capture_default_str();
    }
};

struct ChannelFlags {
    double h = 0.88;
    double mu_ms = 127.0;
    double sigma_ms = 30.0;
    double tau_max_ms = 500.0;
    std::uint64_t seed = 1;

    void add_to(CLI::App& app, bool with_seed) {
        app.add_option("--h", h, "Hurst exponent of the delay process")->capture_default_str();
        app.add_option("--mu-ms", mu_ms, "Mean delay in ms")->capture_default_str();
        app.add_option("--sigma-ms", sigma_ms, "Delay scale in ms")->capture_default_str();
        app.add_option("--tau-max-ms", tau_max_ms, "Delay clamp in ms")->capture_default_str();
        if (with_seed) app.add_option("--seed", seed, "Random seed")->capture_default_str();
    }
};

struct ReactorFlags {
    ReactorParams params;
    std::string program = "step";
    double rho0 = 0.0;
    double rho1 = 0.0022;
    double t_event = 0.0;
    double t_end = 10.0;
    double dt = 1e-3;
    double tick = 0.01;

    void add_to(CLI::App& app) {
        app.add_option("--beta", params.beta, "Delayed neutron fraction")->capture_default_str();
        app.add_option("--lambda", params.lambda, "Precursor decay constant (1/s)")->capture_default_str();
        app.add_option("--gen-time", params.gen_time, "Neutron generation time (s)")->capture_default_str();
        app.add_option("--program", program, "Reactivity program: step, ramp or constant")
            ->check(CLI::IsMember({"step", "ramp", "constant"}))
            ->capture_default_str();
        app.add_option("--rho0", rho0, "Initial reactivity")->capture_default_str();
        app.add_option("--rho1", rho1, "Reactivity after the event")->capture_default_str();
        app.add_option("--t-event", t_event, "Event time (s)")->capture_default_str();
        app.add_option("--t-end", t_end, "Simulated horizon (s)")->capture_default_str();
        app.add_option("--dt", dt, "Integrator step (s)")->capture_default_str();
        app.add_option("--tick", tick, "Measurement interval (s)")->capture_default_str();
    }

    [[nodiscard]] ReactivityProgram reactivity() const {
        ReactivityProgram p;
        p.kind = program == "ramp" ? ProgramKind::Ramp : program == "constant" ? ProgramKind::Constant : ProgramKind::Step;
        p.rho0 = rho0;
        p.rho1 = rho1;
        p.t_event = t_event;
        return p;
    }
};

void print_stats(std::ostream& out, const SummaryStats& s) {
    out << std::setprecision(10);
    out << "n                " << s.n << '\n'
        << "mean             " << s.mean << '\n'
        << "variance         " << s.variance << '\n'
        << "skewness         " << s.skewness << '\n'
        << "kurtosis         " << s.kurtosis_raw << '\n'
        << "kurtosis_excess  " << s.kurtosis_excess << '\n';
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::FileNotFound:
        case ErrorKind::InvalidArgument: return kExitUsage;
        default: return kExitData;
    }
}

/// Splices `--config FILE` contents in directly after the subcommand name so
/// that flags given on the command line, which come later, take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest;
    std::vector<std::string> from_file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file path");
            const auto extra = config_arguments(args[++i]);
            from_file.insert(from_file.end(), extra.begin(), extra.end());
        } else if (a.rfind("--config=", 0) == 0) {
            const auto extra = config_arguments(a.substr(9));
            from_file.insert(from_file.end(), extra.begin(), extra.end());
        } else {
            rest.push_back(a);
        }
    }
    if (from_file.empty() || rest.size() < 2) return rest;
    std::vector<std::string> out(rest.begin(), rest.begin() + 2);
    out.insert(out.end(), from_file.begin(), from_file.end());
    out.insert(out.end(), rest.begin() + 2, rest.end());
    return out;
}

}  // namespace

std::vector<std::string> config_arguments(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::FileNotFound, "cannot open config '" + path + "'");
    std::vector<std::string> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::InvalidArgument,
                        "config line " + std::to_string(number) + ": expected key=value");
        }
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        out.push_back("--" + key + "=" + value);
    }
    return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Self-similar delay analysis, smoothing and point-kinetics benchmark toolkit", "selfsim"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    // stats
    auto* stats = app.add_subcommand("stats", "Mean, variance, skewness and kurtosis of a trace");
    std::string stats_input;
    std::size_t acf_lags = 0;
    std::string running_path;
    stats->add_option("input", stats_input, "Trace CSV")->required();
    stats->add_option("--acf", acf_lags, "Also print the autocorrelation up to this lag");
    stats->add_option("--running-variance", running_path, "Write the running variance CSV here");

    // hurst
    auto* hurst = app.add_subcommand("hurst", "Hurst exponent, fractional order and fractal dimension");
    std::string hurst_input;
    std::string hurst_method = "all";
    std::string hurst_csv;
    unsigned hurst_threads = 1;
    EstimatorFlags est;
    hurst->add_option("input", hurst_input, "Trace CSV")->required();
    hurst->add_option("--method", hurst_method, "all, absval, aggvar, boxper, diffvar, higuchi, peng, per or rs")
        ->check(CLI::IsMember({"all", "absval", "aggvar", "boxper", "diffvar", "higuchi", "peng", "per", "rs"}))
        ->capture_default_str();
    hurst->add_option("--csv", hurst_csv, "Also write the estimates as CSV");
    hurst->add_option("--threads", hurst_threads, "Worker threads")->capture_default_str();
    est.add_to(*hurst);

    // synth
    auto* synth = app.add_subcommand("synth", "Synthesize fractional Gaussian noise or a delay trace");
    FgnSpec fgn;
    fgn.h = 0.8;
    fgn.n = 4096;
    fgn.seed = 1;
    bool synth_delay = false;
    ChannelFlags synth_channel;
    std::string synth_output;
    synth->add_option("--h", fgn.h, "Hurst exponent in (0, 1)")->capture_default_str();
    synth->add_option("--n", fgn.n, "Number of samples")->capture_default_str();
    synth->add_option("--sigma", fgn.sigma, "Marginal standard deviation")->capture_default_str();
    synth->add_option("--seed", fgn.seed, "Random seed")->capture_default_str();
    synth->add_flag("--delay", synth_delay, "Emit a clamped delay trace in ms instead of raw fGn");
    synth->add_option("--mu-ms", synth_channel.mu_ms, "Mean delay in ms (with --delay)")->capture_default_str();
    synth->add_option("--sigma-ms", synth_channel.sigma_ms, "Delay scale in ms (with --delay)")->capture_default_str();
    synth->add_option("--tau-max-ms", synth_channel.tau_max_ms, "Delay clamp in ms (with --delay)")
        ->capture_default_str();
    synth->add_option("-o,--output", synth_output, "Output CSV (default: stdout)");

    // psd
    auto* psd = app.add_subcommand("psd", "Periodogram or Welch power spectral density");
    std::string psd_input;
    std::string psd_method = "welch";
    std::string psd_window = "hann";
    WelchConfig welch;
    bool psd_cycles = false;
    std::string psd_output;
    psd->add_option("input", psd_input, "Trace CSV")->required();
    psd->add_option("--method", psd_method, "welch or periodogram")
        ->check(CLI::IsMember({"welch", "periodogram"}))
        ->capture_default_str();
    psd->add_option("--segment", welch.segment_length, "Welch segment length")->capture_default_str();
    psd->add_option("--overlap", welch.overlap_fraction, "Welch overlap fraction in [0, 1)")->capture_default_str();
    psd->add_option("--window", psd_window, "hann or rect")->check(CLI::IsMember({"hann", "rect"}))->capture_default_str();
    psd->add_flag("--cycles", psd_cycles, "Report frequency in cycles per sample");
    psd->add_option("-o,--output", psd_output, "Output CSV (default: stdout)");

    // smooth
    auto* smooth = app.add_subcommand("smooth", "Moving-average, Savitzky-Golay or Gaussian kernel smoothing");
    std::string smooth_input;
    std::string smooth_output;
    SmootherFlags smooth_flags;
    smooth->add_option("input", smooth_input, "Trace CSV")->required();
    smooth_flags.add_to(*smooth, "--method", false);
    smooth->add_flag("--valid-only", smooth_flags.valid_only, "Emit only fully covered points (ma, sg)");
    smooth->add_option("-o,--output", smooth_output, "Output CSV (default: stdout)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Point-kinetics transient measured through a delay channel");
    ReactorFlags reactor;
    ChannelFlags channel;
    std::string delay_trace_path;
    SmootherFlags sim_smoother;
    sim_smoother.method = "none";
    std::string sim_output;
    reactor.add_to(*sim);
    channel.add_to(*sim, true);
    sim->add_option("--delay-trace", delay_trace_path, "Delay trace CSV in ms (replaces the synthetic channel)");
    sim_smoother.add_to(*sim, "--smooth", true);
    sim->add_option("-o,--output", sim_output, "Output CSV (default: stdout)");

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "Smoother MSE versus fractional order of the delay");
    BenchmarkPlan plan;
    std::string alphas = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
    ChannelFlags bench_channel;
    bench_channel.mu_ms = plan.scenario.mu * 1e3;
    bench_channel.sigma_ms = plan.scenario.sigma_d * 1e3;
    bench_channel.tau_max_ms = plan.scenario.tau_max * 1e3;
    std::string results_path;
    std::string aggregate_path;
    bench->add_option("--alphas", alphas, "Comma-separated fractional orders in (0, 1)")->capture_default_str();
    bench->add_option("--seeds", plan.seeds, "Seeds per fractional order")->capture_default_str();
    bench->add_option("--seed-base", plan.seed_base, "Seed of the first trial")->capture_default_str();
    bench->add_option("--threads", plan.threads, "Worker threads")->capture_default_str();
    bench->add_option("--t-end", plan.scenario.t_end, "Simulated horizon (s)")->capture_default_str();
    bench->add_option("--tick", plan.scenario.tick, "Measurement interval (s)")->capture_default_str();
    bench->add_option("--rho1", plan.scenario.program.rho1, "Step reactivity")->capture_default_str();
    bench->add_option("--mu-ms", bench_channel.mu_ms, "Mean delay in ms")->capture_default_str();
    bench->add_option("--sigma-ms", bench_channel.sigma_ms, "Delay scale in ms")->capture_default_str();
    bench->add_option("--tau-max-ms", bench_channel.tau_max_ms, "Delay clamp in ms")->capture_default_str();
    bench->add_option("--results", results_path, "Per-trial CSV (smoother,alpha,seed,mse)");
    bench->add_option("--aggregate", aggregate_path, "Aggregate CSV (smoother,alpha,mean_mse,std_mse)");

    try {
        const auto args = expand_config(raw_args);
        std::vector<const char*> argv;
        argv.reserve(args.size());
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code_for(e.kind());
    }

    try {
        if (*stats) {
            const auto series = csv::read_trace_file(stats_input);
            print_stats(out, summary_stats(series));
            if (acf_lags > 0) {
                const auto rho = autocorrelation(series, acf_lags);
                out << "acf             ";
                for (double r : rho) out << ' ' << r;
                out << '\n';
            }
            if (!running_path.empty()) {
                emit(running_path, out, [&](std::ostream& o) { csv::write_trace(o, running_variance(series)); });
            }
        } else if (*hurst) {
            const auto series = csv::read_trace_file(hurst_input);
            est.config.validate();
            std::vector<MethodResult> results;
            if (hurst_method == "all") {
                results = estimate_all(series, est.config, hurst_threads);
            } else {
                const auto method = parse_method(hurst_method).value();
                results.push_back({method, estimate(method, series, est.config), std::nullopt, {}});
            }
            out << format_estimate_table(results);
            if (!hurst_csv.empty()) emit(hurst_csv, out, [&](std::ostream& o) { csv::write_estimates(o, results); });
            const bool any = std::any_of(results.begin(), results.end(), [](const auto& r) { return r.estimate; });
            if (!any) {
                err << results.front().message << '\n';
                return kExitData;
            }
        } else if (*synth) {
            const auto series = synth_delay ? generate_delay_trace(fgn, synth_channel.mu_ms, synth_channel.sigma_ms,
                                                                   synth_channel.tau_max_ms)
                                            : generate_fgn(fgn);
            emit(synth_output, out, [&](std::ostream& o) { csv::write_trace(o, series); });
        } else if (*psd) {
            const auto series = csv::read_trace_file(psd_input);
            welch.window = psd_window == "rect" ? Window::Rectangular : Window::Hann;
            const auto spectrum = psd_method == "periodogram" ? periodogram(series) : welch_psd(series, welch);
            emit(psd_output, out, [&](std::ostream& o) { csv::write_spectrum(o, spectrum, psd_cycles); });
        } else if (*smooth) {
            const auto series = csv::read_trace_file(smooth_input);
            const auto smoothed = smooth_flags.apply(series);
            emit(smooth_output, out, [&](std::ostream& o) { csv::write_trace(o, smoothed); });
        } else if (*sim) {
            const auto program = reactor.reactivity();
            if (program.super_prompt_critical(reactor.params)) {
                err << "warning: reactivity reaches beta (super-prompt-critical transient)\n";
            }
            const auto states = simulate(reactor.params, program, reactor.t_end, reactor.dt);
            const std::size_t ticks = tick_count(states, reactor.tick);
            std::vector<double> delays;
            if (!delay_trace_path.empty()) {
                const auto trace = csv::read_trace_file(delay_trace_path);
                delays.assign(trace.values().begin(), trace.values().end());
            } else {
                const auto trace = generate_delay_trace({channel.h, std::max<std::size_t>(ticks, 2), 1.0, channel.seed},
                                                        channel.mu_ms, channel.sigma_ms, channel.tau_max_ms);
                delays.assign(trace.values().begin(), trace.values().end());
            }
            for (double& d : delays) d *= 1e-3;
            const auto clean = sample_on_ticks(states, reactor.tick);
            const auto measured =
                measure_through_channel(states, ChannelConfig{reactor.tick, TimeSeries(std::move(delays), reactor.tick)});
            std::optional<TimeSeries> smoothed;
            if (sim_smoother.method != "none") smoothed = sim_smoother.apply(measured);
            emit(sim_output, out, [&](std::ostream& o) {
                o << (smoothed ? "t,p_clean,p_measured,p_smoothed\n" : "t,p_clean,p_measured\n");
                for (std::size_t k = 0; k < clean.size(); ++k) {
                    o << csv::format_number(static_cast<double>(k) * reactor.tick) << ',' << csv::format_number(clean[k])
                      << ',' << csv::format_number(measured[k]);
                    if (smoothed) o << ',' << csv::format_number((*smoothed)[k]);
                    o << '\n';
                }
            });
        } else if (*bench) {
            plan.alphas = parse_list(alphas);
            plan.scenario.mu = bench_channel.mu_ms * 1e-3;
            plan.scenario.sigma_d = bench_channel.sigma_ms * 1e-3;
            plan.scenario.tau_max = bench_channel.tau_max_ms * 1e-3;
            const auto result = run_benchmark(plan);
            out << std::left << std::setw(12) << "smoother" << std::setw(8) << "alpha" << std::setw(16) << "mean_mse"
                << "std_mse\n";
            char line[128];
            for (const auto& a : result.aggregate) {
                std::snprintf(line, sizeof line, "%-12s%-8.2f%-16.6e%.6e\n", a.smoother.c_str(), a.alpha, a.mean_mse,
                              a.std_mse);
                out << line;
            }
            out << "\nfindings:\n";
            for (const auto& f : benchmark_findings(result)) {
                out << (f.holds ? "  [holds]     " : "  [violated]  ") << f.claim << "  (" << f.detail << ")\n";
            }
            if (!results_path.empty()) {
                emit(results_path, out, [&](std::ostream& o) { csv::write_benchmark_records(o, result); });
            }
            if (!aggregate_path.empty()) {
                emit(aggregate_path, out, [&](std::ostream& o) { csv::write_benchmark_aggregate(o, result); });
            }
        }
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    return kExitOk;
}

}  // namespace selfsim::cli
