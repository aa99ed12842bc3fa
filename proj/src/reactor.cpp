#include "selfsim/reactor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "selfsim/error.hpp"

namespace selfsim {

void ReactorParams::validate() const {
    if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorKind::InvalidArgument, "beta must lie in (0, 1)");
    if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
    if (!(gen_time > 0.0)) throw Error(ErrorKind::InvalidArgument, "generation time must be positive");
}

double ReactivityProgram::at(double t) const noexcept {
    switch (kind) {
        case ProgramKind::Constant: return rho0;
        case ProgramKind::Step: return t < t_event ? rho0 : rho1;
        case ProgramKind::Ramp:
            if (t >= t_event) return rho1;
            if (t <= 0.0) return rho0;
            return rho0 + (rho1 - rho0) * (t / t_event);
    }
    return rho0;
}

bool ReactivityProgram::super_prompt_critical(const ReactorParams& params) const noexcept {
    const double peak = kind == ProgramKind::Constant ? std::abs(rho0) : std::max(std::abs(rho0), std::abs(rho1));
    return peak >= params.beta;
}

namespace {

struct Derivative {
    double dp;
    double dc;
};

Derivative kinetics(const ReactorParams& k, double rho, double p, double c) {
    return {(rho - k.beta) / k.gen_time * p + k.lambda * c, k.beta / k.gen_time * p - k.lambda * c};
}

}  // namespace

std::vector<ReactorState> simulate(const ReactorParams& params, const ReactivityProgram& program, double t_end,
                                   double dt) {
    params.validate();
    if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
    if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
    if (dt > 10.0 * params.gen_time * (1.0 + 1e-12)) {
        throw Error(ErrorKind::StepTooLarge, "dt = " + std::to_string(dt) + " s exceeds 10 generation times");
    }
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));

    std::vector<ReactorState> states;
    states.reserve(steps + 1);
    double p = 1.0;
    double c = params.equilibrium_precursors();
    states.push_back({p, c, 0.0});
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double rho_start = program.at(t);
        const double rho_mid = program.at(t + 0.5 * dt);
        const double rho_end = program.at(t + dt);
        const auto k1 = kinetics(params, rho_start, p, c);
        const auto k2 = kinetics(params, rho_mid, p + 0.5 * dt * k1.dp, c + 0.5 * dt * k1.dc);
        const auto k3 = kinetics(params, rho_mid, p + 0.5 * dt * k2.dp, c + 0.5 * dt * k2.dc);
        const auto k4 = kinetics(params, rho_end, p + dt * k3.dp, c + dt * k3.dc);
        p += dt / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
        c += dt / 6.0 * (k1.dc + 2.0 * k2.dc + 2.0 * k3.dc + k4.dc);
        if (!(p > 0.0) || !(c > 0.0) || !std::isfinite(p) || !std::isfinite(c)) {
            throw Error(ErrorKind::NonPositiveState,
                        "integration left the positive orthant at t = " + std::to_string(t + dt) + " s");
        }
        states.push_back({p, c, static_cast<double>(i + 1) * dt});
    }
    return states;
}

double power_at(std::span<const ReactorState> states, double t) {
    if (states.empty()) throw Error(ErrorKind::InvalidArgument, "no reactor states to interpolate");
    if (t <= states.front().t) return states.front().p;
    if (t >= states.back().t) return states.back().p;
    const auto upper = std::upper_bound(states.begin(), states.end(), t,
                                        [](double value, const ReactorState& s) { return value < s.t; });
    const auto& right = *upper;
    const auto& left = *(upper - 1);
    const double span = right.t - left.t;
    // Tick times that differ from a grid node by rounding only snap to the node.
    const double snap = 1e-9 * span;
    if (t - left.t <= snap) return left.p;
    if (right.t - t <= snap) return right.p;
    const double w = (t - left.t) / span;
    return left.p + w * (right.p - left.p);
}

std::size_t tick_count(std::span<const ReactorState> states, double tick) {
    if (!(tick > 0.0)) throw Error(ErrorKind::InvalidArgument, "tick must be positive");
    if (states.empty()) throw Error(ErrorKind::InvalidArgument, "no reactor states");
    return static_cast<std::size_t>(std::floor(states.back().t / tick + 1e-9)) + 1;
}

TimeSeries measure_through_channel(std::span<const ReactorState> states, const ChannelConfig& channel) {
    const std::size_t ticks = tick_count(states, channel.tick);
    if (channel.delay_trace.size() < ticks) {
        throw Error(ErrorKind::TraceTooShort, "delay trace holds " + std::to_string(channel.delay_trace.size()) +
                                                  " entries but the horizon needs " + std::to_string(ticks));
    }
    std::vector<double> out(ticks);
    for (std::size_t k = 0; k < ticks; ++k) {
        const double tau = channel.delay_trace[k];
        if (!(tau >= 0.0)) throw Error(ErrorKind::InvalidArgument, "negative delay at tick " + std::to_string(k));
        const double tk = static_cast<double>(k) * channel.tick;
        out[k] = power_at(states, std::max(0.0, tk - tau));
    }
    return TimeSeries(std::move(out), channel.tick);
}

TimeSeries sample_on_ticks(std::span<const ReactorState> states, double tick) {
    const std::size_t ticks = tick_count(states, tick);
    return measure_through_channel(states, ChannelConfig{tick, TimeSeries(std::vector<double>(ticks, 0.0), tick)});
}

}  // namespace selfsim
