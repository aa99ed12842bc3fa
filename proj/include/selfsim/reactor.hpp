#pragma once

#include <span>
#include <vector>

#include "selfsim/series.hpp"

namespace selfsim {

/// One-group point-kinetics constants.
struct ReactorParams {
    double beta = 0.0065;     // delayed neutron fraction
    double lambda = 0.08;     // precursor decay constant, 1/s
    double gen_time = 1e-4;   // neutron generation time l, s

    void validate() const;
    /// Precursor level that holds P = 1 at zero reactivity: beta / (l * lambda).
    [[nodiscard]] double equilibrium_precursors() const noexcept { return beta / (gen_time * lambda); }
};

struct ReactorState {
    double p = 1.0;  // normalized power
    double c = 0.0;  // precursor concentration, same normalization
    double t = 0.0;  // s
};

enum class ProgramKind { Constant, Step, Ramp };

/// Reactivity versus time.
///   Constant: rho0 everywhere.
///   Step:     rho0 before t_event, rho1 from t_event on.
///   Ramp:     linear from rho0 at t = 0 to rho1 at t_event, then rho1.
struct ReactivityProgram {
    ProgramKind kind = ProgramKind::Step;
    double rho0 = 0.0;
    double rho1 = 0.0022;
    double t_event = 0.0;

    [[nodiscard]] double at(double t) const noexcept;
    /// True when |rho| reaches beta anywhere in the program.
    [[nodiscard]] bool super_prompt_critical(const ReactorParams& params) const noexcept;
};

/// Integrates
///   dP/dt = (rho(t) - beta) / l * P + lambda * C
///   dC/dt = beta / l * P - lambda * C
/// with fixed-step RK4 from P = 1, C = beta / (l lambda), returning states at
/// t = 0, dt, 2 dt, ... up to t_end.
/// Throws StepTooLarge when dt > 10 * gen_time and NonPositiveState if P or C
/// leaves the positive orthant.
[[nodiscard]] std::vector<ReactorState> simulate(const ReactorParams& params, const ReactivityProgram& program,
                                                 double t_end, double dt);

/// P(t) by linear interpolation between integrator states; clamps to the
/// first/last state outside the covered interval.
[[nodiscard]] double power_at(std::span<const ReactorState> states, double t);

struct ChannelConfig {
    double tick = 0.01;       // measurement interval, s
    TimeSeries delay_trace;   // per-tick delays, s
};

/// Number of measurement ticks covering the simulated horizon:
/// floor(t_end / tick) + 1.
[[nodiscard]] std::size_t tick_count(std::span<const ReactorState> states, double tick);

/// Stale-sample channel: y_k = P(max(0, t_k - tau_k)) at t_k = k * tick.
/// Throws TraceTooShort when the delay trace has fewer entries than ticks and
/// InvalidArgument for a negative delay or non-positive tick.
[[nodiscard]] TimeSeries measure_through_channel(std::span<const ReactorState> states, const ChannelConfig& channel);

/// The undelayed power on the tick grid.
[[nodiscard]] TimeSeries sample_on_ticks(std::span<const ReactorState> states, double tick);

}  // namespace selfsim
