#pragma once

#include <complex>
#include <cstdint>

namespace homsim {

// Parameters of one two-level emitter in the frame rotating at the pulse
// carrier frequency: detuning delta (any sign) and spontaneous emission rate
// gamma > 0. Energy is measured in units of gamma, time in units of 1/gamma.
struct EmitterParams {
    double delta = 0.0;
    double gamma = 2.0;
};

// Periodic train of instantaneous pi pulses with period tau. Pulses fire at
// t = k*tau for integer k >= 1; there is no pulse at t = 0. Disabled means
// free evolution.
struct PulseTrain {
    double tau = 0.2;
    bool enabled = true;
};

// General 2x2 operator in the {|e>,|g>} basis. Used both for physical density
// matrices (ee, gg real in [0,1], trace 1, ge = conj(eg)) and for the
// auxiliary operators of two-time correlators, which carry no positivity or
// trace constraint -- only linearity of the evolution.
struct TwoLevelOperator {
    std::complex<double> ee{};
    std::complex<double> gg{};
    std::complex<double> eg{};
    std::complex<double> ge{};

    static TwoLevelOperator excited() { return {1.0, 0.0, 0.0, 0.0}; }
};

// Position of a time inside the pulse train: t = index*tau + offset with
// offset in [0, tau). Intervals are half-open [k tau, (k+1) tau); a time
// exactly at k*tau counts as post-pulse.
struct IntervalPosition {
    std::int64_t index = 0;
    double offset = 0.0;
};

// Relative position of a detection pair (t, t+theta):
// t + theta = (start.index + separation)*tau + end_offset.
struct PairPosition {
    IntervalPosition start;
    std::int64_t separation = 0;
    double end_offset = 0.0;
};

// Guard band (in units of tau) snapping times that sit within representation
// error of an exact pulse time onto that pulse time. Without it, parity
// decisions flip at grid nodes like 3*tau that are not exactly representable.
inline constexpr double interval_guard = 1e-12;

std::int64_t interval_index(double t, double tau);
IntervalPosition interval_position(double t, double tau);
PairPosition pair_position(double t, double theta, double tau);

// Exact solution of the optical Bloch equations with the drive off, over a
// span dt >= 0. Linear in op; preserves the trace bit-exactly.
TwoLevelOperator evolve_free(const TwoLevelOperator& op, double dt,
                             const EmitterParams& p);

// Instantaneous pi rotation about x: swaps ee<->gg and eg<->ge.
TwoLevelOperator apply_pi_pulse(const TwoLevelOperator& op);

// Piecewise-exact propagation from t0 to t1 (0 <= t0 <= t1): free evolution
// across each pulse-free segment, a pulse at every k*tau in (t0, t1]. A pulse
// exactly at t0 is not applied (it belongs to the preceding call); one exactly
// at t1 is. Composable: propagate(t0,t2) == propagate(t1,t2) o propagate(t0,t1).
TwoLevelOperator propagate(const TwoLevelOperator& op, double t0, double t1,
                           const EmitterParams& p, const PulseTrain& train);

// Ground-state population of an initially excited emitter under the periodic
// train, evaluated from the closed per-interval recursion. Value in [0,1].
double rho_gg_closed_form(double t, double tau, double gamma);

}  // namespace homsim
