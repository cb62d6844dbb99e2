#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "homsim/coherence.hpp"
#include "homsim/emitter.hpp"

namespace homsim {

enum class CoherenceMethod { closed_form, qrt_numeric };

// Raised when a computed quantity violates a numerical sanity bound
// (imaginary residue above 1e-9, negative correlation beyond -1e-12,
// degenerate spectrum normalization). The CLI maps it to exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything needed to evaluate the two-detector correlation for one pair of
// emitters. Both emitters see the same pulse train.
struct HomScenario {
    EmitterParams emitter1{3.0, 2.0};
    EmitterParams emitter2{-4.0, 2.0};
    PulseTrain train;
    PopulationConvention convention = PopulationConvention::as_published;
    CoherenceMethod method = CoherenceMethod::closed_form;
    double t_max = 4.8;  // upper limit of the t integration
    int t_steps = 4801;  // uniform base nodes of the t grid
    std::vector<double> theta_grid;
};

// A sampled curve: g2(theta) or S(omega). abscissa strictly ascending,
// values non-negative.
struct CorrelationCurve {
    std::vector<double> abscissa;
    std::vector<double> values;
    std::string metadata;
};

// Joint detection correlation behind the 50:50 splitter, assembled from the
// single-emitter coherences of the scenario's backend:
// (1/4)[g1(t,0)g2(t+th,0) + g2(t,0)g1(t+th,0) - 2 Re g1*(t,th)g2(t,th)].
// Real and non-negative; tiny negative rounding is clamped to zero.
double G2_34(double t, double theta, const HomScenario& s);

// Stationary-regime form (populations pinned at 1/2):
// (1/8)[1 - Re f1(t,th) f2*(t,th)]. Requires the pulse train.
double G2_34_steady(double t, double theta, const HomScenario& s);

// No-control closed form of the integrated correlation,
// (1/(4 gamma))(1 - e^{-2 gamma T}) e^{-gamma theta} (1 - cos(delta21 theta));
// pass T = infinity for the long-time limit.
double g2_34_free_closed(double theta, double delta21, double gamma, double T);

// Integrated correlation over t in [0, t_max] for every theta of the grid,
// composite trapezoid with nodes at every pulse time and at every point where
// t+theta crosses a pulse (the integrand kinks there). Grid points are
// independent; workers > 1 fans them out without changing the result.
CorrelationCurve g2_34_integrated(const HomScenario& s, int workers = 1);

// Same integral with the stationary integrand G2_34_steady.
CorrelationCurve g2_34_integrated_steady(const HomScenario& s, int workers = 1);

// Uniform theta grid augmented with the exact pulse multiples k*tau (the
// curve can jump there); nodes already within 1e-9 of a multiple are snapped
// onto it so default grids keep their size.
std::vector<double> make_theta_grid(double theta_max, int steps,
                                    const PulseTrain& train);

namespace detail {

// Validates the four-term assembly: flags imaginary residue > 1e-9 and values
// below -1e-12; reports values in [-1e-12, 0) as 0.
double finalize_g2(std::complex<double> raw);

// t-integration grid: t_steps uniform nodes on [0, t_max] plus pulse times
// k*tau and crossing points k*tau - theta inside (0, t_max).
std::vector<double> time_grid(double t_max, int steps, double theta,
                              const PulseTrain& train);

}  // namespace detail

}  // namespace homsim
