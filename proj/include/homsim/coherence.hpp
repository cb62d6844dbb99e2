#pragma once

#include <complex>

#include "homsim/emitter.hpp"

namespace homsim {

// Which population weights the pulsed first-order coherence. as_published
// multiplies f(t,theta) by rho_gg(t); excited multiplies by
// rho_ee(t) = 1 - rho_gg(t), which is what the regression propagation and the
// theta = 0 limit produce. In the stationary regime both approach 1/2, so
// integrated curves are nearly insensitive to the choice.
enum class PopulationConvention { as_published, excited };

// Free-decay two-time coherence e^{-gamma t} e^{(-gamma/2 + i delta) theta}.
std::complex<double> g_free(double t, double theta, const EmitterParams& p);

// Intra/inter-interval phase factor of the pulsed coherence. Zero whenever t
// and t+theta are separated by an odd number of pulses; for even separation m
// (including m = 0, the same-interval case)
// e^{-gamma theta / 2} e^{i delta (theta - m tau)}.
std::complex<double> f_pulsed(double t, double theta, const EmitterParams& p,
                              const PulseTrain& train);

// Pulsed coherence f(t,theta) times the population selected by conv.
std::complex<double> g_pulsed_closed(double t, double theta,
                                     const EmitterParams& p,
                                     const PulseTrain& train,
                                     PopulationConvention conv);

// Numeric route: propagate the density matrix from the excited state to t,
// form the auxiliary operator rho(t) sigma+, propagate it to t+theta with the
// same linear maps and read off the eg element. Serves as the independent
// cross-check of the closed forms (it carries the conjugate phase convention;
// magnitudes and all beam-splitter observables agree).
std::complex<double> g_qrt_numeric(double t, double theta,
                                   const EmitterParams& p,
                                   const PulseTrain& train);

}  // namespace homsim
