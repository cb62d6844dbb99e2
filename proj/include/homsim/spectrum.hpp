#pragma once

#include "homsim/coherence.hpp"
#include "homsim/emitter.hpp"
#include "homsim/hom.hpp"

namespace homsim {

// Uniform frequency grid in the rotating frame.
struct SpectrumGrid {
    double omega_min = -20.0;
    double omega_max = 20.0;
    int points = 1601;
};

// Emission spectrum of a single emitter over the finite horizon t_max:
//   S(omega) = N Re int_0^T dt int_0^{T-t} dtheta g(t,theta) e^{-i omega theta}
// evaluated by nested trapezoid on pulse-aligned grids (theta outer, t inner;
// the swap of the triangle domain leaves the integral unchanged) and
// normalized so max S = 1. Negative rounding residue is clamped to 0.
// The free case shows a width-gamma line at omega = delta; under the train
// the weight moves to a central line at 0 with satellites near +-pi/tau.
CorrelationCurve emission_spectrum(
    const EmitterParams& p, const PulseTrain& train, const SpectrumGrid& grid,
    double t_max, PopulationConvention conv = PopulationConvention::excited);

}  // namespace homsim
