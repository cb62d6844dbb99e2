#include "homsim/coherence.hpp"

#include <cmath>
#include <stdexcept>

namespace homsim {

namespace {

void require_times(double t, double theta, const char* who) {
    if (!(t >= 0.0) || !std::isfinite(t) || !(theta >= 0.0) || !std::isfinite(theta))
        throw std::invalid_argument(std::string(who) +
                                    ": t and theta must be >= 0 and finite");
}

}  // namespace

std::complex<double> g_free(double t, double theta, const EmitterParams& p) {
    require_times(t, theta, "g_free");
    return std::exp(-p.gamma * t) *
           std::polar(std::exp(-0.5 * p.gamma * theta), p.delta * theta);
}

std::complex<double> f_pulsed(double t, double theta, const EmitterParams& p,
                              const PulseTrain& train) {
    require_times(t, theta, "f_pulsed");
    if (!train.enabled)
        throw std::invalid_argument("f_pulsed: pulse train must be enabled");
    const PairPosition pos = pair_position(t, theta, train.tau);
    if (pos.separation % 2 != 0) return 0.0;
    // The even formula at m = 0 coincides with the same-interval expression.
    const double shifted = theta - static_cast<double>(pos.separation) * train.tau;
    return std::polar(std::exp(-0.5 * p.gamma * theta), p.delta * shifted);
}

std::complex<double> g_pulsed_closed(double t, double theta,
                                     const EmitterParams& p,
                                     const PulseTrain& train,
                                     PopulationConvention conv) {
    const std::complex<double> f = f_pulsed(t, theta, p, train);
    const double gg = rho_gg_closed_form(t, train.tau, p.gamma);
    const double w = conv == PopulationConvention::as_published ? gg : 1.0 - gg;
    return f * w;
}

std::complex<double> g_qrt_numeric(double t, double theta,
                                   const EmitterParams& p,
                                   const PulseTrain& train) {
    require_times(t, theta, "g_qrt_numeric");
    const TwoLevelOperator rho =
        propagate(TwoLevelOperator::excited(), 0.0, t, p, train);
    // rho' = rho(t) sigma+ keeps only the eg and gg elements.
    TwoLevelOperator aux;
    aux.eg = rho.ee;
    aux.gg = rho.ge;
    aux = propagate(aux, t, t + theta, p, train);
    return aux.eg;  // Tr[rho'(t+theta) sigma-]
}

}  // namespace homsim
