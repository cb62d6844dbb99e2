#include "homsim/emitter.hpp"

#include <cmath>
#include <stdexcept>

namespace homsim {

namespace {

void require_params(const EmitterParams& p) {
    if (!(p.gamma > 0.0) || !std::isfinite(p.gamma))
        throw std::invalid_argument("EmitterParams: gamma must be positive and finite");
    if (!std::isfinite(p.delta))
        throw std::invalid_argument("EmitterParams: delta must be finite");
}

void require_tau(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw std::invalid_argument("PulseTrain: tau must be positive and finite");
}

}  // namespace

std::int64_t interval_index(double t, double tau) {
    require_tau(tau);
    const double q = t / tau;
    const double r = std::round(q);
    if (std::abs(q - r) < interval_guard) return static_cast<std::int64_t>(r);
    return static_cast<std::int64_t>(std::floor(q));
}

IntervalPosition interval_position(double t, double tau) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("interval_position: t must be >= 0 and finite");
    const std::int64_t k = interval_index(t, tau);
    // offset can come out a hair negative when t was snapped up to k*tau
    return {k, std::max(t - static_cast<double>(k) * tau, 0.0)};
}

PairPosition pair_position(double t, double theta, double tau) {
    if (!(theta >= 0.0) || !std::isfinite(theta))
        throw std::invalid_argument("pair_position: theta must be >= 0 and finite");
    const IntervalPosition start = interval_position(t, tau);
    const IntervalPosition end = interval_position(t + theta, tau);
    return {start, end.index - start.index, end.offset};
}

TwoLevelOperator evolve_free(const TwoLevelOperator& op, double dt,
                             const EmitterParams& p) {
    require_params(p);
    if (!(dt >= 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("evolve_free: dt must be >= 0 and finite");
    const double decay = std::exp(-p.gamma * dt);
    const std::complex<double> rot =
        std::polar(std::exp(-0.5 * p.gamma * dt), p.delta * dt);
    TwoLevelOperator out;
    out.ee = op.ee * decay;
    out.gg = op.gg + (op.ee - out.ee);  // gg absorbs exactly what ee loses
    out.ge = op.ge * rot;
    out.eg = op.eg * std::conj(rot);
    return out;
}

TwoLevelOperator apply_pi_pulse(const TwoLevelOperator& op) {
    return {op.gg, op.ee, op.ge, op.eg};
}

TwoLevelOperator propagate(const TwoLevelOperator& op, double t0, double t1,
                           const EmitterParams& p, const PulseTrain& train) {
    if (!(t0 >= 0.0) || !std::isfinite(t0) || !std::isfinite(t1))
        throw std::invalid_argument("propagate: times must be finite with t0 >= 0");
    if (t1 < t0) throw std::invalid_argument("propagate: t1 < t0");
    if (!train.enabled) return evolve_free(op, t1 - t0, p);

    const std::int64_t k0 = interval_index(t0, train.tau);
    const std::int64_t k1 = interval_index(t1, train.tau);
    TwoLevelOperator cur = op;
    double t = t0;
    for (std::int64_t k = k0 + 1; k <= k1; ++k) {
        const double tk = static_cast<double>(k) * train.tau;
        cur = evolve_free(cur, std::max(tk - t, 0.0), p);
        cur = apply_pi_pulse(cur);
        t = tk;
    }
    return evolve_free(cur, std::max(t1 - t, 0.0), p);
}

double rho_gg_closed_form(double t, double tau, double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("rho_gg_closed_form: gamma must be positive");
    const IntervalPosition pos = interval_position(t, tau);
    const double m = static_cast<double>(pos.index);
    const double sign = (pos.index % 2 == 0) ? -1.0 : 1.0;  // (-1)^(M+1)
    const double transient = 1.0 - sign * std::exp(-(m + 1.0) * gamma * tau);
    return 1.0 - transient / (1.0 + std::exp(-gamma * tau)) *
                     std::exp(-gamma * pos.offset);
}

}  // namespace homsim
