#include "homsim/hom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "homsim/grid.hpp"
#include "homsim/parallel.hpp"

namespace homsim {

namespace {

std::complex<double> coherence(double t, double theta, const EmitterParams& p,
                               const HomScenario& s) {
    if (s.method == CoherenceMethod::qrt_numeric)
        return g_qrt_numeric(t, theta, p, s.train);
    if (s.train.enabled) return g_pulsed_closed(t, theta, p, s.train, s.convention);
    return g_free(t, theta, p);
}

void require_scenario(const HomScenario& s) {
    if (!(s.t_max > 0.0) || !std::isfinite(s.t_max))
        throw std::invalid_argument("HomScenario: t_max must be positive");
    if (s.t_steps < 2)
        throw std::invalid_argument("HomScenario: t_steps must be >= 2");
    if (s.theta_grid.empty())
        throw std::invalid_argument("HomScenario: theta_grid is empty");
    for (std::size_t i = 0; i < s.theta_grid.size(); ++i) {
        if (!(s.theta_grid[i] >= 0.0) || !std::isfinite(s.theta_grid[i]))
            throw std::invalid_argument("HomScenario: theta_grid must be >= 0 and finite");
        if (i > 0 && !(s.theta_grid[i] > s.theta_grid[i - 1]))
            throw std::invalid_argument("HomScenario: theta_grid must be strictly ascending");
    }
}

std::string describe(const HomScenario& s, const char* kind) {
    std::ostringstream os;
    os << kind << " delta1=" << s.emitter1.delta << " delta2=" << s.emitter2.delta
       << " gamma=" << s.emitter1.gamma;
    if (s.train.enabled)
        os << " tau=" << s.train.tau;
    else
        os << " pulses=off";
    os << " t_max=" << s.t_max << " t_steps=" << s.t_steps << " convention="
       << (s.convention == PopulationConvention::as_published ? "as-published"
                                                              : "excited")
       << " method="
       << (s.method == CoherenceMethod::closed_form ? "closed-form" : "qrt-numeric");
    return os.str();
}

template <typename Integrand>
CorrelationCurve integrate_over_t(const HomScenario& s, int workers,
                                  const char* kind, Integrand&& integrand) {
    require_scenario(s);
    CorrelationCurve curve;
    curve.abscissa = s.theta_grid;
    curve.values.assign(s.theta_grid.size(), 0.0);
    parallel_for_index(s.theta_grid.size(), workers, [&](std::size_t i) {
        const double theta = s.theta_grid[i];
        const std::vector<double> tg =
            detail::time_grid(s.t_max, s.t_steps, theta, s.train);
        double acc = 0.0;
        double prev = integrand(tg[0], theta);
        for (std::size_t j = 1; j < tg.size(); ++j) {
            const double cur = integrand(tg[j], theta);
            acc += 0.5 * (tg[j] - tg[j - 1]) * (prev + cur);
            prev = cur;
        }
        curve.values[i] = acc;
    });
    curve.metadata = describe(s, kind);
    return curve;
}

}  // namespace

namespace detail {

double finalize_g2(std::complex<double> raw) {
    if (std::abs(raw.imag()) > 1e-9) {
        std::ostringstream os;
        os << "G2_34: imaginary residue " << raw.imag();
        throw NumericError(os.str());
    }
    double v = raw.real();
    if (v < 0.0) {
        if (v < -1e-12) {
            std::ostringstream os;
            os << "G2_34: negative value " << v;
            throw NumericError(os.str());
        }
        v = 0.0;
    }
    return v;
}

std::vector<double> time_grid(double t_max, int steps, double theta,
                              const PulseTrain& train) {
    std::vector<double> breakpoints;
    if (train.enabled) {
        for (std::int64_t k = 1; static_cast<double>(k) * train.tau < t_max; ++k)
            breakpoints.push_back(static_cast<double>(k) * train.tau);
        for (std::int64_t k = 1;
             static_cast<double>(k) * train.tau - theta < t_max; ++k) {
            const double b = static_cast<double>(k) * train.tau - theta;
            if (b > 0.0) breakpoints.push_back(b);
        }
    }
    return merged_grid(0.0, t_max, steps, breakpoints);
}

}  // namespace detail

double G2_34(double t, double theta, const HomScenario& s) {
    const std::complex<double> a1 = coherence(t, 0.0, s.emitter1, s);
    const std::complex<double> a2 = coherence(t, 0.0, s.emitter2, s);
    const std::complex<double> b1 = coherence(t + theta, 0.0, s.emitter1, s);
    const std::complex<double> b2 = coherence(t + theta, 0.0, s.emitter2, s);
    const std::complex<double> c1 = coherence(t, theta, s.emitter1, s);
    const std::complex<double> c2 = coherence(t, theta, s.emitter2, s);
    const std::complex<double> raw =
        0.25 * (a1 * b2 + a2 * b1 - std::conj(c1) * c2 - std::conj(c2) * c1);
    return detail::finalize_g2(raw);
}

double G2_34_steady(double t, double theta, const HomScenario& s) {
    if (!s.train.enabled)
        throw std::invalid_argument("G2_34_steady: pulse train must be enabled");
    const std::complex<double> f1 = f_pulsed(t, theta, s.emitter1, s.train);
    const std::complex<double> f2 = f_pulsed(t, theta, s.emitter2, s.train);
    return 0.125 * (1.0 - (f1 * std::conj(f2)).real());
}

double g2_34_free_closed(double theta, double delta21, double gamma, double T) {
    if (!(theta >= 0.0) || !(gamma > 0.0))
        throw std::invalid_argument("g2_34_free_closed: need theta >= 0, gamma > 0");
    const double horizon_factor = std::isinf(T) ? 1.0 : 1.0 - std::exp(-2.0 * gamma * T);
    return horizon_factor / (4.0 * gamma) * std::exp(-gamma * theta) *
           (1.0 - std::cos(delta21 * theta));
}

CorrelationCurve g2_34_integrated(const HomScenario& s, int workers) {
    return integrate_over_t(s, workers, "g2_34_integrated",
                            [&s](double t, double theta) { return G2_34(t, theta, s); });
}

CorrelationCurve g2_34_integrated_steady(const HomScenario& s, int workers) {
    if (!s.train.enabled)
        throw std::invalid_argument("g2_34_integrated_steady: pulse train must be enabled");
    return integrate_over_t(s, workers, "g2_34_integrated_steady",
                            [&s](double t, double theta) {
                                return G2_34_steady(t, theta, s);
                            });
}

std::vector<double> make_theta_grid(double theta_max, int steps,
                                    const PulseTrain& train) {
    std::vector<double> grid = uniform_grid(0.0, theta_max, steps);
    if (!train.enabled) return grid;
    constexpr double snap = 1e-9;
    for (double& x : grid) {
        const double r = std::round(x / train.tau) * train.tau;
        if (std::abs(x - r) <= snap) x = r;
    }
    for (std::int64_t k = 1;
         static_cast<double>(k) * train.tau <= theta_max + snap; ++k) {
        const double m = static_cast<double>(k) * train.tau;
        const auto it = std::lower_bound(grid.begin(), grid.end(), m - snap);
        if (it == grid.end() || std::abs(*it - m) > snap) grid.insert(it, m);
    }
    return grid;
}

}  // namespace homsim
