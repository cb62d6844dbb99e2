#include "homsim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "homsim/grid.hpp"

namespace homsim {

namespace {

// Base spacing of both integration grids; breakpoints are inserted on top.
constexpr double integration_step = 0.01;

std::complex<double> trapezoid_complex(const std::vector<double>& x,
                                       const std::vector<std::complex<double>>& y) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return acc;
}

}  // namespace

CorrelationCurve emission_spectrum(const EmitterParams& p, const PulseTrain& train,
                                   const SpectrumGrid& grid, double t_max,
                                   PopulationConvention conv) {
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw std::invalid_argument("emission_spectrum: t_max must be positive");
    if (!(grid.omega_min < grid.omega_max))
        throw std::invalid_argument("emission_spectrum: omega_min must be < omega_max");
    if (grid.points < 2)
        throw std::invalid_argument("emission_spectrum: points must be >= 2");

    std::vector<double> pulse_times;
    if (train.enabled)
        for (std::int64_t k = 1; static_cast<double>(k) * train.tau < t_max; ++k)
            pulse_times.push_back(static_cast<double>(k) * train.tau);

    const int theta_steps =
        std::max(static_cast<int>(std::lround(t_max / integration_step)) + 1, 2);
    const std::vector<double> thetas =
        merged_grid(0.0, t_max, theta_steps, pulse_times);

    // Inner t integral at fixed theta; the theta transform reuses it for
    // every omega.
    std::vector<std::complex<double>> coherence_integral(thetas.size(), 0.0);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const double theta = thetas[i];
        const double hi = t_max - theta;
        if (hi <= 0.0) continue;
        const int steps =
            std::max(static_cast<int>(std::lround(hi / integration_step)) + 1, 2);
        const std::vector<double> tg = detail::time_grid(hi, steps, theta, train);
        std::vector<std::complex<double>> y(tg.size());
        for (std::size_t j = 0; j < tg.size(); ++j)
            y[j] = train.enabled ? g_pulsed_closed(tg[j], theta, p, train, conv)
                                 : g_free(tg[j], theta, p);
        coherence_integral[i] = trapezoid_complex(tg, y);
    }

    CorrelationCurve curve;
    curve.abscissa = uniform_grid(grid.omega_min, grid.omega_max, grid.points);
    curve.values.resize(curve.abscissa.size());
    std::vector<std::complex<double>> integrand(thetas.size());
    for (std::size_t k = 0; k < curve.abscissa.size(); ++k) {
        const double omega = curve.abscissa[k];
        for (std::size_t i = 0; i < thetas.size(); ++i)
            integrand[i] =
                coherence_integral[i] * std::polar(1.0, -omega * thetas[i]);
        curve.values[k] = trapezoid_complex(thetas, integrand).real();
    }

    const double peak = *std::max_element(curve.values.begin(), curve.values.end());
    if (!(peak > 0.0)) throw NumericError("emission_spectrum: normalization failed");
    for (double& v : curve.values) v = std::max(v / peak, 0.0);

    std::ostringstream os;
    os << "emission_spectrum delta=" << p.delta << " gamma=" << p.gamma;
    if (train.enabled)
        os << " tau=" << train.tau;
    else
        os << " pulses=off";
    os << " t_max=" << t_max << " convention="
       << (conv == PopulationConvention::as_published ? "as-published" : "excited");
    curve.metadata = os.str();
    return curve;
}

}  // namespace homsim
