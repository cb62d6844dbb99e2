#include "homsim/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace homsim {

std::vector<double> uniform_grid(double lo, double hi, int points) {
    if (points < 2) throw std::invalid_argument("uniform_grid: points must be >= 2");
    if (!(hi > lo)) throw std::invalid_argument("uniform_grid: hi must exceed lo");
    std::vector<double> g(static_cast<std::size_t>(points));
    const double span = hi - lo;
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = lo + span * (static_cast<double>(i) /
                                                      static_cast<double>(points - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> merged_grid(double lo, double hi, int points,
                                const std::vector<double>& extra) {
    std::vector<double> g = uniform_grid(lo, hi, points);
    for (double b : extra)
        if (b > lo && b < hi) g.push_back(b);
    std::sort(g.begin(), g.end());
    std::vector<double> out;
    out.reserve(g.size());
    out.push_back(g.front());
    for (std::size_t i = 1; i < g.size(); ++i)
        if (g[i] - out.back() > 1e-12) out.push_back(g[i]);
    return out;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("trapezoid: need two grids of equal size >= 2");
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return acc;
}

}  // namespace homsim
