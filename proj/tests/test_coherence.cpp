#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "bloch_rk4.hpp"
#include "homsim/coherence.hpp"
#include "testutil.hpp"

using namespace homsim;
using namespace homsim::testing;

namespace {

// QRT evaluated with the RK4 oracle instead of the exact propagator.
std::complex<double> g_qrt_rk4(double t, double theta, const EmitterParams& p,
                               const PulseTrain& train) {
    const TwoLevelOperator rho =
        rk4_propagate(TwoLevelOperator::excited(), 0.0, t, p, train);
    TwoLevelOperator aux;
    aux.eg = rho.ee;
    aux.gg = rho.ge;
    return rk4_propagate(aux, t, t + theta, p, train).eg;
}

}  // namespace

TEST_CASE("g_free") {
    const EmitterParams p{3.0, 2.0};

    SUBCASE("unity at the origin") {
        CHECK(g_free(0.0, 0.0, p) == std::complex<double>(1.0));
    }

    SUBCASE("population decay at theta = 0") {
        CHECK(std::abs(g_free(1.0, 0.0, p).real() - 0.1353352832366127) < 1e-14);
    }

    SUBCASE("phase rotation along theta") {
        const std::complex<double> expected(0.04290428159373744, 0.6050112922850016);
        CHECK(std::abs(g_free(0.0, 0.5, p) - expected) < 1e-14);
    }

    SUBCASE("QRT route reproduces the magnitude, conjugate phase") {
        for (const double t : {0.0, 0.3, 1.0, 2.3}) {
            for (const double theta : {0.0, 0.17, 0.5, 1.1}) {
                const std::complex<double> closed = g_free(t, theta, p);
                const std::complex<double> qrt =
                    g_qrt_numeric(t, theta, p, PulseTrain{0.2, false});
                CHECK(std::abs(std::abs(qrt) - std::abs(closed)) < 1e-10);
                CHECK(std::abs(qrt - std::conj(closed)) < 1e-12);
            }
        }
    }

    SUBCASE("rejects negative times") {
        CHECK_THROWS_AS(g_free(-0.1, 0.0, p), std::invalid_argument);
        CHECK_THROWS_AS(g_free(0.0, -0.1, p), std::invalid_argument);
    }
}

TEST_CASE("f_pulsed") {
    const EmitterParams p{3.0, 2.0};
    const PulseTrain train{0.2, true};

    SUBCASE("theta = 0 gives unity") {
        CHECK(f_pulsed(0.13, 0.0, p, train) == std::complex<double>(1.0));
    }

    SUBCASE("odd separation kills the coherence exactly") {
        CHECK(f_pulsed(0.05, 0.2, p, train) == std::complex<double>(0.0));
        std::mt19937 rng(7101);
        for (int n = 0; n < 200; ++n) {
            const double tau = uniform(rng, 0.1, 0.5);
            const PulseTrain tr{tau, true};
            const double t = uniform(rng, 0.0, 3.0);
            const double theta = uniform(rng, 0.0, 3.0);
            if (pair_position(t, theta, tau).separation % 2 != 0)
                CHECK(f_pulsed(t, theta, p, tr) == std::complex<double>(0.0));
        }
    }

    SUBCASE("even separation: damped phase with the interval count removed") {
        const std::complex<double> f = f_pulsed(0.05, 0.4, p, train);
        CHECK(std::abs(f - std::complex<double>(0.6703200460356393, 0.0)) < 1e-14);
    }

    SUBCASE("same-interval case equals the even formula at m = 0") {
        const double t = 0.03, theta = 0.1;  // both inside the first interval
        REQUIRE(pair_position(t, theta, train.tau).separation == 0);
        const std::complex<double> same =
            std::polar(std::exp(-0.5 * p.gamma * theta), p.delta * theta);
        CHECK(std::abs(f_pulsed(t, theta, p, train) - same) < 1e-15);
    }

    SUBCASE("magnitude bound e^{-gamma theta/2}") {
        std::mt19937 rng(7102);
        for (int n = 0; n < 300; ++n) {
            const PulseTrain tr{uniform(rng, 0.1, 0.5), true};
            const double t = uniform(rng, 0.0, 3.0);
            const double theta = uniform(rng, 0.0, 3.0);
            CHECK(std::abs(f_pulsed(t, theta, p, tr)) <=
                  std::exp(-0.5 * p.gamma * theta) * (1.0 + 1e-12));
        }
    }

    SUBCASE("continuous inside a parity window, jumps only at crossings") {
        // t fixed mid-interval; theta scans the interior of one even window
        const double t = 0.05;
        const double h = 1e-4;
        const double lip = std::abs(p.delta) + 0.5 * p.gamma + 1.0;
        for (double theta = 0.355; theta < 0.548; theta += h) {
            const std::complex<double> a = f_pulsed(t, theta, p, train);
            const std::complex<double> b = f_pulsed(t, theta + h, p, train);
            CHECK(std::abs(a - b) <= lip * h);
        }
        // crossing t + theta = 3 tau flips parity: finite jump allowed
        const std::complex<double> before = f_pulsed(t, 0.5499, p, train);
        const std::complex<double> after = f_pulsed(t, 0.5501, p, train);
        CHECK(std::abs(before) > 0.5);
        CHECK(std::abs(after) == 0.0);
    }

    SUBCASE("requires the train") {
        CHECK_THROWS_AS(f_pulsed(0.0, 0.1, p, PulseTrain{0.2, false}),
                        std::invalid_argument);
    }
}

TEST_CASE("g_pulsed_closed") {
    const EmitterParams p{3.0, 2.0};
    const PulseTrain train{0.2, true};

    SUBCASE("initial point: empty ground state vs occupied excited state") {
        CHECK(g_pulsed_closed(0.0, 0.0, p, train,
                              PopulationConvention::as_published) ==
              std::complex<double>(0.0));
        CHECK(g_pulsed_closed(0.0, 0.0, p, train, PopulationConvention::excited) ==
              std::complex<double>(1.0));
    }

    SUBCASE("t = 2 anchor against the propagated population") {
        const TwoLevelOperator rho =
            propagate(TwoLevelOperator::excited(), 0.0, 2.0, p, train);
        const std::complex<double> exc =
            g_pulsed_closed(2.0, 0.0, p, train, PopulationConvention::excited);
        const std::complex<double> pub =
            g_pulsed_closed(2.0, 0.0, p, train, PopulationConvention::as_published);
        CHECK(std::abs(exc - rho.ee) < 1e-12);
        CHECK(std::abs(pub - rho.gg) < 1e-12);
        // well inside the stationary band around the steady intra-interval value
        CHECK(std::abs(exc.real() - 0.598687660112452) < 0.01);
        CHECK(std::abs(pub.real() - (1.0 - 0.598687660112452)) < 0.01);
    }

    SUBCASE("parity zeros survive the population weight") {
        std::mt19937 rng(7103);
        for (int n = 0; n < 100; ++n) {
            const double t = uniform(rng, 0.0, 3.0);
            const double theta = uniform(rng, 0.0, 3.0);
            if (pair_position(t, theta, train.tau).separation % 2 != 0) {
                CHECK(g_pulsed_closed(t, theta, p, train,
                                      PopulationConvention::as_published) ==
                      std::complex<double>(0.0));
            }
        }
    }
}

TEST_CASE("g_qrt_numeric") {
    const EmitterParams p{3.0, 2.0};

    SUBCASE("theta = 0 returns the excited population (free case)") {
        const PulseTrain off{0.2, false};
        for (const double t : {0.0, 0.4, 1.7}) {
            CHECK(std::abs(g_qrt_numeric(t, 0.0, p, off) -
                           std::exp(-p.gamma * t)) < 1e-13);
        }
    }

    SUBCASE("odd separation vanishes to the last bit") {
        const PulseTrain train{0.2, true};
        CHECK(g_qrt_numeric(0.05, 0.2, p, train) == std::complex<double>(0.0));
        CHECK(g_qrt_numeric(0.3, 0.55, p, train) == std::complex<double>(0.0));
    }

    SUBCASE("bounded by one") {
        std::mt19937 rng(7104);
        for (int n = 0; n < 200; ++n) {
            const PulseTrain tr{uniform(rng, 0.1, 0.5), n % 2 == 0};
            const EmitterParams q{uniform(rng, -4.0, 4.0), uniform(rng, 0.5, 3.0)};
            const double t = uniform(rng, 0.0, 3.0);
            const double theta = uniform(rng, 0.0, 3.0);
            CHECK(std::abs(g_qrt_numeric(t, theta, q, tr)) <= 1.0 + 1e-12);
        }
    }

    SUBCASE("pulsed closed form, excited convention: equal magnitudes") {
        for (const double tau : {0.2, 0.3}) {
            const PulseTrain train{tau, true};
            for (const double delta : {-4.0, -2.0, 2.0, 3.0}) {
                const EmitterParams q{delta, 2.0};
                for (double t = 0.0; t <= 3.0; t += 0.231) {
                    for (double theta = 0.0; theta <= 2.0; theta += 0.17) {
                        const std::complex<double> qrt = g_qrt_numeric(t, theta, q, train);
                        const std::complex<double> closed = g_pulsed_closed(
                            t, theta, q, train, PopulationConvention::excited);
                        CHECK(std::abs(std::abs(qrt) - std::abs(closed)) < 1e-10);
                        CHECK(std::abs(qrt - std::conj(closed)) < 1e-10);
                    }
                }
            }
        }
    }

    SUBCASE("agrees with a fully independent RK4 regression run") {
        const PulseTrain train{0.2, true};
        for (const double t : {0.05, 1.0, 2.13}) {
            for (const double theta : {0.0, 0.1, 0.63, 1.2}) {
                const std::complex<double> a = g_qrt_numeric(t, theta, p, train);
                const std::complex<double> b = g_qrt_rk4(t, theta, p, train);
                CHECK(std::abs(a - b) < 1e-10);
            }
        }
    }
}
