#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "toroton/medium.hpp"

using namespace toroton;

namespace {
const MediumParams kDefault{1.0, 1.0, 1.0, 0.0, 1.0};
}

TEST_CASE("epsilon_of_intensity limits and midpoint") {
    MediumParams p{1.3, 0.7, 2.5, 0.0, 1.0};
    CHECK(epsilon_of_intensity(0.0, p) == p.eps_lin);
    // saturation asymptote at i = 1e6 * i_sat
    const double asym = p.eps_lin + p.d_eps * p.i_sat;
    CHECK(epsilon_of_intensity(1e6 * p.i_sat, p) == doctest::Approx(asym).epsilon(1e-4));
    // algebraic midpoint
    CHECK(epsilon_of_intensity(p.i_sat, p) ==
          doctest::Approx(p.eps_lin + 0.5 * p.d_eps * p.i_sat).epsilon(1e-14));
}

TEST_CASE("delta_mu limits and midpoint") {
    MediumParams p{1.0, 0.0, 1.0, 0.04, 3.0};
    CHECK(delta_mu(0.0, p) == 0.0);
    CHECK(delta_mu(p.u_sat, p) == doctest::Approx(0.5 * p.mu1 * p.u_sat).epsilon(1e-14));
    CHECK(delta_mu(1e9 * p.u_sat, p) == doctest::Approx(p.mu1 * p.u_sat).epsilon(1e-4));
}

TEST_CASE("index reductions") {
    CHECK(index(0.0, 0.0, kDefault) == 1.0);
    MediumParams p{1.2, 0.5, 2.0, 0.0, 1.0};
    for (double i : {0.1, 1.0, 7.0})
        CHECK(index(i, 0.0, p) ==
              doctest::Approx(std::sqrt(epsilon_of_intensity(i, p))).epsilon(1e-14));
    MediumParams q{1.0, 0.02, 1.0, 0.02, 1.0};
    CHECK(index(1.0, 1.0, q) == doctest::Approx(1.01).epsilon(1e-14));
}

TEST_CASE("negative or non-finite arguments rejected") {
    CHECK_THROWS_AS(epsilon_of_intensity(-1e-12, kDefault), std::domain_error);
    CHECK_THROWS_AS(delta_mu(-1.0, kDefault), std::domain_error);
    CHECK_THROWS_AS(index(-1.0, 0.0, kDefault), std::domain_error);
    CHECK_THROWS_AS(index(0.0, -1.0, kDefault), std::domain_error);
    CHECK_THROWS_AS(epsilon_of_intensity(std::nan(""), kDefault), std::domain_error);
}

TEST_CASE("parameter validation") {
    MediumParams p = kDefault;
    p.eps_lin = 0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = kDefault;
    p.i_sat = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = kDefault;
    p.d_eps = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = kDefault;
    p.u_sat = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = kDefault;
    p.mu1 = -1e-9;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("monotonicity property over random pairs") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> logu(-6.0, 6.0);
    MediumParams p{1.1, 0.3, 0.7, 0.05, 2.0};
    for (int t = 0; t < 500; ++t) {
        double a = std::pow(10.0, logu(rng)), b = std::pow(10.0, logu(rng));
        if (a > b) std::swap(a, b);
        CHECK(epsilon_of_intensity(a, p) <= epsilon_of_intensity(b, p));
        CHECK(delta_mu(a, p) <= delta_mu(b, p));
    }
}

TEST_CASE("boundedness over 12 decades") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logu(-6.0, 6.0);
    MediumParams p{2.0, 1.5, 0.3, 0.2, 5.0};
    for (int t = 0; t < 500; ++t) {
        const double x = std::pow(10.0, logu(rng));
        CHECK(epsilon_of_intensity(x, p) < p.eps_lin + p.d_eps * p.i_sat);
        CHECK(epsilon_of_intensity(x, p) >= p.eps_lin);
        CHECK(delta_mu(x, p) < p.mu1 * p.u_sat);
        CHECK(delta_mu(x, p) >= 0.0);
    }
}

TEST_CASE("low-argument linear slope") {
    MediumParams p{1.0, 0.8, 3.0, 0.1, 2.0};
    const double i = 1e-6 * p.i_sat;
    const double slope = (epsilon_of_intensity(i, p) - p.eps_lin) / i;
    CHECK(slope == doctest::Approx(p.d_eps).epsilon(1e-4));
    const double u = 1e-6 * p.u_sat;
    CHECK(delta_mu(u, p) / u == doctest::Approx(p.mu1).epsilon(1e-4));
}

TEST_CASE("wave bookkeeping") {
    MediumParams p{4.0, 0.0, 1.0, 0.0, 1.0};
    const WaveParams w = WaveParams::from_k0(2.0, p);
    CHECK(w.omega == 2.0);
    CHECK(w.lambda_med == doctest::Approx(2.0 * M_PI / (2.0 * 2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(WaveParams::from_k0(0.0, p), std::invalid_argument);
    CHECK_THROWS_AS(WaveParams::from_k0(-1.0, p), std::invalid_argument);
}
