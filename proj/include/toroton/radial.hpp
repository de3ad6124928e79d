#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "toroton/medium.hpp"

namespace toroton {

// Ground-mode filament profile E_t(r), found by shooting on the
// propagation constant beta.
struct RadialProfile {
    std::vector<double> r_grid;  // uniform, starts at 0
    std::vector<double> e_t;
    double beta = 0.0;
    double power = 0.0;   // integral of E_t^2 * 2*pi*r dr
    double kappa = 0.0;   // evanescent decay rate sqrt(beta^2 - k0^2 eps_lin)

    double dr() const { return r_grid.size() > 1 ? r_grid[1] - r_grid[0] : 0.0; }
    double r_max() const { return r_grid.empty() ? 0.0 : r_grid.back(); }
    // linear interpolation; throws std::domain_error outside the grid
    double value_at(double r) const;
    // centered-difference derivative of the interpolant
    double deriv_at(double r) const;
};

struct PowerCurve {
    std::vector<double> peak_amplitudes;
    std::vector<double> powers;
    double critical_power = 0.0;
};

enum class ShootOutcome {
    DivergingPositive,   // field turned up and ran away
    NegativeCrossing,    // field crossed zero (oscillating tail)
    Decayed              // reached r_max while decaying
};

struct ShootResult {
    ShootOutcome outcome;
    double terminal_value;
    double r_reached;
};

struct IntegrationBlowup : std::runtime_error {
    double radius;
    explicit IntegrationBlowup(double r)
        : std::runtime_error("radial integration blew up at r = " + std::to_string(r)),
          radius(r) {}
};

struct NoBracketingError : std::runtime_error {
    explicit NoBracketingError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SolveTolerances {
    double beta_rel = 1e-12;   // bisection width on beta, relative
    double ode_tol = 1e-12;    // integrator tolerance
};

// Integrate E'' + E'/r + (k0^2 eps(E^2) - beta^2) E = 0 outward from
// E(0) = e0, E'(0) = 0 and classify the tail.
ShootResult shoot(double e0, double beta, const MediumParams& p, const WaveParams& w,
                  double r_max, double dr);

// Bisect beta between the light lines until the decayed window is pinned,
// then graft the asymptotic tail A exp(-kappa r)/sqrt(r) where the shot
// solution loses accuracy.
RadialProfile solve_profile(double e0, const MediumParams& p, const WaveParams& w,
                            SolveTolerances tol = {});

// Trapezoidal flux integral over the stored grid.
double power_of(const RadialProfile& profile);

// Sweep peak amplitudes, collect powers, extrapolate to the trapping
// threshold. Amplitudes that fail to trap are skipped; all failing is fatal.
PowerCurve critical_power(const MediumParams& p, const WaveParams& w,
                          const std::vector<double>& amplitudes);

// Planar (slab) ground mode E'' + (k0^2 eps(E^2) - beta^2) E = 0 for the
// (1+1)D experiment harnesses. Grid covers x >= 0; the mode is even.
struct PlanarProfile {
    std::vector<double> x_grid;
    std::vector<double> e_t;
    double beta = 0.0;
    double power = 0.0;  // integral of E_t^2 dx over the full line
    double kappa = 0.0;

    double value_at(double x) const;  // even extension
};

PlanarProfile solve_profile_1d(double e0, const MediumParams& p, const WaveParams& w,
                               SolveTolerances tol = {});

}  // namespace toroton
