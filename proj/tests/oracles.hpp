#pragma once

// Independent numerical oracles used by the test suites. These deliberately
// avoid the library's shooting/BPM code paths.

#include <complex>
#include <vector>

#include "toroton/medium.hpp"
#include "toroton/torus.hpp"

namespace oracles {

// Ground state of Laplacian(psi) + k0^2 eps(psi^2) psi = beta^2 psi on a
// 2D grid by semi-implicit imaginary-time relaxation with peak-amplitude
// normalization.
struct RelaxResult {
    double beta = 0.0;
    double power = 0.0;          // integral of psi^2 dx dy
    double residual = 0.0;       // final L2 residual, scaled
    std::size_t n = 0;
    double dx = 0.0;
    std::vector<double> psi;     // row-major n x n, real
    // psi along the +x axis from the grid center
    std::vector<double> radial_cut() const;
};

RelaxResult relax_ground_state(double e0, const toroton::MediumParams& p,
                               const toroton::WaveParams& w, std::size_t n, double halfspan,
                               std::size_t max_iter = 20000, double tol = 1e-11);

// Curl of the embedded Cartesian field by central differences, projected
// back onto the curved cylindrical basis. Validates the analytic curl
// component formulas.
toroton::VecComponents cartesian_curl(const toroton::TorusVectorField& field, double R,
                                      double r, double theta, double alpha, double h);

// Cycle-averaged (curl E)^2 of the x-polarized filament by 3D finite
// differences of the real field E_t(r) cos(beta z - omega t), averaged over
// carrier phases.
double curl_sq_straight_fd(const toroton::RadialProfile& profile, double r, double theta,
                           double h, std::size_t n_phases = 16);

// Linear Fresnel intensity of two coherent slit sources at distance z;
// returns the transverse gradient of the pattern at position x. Complex
// source amplitudes model phase plates over an aperture.
double two_slit_fringe_gradient(const std::vector<double>& src_x,
                                const std::vector<std::complex<double>>& src_amp, double k,
                                double z, double x, double probe_h);

}  // namespace oracles
