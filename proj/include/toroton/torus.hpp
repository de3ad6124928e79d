#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "toroton/medium.hpp"
#include "toroton/radial.hpp"

namespace toroton {

// Curved cylindrical coordinates (r, theta, alpha): z = R*alpha and
// rho = R + r*cos(theta). The evaluated cross-section must keep rho > 0.
struct TorusGeometry {
    double R = 0.0;
    double C = 0.0;

    static TorusGeometry from_curvature(double c) {
        if (!(c > 0.0)) throw std::invalid_argument("TorusGeometry: curvature must be > 0");
        return {1.0 / c, c};
    }
    static TorusGeometry from_radius(double r) {
        if (!(r > 0.0)) throw std::invalid_argument("TorusGeometry: radius must be > 0");
        return {r, 1.0 / r};
    }
    double rho(double r, double theta) const;  // throws GeometryError if <= 0
};

struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CurvatureScan {
    std::vector<double> c_values;
    std::vector<double> gamma_values;
    std::optional<double> c0;
    bool stable = false;
};

struct TorusSolution {
    double r0 = 0.0;
    int m = 0;
    double lambda_adj = 0.0;  // 2*pi*r0 / m, exact
    double energy = 0.0;      // filled by torus_energy
    double freq_shift = 0.0;  // lambda_med / lambda_adj
};

// Cycle-averaged (curl E)^2 of the straight filament in cylindrical
// coordinates, x-polarized ansatz: (beta^2 E_t^2 + E_t'^2 sin^2 theta)/2.
double curl_sq_straight(const RadialProfile& profile, const WaveParams& w, double r,
                        double theta);

// Same ansatz transplanted onto the bent axis with z = R*alpha:
// ((R/rho)^2 beta^2 E_t^2 + E_t'^2 sin^2 theta)/2.
double curl_sq_curved(const RadialProfile& profile, const WaveParams& w,
                      const TorusGeometry& g, double r, double theta);

// General curl in curved cylindrical coordinates by central differences of
// the supplied component functions.
struct VecComponents {
    double r = 0.0, theta = 0.0, alpha = 0.0;
};
using TorusVectorField = std::function<VecComponents(double r, double theta, double alpha)>;

VecComponents curl_components_curved(const TorusVectorField& field, const TorusGeometry& g,
                                     double r, double theta, double alpha, double h);

// Local refractive index of the bent filament cross-section.
double index_at(const RadialProfile& profile, const MediumParams& p, const WaveParams& w,
                const TorusGeometry& g, double r, double theta);

struct PolarIndexField {
    std::vector<double> r_values;      // cell centers
    std::vector<double> theta_values;
    std::vector<double> n;             // row-major, ir * ntheta + itheta
    double value(std::size_t ir, std::size_t it) const { return n[ir * theta_values.size() + it]; }
};

PolarIndexField delta_index_field(const RadialProfile& profile, const MediumParams& p,
                                  const WaveParams& w, const TorusGeometry& g,
                                  std::size_t nr, std::size_t ntheta, double r_max);

struct GammaOptions {
    std::size_t nr = 96;
    std::size_t ntheta = 96;
    double core_level = 1e-3;      // core edge: E_t drops to this fraction of peak
    double max_core_curv = 0.8;    // cap core radius at this fraction of 1/C
};

// Wavefront-rotation ratio gamma(C) = C_ray / C where C_ray is the
// intensity-weighted eikonal ray curvature of the bent index channel.
double gamma_of_c(const RadialProfile& profile, const MediumParams& p, const WaveParams& w,
                  double curvature, const GammaOptions& opt = {});

// Scan gamma over [c_min, c_max] and bisect the first crossing of 1.
// A downward crossing (gamma > 1 below C0) is the stable case.
CurvatureScan find_fixed_point(const std::function<double(double)>& gamma_fn, double c_min,
                               double c_max, std::size_t n_scan = 64);
CurvatureScan find_fixed_point(const RadialProfile& profile, const MediumParams& p,
                               const WaveParams& w, double c_min, double c_max,
                               std::size_t n_scan = 64, const GammaOptions& opt = {});

enum class MPolicy { Nearest, AllWithin };

// Phase closure 2*pi*r0 = m * lambda_adj; freq_shift = lambda_med / lambda_adj.
std::vector<TorusSolution> quantize(double r0, const WaveParams& w, MPolicy policy,
                                    double delta = 0.0);

// U = P_crit * m * lambda_adj * n_group, n_group = sqrt(eps_lin), c = 1.
double torus_energy(double critical_power, const TorusSolution& sol, const MediumParams& p);

struct SweepCell {
    MediumParams params;
    double e0 = 0.0;
    std::optional<double> c0;
    bool stable = false;
    std::string error;  // empty on success
};

struct SweepReport {
    std::vector<SweepCell> cells;
};

// Evaluate find_fixed_point over a grid of parameter sets. Cell order is the
// input order; failures are recorded per cell. Parallel fan-out is capped by
// the TOROTON_THREADS environment variable.
SweepReport sweep_gamma(const std::vector<std::pair<MediumParams, double>>& grid,
                        const WaveParams& w, double c_min, double c_max,
                        std::size_t n_scan = 64, const GammaOptions& opt = {});

}  // namespace toroton
