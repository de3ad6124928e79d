#pragma once

#include <cmath>
#include <stdexcept>

namespace toroton {

// Saturable material response. Both nonlinearities use the rational form
// x -> coeff * x / (1 + x / x_sat), which rises linearly and levels off at
// coeff * x_sat.
struct MediumParams {
    double eps_lin = 1.0;  // linear relative permittivity, >= 1
    double d_eps = 0.0;    // Kerr coefficient, >= 0
    double i_sat = 1.0;    // intensity saturation scale, > 0
    double mu1 = 0.0;      // magnetic nonlinearity coefficient, >= 0
    double u_sat = 1.0;    // curl-squared saturation scale, > 0

    void validate() const {
        if (!(eps_lin >= 1.0)) throw std::invalid_argument("medium: eps_lin must be >= 1");
        if (!(d_eps >= 0.0)) throw std::invalid_argument("medium: d_eps must be >= 0");
        if (!(i_sat > 0.0)) throw std::invalid_argument("medium: i_sat must be > 0");
        if (!(mu1 >= 0.0)) throw std::invalid_argument("medium: mu1 must be >= 0");
        if (!(u_sat > 0.0)) throw std::invalid_argument("medium: u_sat must be > 0");
    }
};

// Carrier wave bookkeeping, c = 1. lambda_med is the in-medium wavelength
// on the linear background.
struct WaveParams {
    double k0 = 1.0;
    double omega = 1.0;
    double lambda_med = 2.0 * M_PI;

    static WaveParams from_k0(double k0, const MediumParams& p) {
        if (!(k0 > 0.0)) throw std::invalid_argument("wave: k0 must be > 0");
        WaveParams w;
        w.k0 = k0;
        w.omega = k0;  // c = 1
        w.lambda_med = 2.0 * M_PI / (k0 * std::sqrt(p.eps_lin));
        return w;
    }
};

// eps(i) = eps_lin + d_eps * i / (1 + i / i_sat)
double epsilon_of_intensity(double intensity, const MediumParams& p);

// delta_mu(u) = mu1 * u / (1 + u / u_sat)
double delta_mu(double curl_sq, const MediumParams& p);

// n = sqrt(eps(i) * (1 + delta_mu(u)))
double index(double intensity, double curl_sq, const MediumParams& p);

}  // namespace toroton
