#include "toroton/medium.hpp"

namespace toroton {

double epsilon_of_intensity(double intensity, const MediumParams& p) {
    if (intensity < 0.0 || !std::isfinite(intensity))
        throw std::domain_error("epsilon_of_intensity: intensity must be >= 0 and finite");
    return p.eps_lin + p.d_eps * intensity / (1.0 + intensity / p.i_sat);
}

double delta_mu(double curl_sq, const MediumParams& p) {
    if (curl_sq < 0.0 || !std::isfinite(curl_sq))
        throw std::domain_error("delta_mu: curl-squared must be >= 0 and finite");
    return p.mu1 * curl_sq / (1.0 + curl_sq / p.u_sat);
}

double index(double intensity, double curl_sq, const MediumParams& p) {
    return std::sqrt(epsilon_of_intensity(intensity, p) * (1.0 + delta_mu(curl_sq, p)));
}

}  // namespace toroton
