#include "toroton/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace toroton {

std::mutex Fft2::plan_mutex_;

Fft2::Fft2(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny) {
    if (nx == 0 || ny == 0) throw std::invalid_argument("Fft2: empty grid");
    std::lock_guard<std::mutex> lock(plan_mutex_);
    // plan on scratch so FFTW_MEASURE never touches caller data; ESTIMATE
    // keeps plans deterministic
    std::vector<std::complex<double>> scratch(nx * ny);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fwd_ = fftw_plan_dft_2d(static_cast<int>(ny), static_cast<int>(nx), ptr, ptr,
                            FFTW_FORWARD, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_2d(static_cast<int>(ny), static_cast<int>(nx), ptr, ptr,
                            FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !inv_) throw std::runtime_error("Fft2: plan creation failed");
}

Fft2::~Fft2() {
    std::lock_guard<std::mutex> lock(plan_mutex_);
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
}

void Fft2::forward(std::complex<double>* data) const {
    auto* ptr = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(fwd_, ptr, ptr);
}

void Fft2::inverse(std::complex<double>* data) const {
    auto* ptr = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(inv_, ptr, ptr);
    const double scale = 1.0 / static_cast<double>(nx_ * ny_);
    const std::size_t n = nx_ * ny_;
    for (std::size_t i = 0; i < n; ++i) data[i] *= scale;
}

std::vector<double> fft_wavenumbers(std::size_t n, double d) {
    std::vector<double> k(n);
    const double dk = 2.0 * M_PI / (static_cast<double>(n) * d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto s = static_cast<long long>(i);
        const auto half = static_cast<long long>(n / 2);
        k[i] = dk * static_cast<double>(s <= half ? s : s - static_cast<long long>(n));
    }
    return k;
}

}  // namespace toroton
