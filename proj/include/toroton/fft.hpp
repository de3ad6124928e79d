#pragma once

#include <complex>
#include <cstddef>
#include <fftw3.h>
#include <mutex>
#include <vector>

namespace toroton {

// RAII plan pair for in-place 2D c2c transforms (ny may be 1). FFTW planning
// is not thread-safe; plan creation is serialized, execution is not.
class Fft2 {
public:
    Fft2(std::size_t nx, std::size_t ny);
    ~Fft2();
    Fft2(const Fft2&) = delete;
    Fft2& operator=(const Fft2&) = delete;

    // data is row-major (iy * nx + ix), length nx*ny
    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;  // normalized by 1/(nx*ny)

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }

private:
    std::size_t nx_, ny_;
    fftw_plan fwd_, inv_;
    static std::mutex plan_mutex_;
};

// FFT angular frequencies 2*pi*{0, 1, ..., n/2, -(n/2-1), ..., -1}/(n*d)
std::vector<double> fft_wavenumbers(std::size_t n, double d);

}  // namespace toroton
