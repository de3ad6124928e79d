#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toroton/medium.hpp"
#include "toroton/radial.hpp"

namespace toroton {

using cplx = std::complex<double>;

// Complex transverse envelope on a uniform grid, centered coordinates
// x = (ix - nx/2) dx. ny = 1 selects (1+1)D slab propagation.
struct ScalarField {
    std::size_t nx = 0, ny = 0;
    double dx = 0.0, dy = 0.0;
    double z = 0.0;
    std::vector<cplx> amp;  // row-major, iy * nx + ix

    ScalarField() = default;
    ScalarField(std::size_t nx_, std::size_t ny_, double dx_, double dy_);

    cplx& at(std::size_t ix, std::size_t iy) { return amp[iy * nx + ix]; }
    const cplx& at(std::size_t ix, std::size_t iy) const { return amp[iy * nx + ix]; }
    double x_of(std::size_t ix) const { return (static_cast<double>(ix) - 0.5 * static_cast<double>(nx)) * dx; }
    double y_of(std::size_t iy) const { return (static_cast<double>(iy) - 0.5 * static_cast<double>(ny)) * dy; }

    // largest boundary-ring amplitude relative to the peak
    double boundary_contamination() const;
};

struct TraceRecord {
    double z;
    double power;
    double peak;
    double cx, cy;
    double width;
};

struct PropagationTrace {
    std::vector<TraceRecord> records;
};

struct BlowupError : std::runtime_error {
    double z;
    explicit BlowupError(double z_)
        : std::runtime_error("non-finite amplitude at z = " + std::to_string(z_)), z(z_) {}
};

struct UndefinedMomentsError : std::runtime_error {
    UndefinedMomentsError() : std::runtime_error("zero-power field has no moments") {}
};

// Amplitude transmission mask applied at a fixed z plane.
struct Mask {
    std::vector<cplx> transmission;  // same layout as the field it applies to
    std::size_t nx = 0, ny = 0;

    static Mask identity(std::size_t nx, std::size_t ny);
    static Mask full_absorber(std::size_t nx, std::size_t ny);
    // slit(s) along y: transmission 1 inside |x - center| < width/2
    static Mask single_slit(const ScalarField& like, double center, double width);
    static Mask double_slit(const ScalarField& like, double center1, double width1,
                            double center2, double width2);
    static Mask circular_hole(const ScalarField& like, double cx, double cy, double radius);
    static Mask two_holes(const ScalarField& like, double cx1, double cy1, double r1,
                          double cx2, double cy2, double r2);

    void apply(ScalarField& field) const;
};

// diagnostics
double power(const ScalarField& field);
std::pair<double, double> centroid(const ScalarField& field);
double width(const ScalarField& field);  // second-moment radius about the centroid
double peak_amplitude(const ScalarField& field);

// One symmetric split step: half linear spectral step, full nonlinear
// phase, half linear step. Throws BlowupError on non-finite amplitude.
void step(ScalarField& field, double dz, const MediumParams& p, const WaveParams& w);

struct PropagateOptions {
    double z_end = 0.0;
    double dz = 0.0;
    std::size_t trace_every = 1;          // record cadence in steps
    bool absorber = false;                // absorbing rim, width 8*max(dx,dy)
    std::vector<std::pair<double, Mask>> masks;  // sorted by z position
    std::function<void(const ScalarField&)> observer;  // called at trace cadence
};

// Fused split stepping with per-plane masks and trace records. Each mask is
// applied exactly once when its plane is crossed.
PropagationTrace propagate(ScalarField& field, const PropagateOptions& opt,
                           const MediumParams& p, const WaveParams& w);

enum class PerturbKind { SymmetricRing, AsymmetricTilt, Noise };

// level = 0 is the identity; Noise uses the seed, other kinds ignore it.
// For AsymmetricTilt the level is the ray tilt angle.
void perturb(ScalarField& field, PerturbKind kind, double level, const MediumParams& p,
             const WaveParams& w, std::uint64_t seed = 0);

// fixture builders
ScalarField make_gaussian(std::size_t nx, std::size_t ny, double dx, double dy,
                          double waist, double amplitude, double x0 = 0.0, double y0 = 0.0);
ScalarField embed_profile(const RadialProfile& profile, std::size_t nx, std::size_t ny,
                          double dx, double dy, double x0 = 0.0, double y0 = 0.0);
// planar profile onto a ny = 1 field, with optional carrier phase
ScalarField embed_profile_1d(const PlanarProfile& profile, std::size_t nx, double dx,
                             double x0 = 0.0, double phase = 0.0);
// coherent superposition of two planar solitons at +/- separation/2
ScalarField embed_pair_1d(const PlanarProfile& profile, std::size_t nx, double dx,
                          double separation, double relative_phase);
ScalarField embed_pair(const RadialProfile& profile, std::size_t nx, std::size_t ny,
                       double dx, double dy, double separation, double relative_phase);

}  // namespace toroton
