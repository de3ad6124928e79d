#include "toroton/bpm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "toroton/fft.hpp"

namespace toroton {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_grid(std::size_t nx, std::size_t ny) {
    if (!is_pow2(nx) || !is_pow2(ny))
        throw std::invalid_argument("ScalarField: nx, ny must be powers of two");
}

// Precomputed spectral propagator and edge absorber for one (grid, dz).
struct LinearStepper {
    Fft2 fft;
    std::vector<cplx> half_phase;   // exp(-i (kx^2+ky^2) dz/2 / (2 k0 n0))
    std::vector<double> rim;        // per-sample absorber factor, empty if off

    LinearStepper(const ScalarField& f, double dz, const MediumParams& p,
                  const WaveParams& w, bool absorber)
        : fft(f.nx, f.ny) {
        const double n0 = std::sqrt(p.eps_lin);
        const auto kx = fft_wavenumbers(f.nx, f.dx);
        const auto ky = f.ny > 1 ? fft_wavenumbers(f.ny, f.dy) : std::vector<double>{0.0};
        half_phase.resize(f.nx * f.ny);
        for (std::size_t iy = 0; iy < f.ny; ++iy)
            for (std::size_t ix = 0; ix < f.nx; ++ix) {
                const double k2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
                half_phase[iy * f.nx + ix] =
                    std::polar(1.0, -k2 * 0.5 * dz / (2.0 * w.k0 * n0));
            }
        if (absorber) {
            const double rim_w = 8.0 * std::max(f.dx, f.ny > 1 ? f.dy : f.dx);
            // distance measured from the periodic wrap seam so the rim is
            // exactly symmetric under the grid reflection i -> (n - i) mod n
            auto edge = [&](std::size_t i, std::size_t n, double step) {
                const double d = static_cast<double>(std::min(i, n - i)) * step;
                if (d >= rim_w) return 1.0;
                const double s = (rim_w - d) / rim_w;
                return std::exp(-3.0 * s * s);
            };
            rim.resize(f.nx * f.ny);
            for (std::size_t iy = 0; iy < f.ny; ++iy)
                for (std::size_t ix = 0; ix < f.nx; ++ix) {
                    double t = edge(ix, f.nx, f.dx);
                    if (f.ny > 1) t *= edge(iy, f.ny, f.dy);
                    rim[iy * f.nx + ix] = t;
                }
        }
    }

    void half_linear(ScalarField& f) const {
        fft.forward(f.amp.data());
        for (std::size_t i = 0; i < f.amp.size(); ++i) f.amp[i] *= half_phase[i];
        fft.inverse(f.amp.data());
    }

    void absorb(ScalarField& f) const {
        if (rim.empty()) return;
        for (std::size_t i = 0; i < f.amp.size(); ++i) f.amp[i] *= rim[i];
    }
};

void nonlinear_phase(ScalarField& f, double dz, const MediumParams& p, const WaveParams& w) {
    // paraxial index increment (eps - eps_lin)/(2 n0): with this form the
    // Helmholtz radial mode is an exact stationary mode of the split scheme
    const double n0 = std::sqrt(p.eps_lin);
    for (auto& a : f.amp) {
        const double i = std::norm(a);
        const double dn = (epsilon_of_intensity(i, p) - p.eps_lin) / (2.0 * n0);
        const double phase = w.k0 * dn * dz;
        // a nonlinear phase step beyond pi is aliased: the collapse is
        // under-resolved and the run is meaningless
        if (phase > M_PI) throw BlowupError(f.z);
        a *= std::polar(1.0, phase);
    }
}

void check_finite(const ScalarField& f) {
    for (const auto& a : f.amp)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw BlowupError(f.z);
}

}  // namespace

ScalarField::ScalarField(std::size_t nx_, std::size_t ny_, double dx_, double dy_)
    : nx(nx_), ny(ny_), dx(dx_), dy(dy_), amp(nx_ * ny_, cplx{0.0, 0.0}) {
    check_grid(nx, ny);
    if (!(dx > 0.0) || !(dy > 0.0)) throw std::invalid_argument("ScalarField: dx, dy must be > 0");
}

double ScalarField::boundary_contamination() const {
    double peak = 0.0, edge = 0.0;
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double a = std::abs(at(ix, iy));
            peak = std::max(peak, a);
            const bool on_edge = ix == 0 || ix == nx - 1 || (ny > 1 && (iy == 0 || iy == ny - 1));
            if (on_edge) edge = std::max(edge, a);
        }
    return peak > 0.0 ? edge / peak : 0.0;
}

double power(const ScalarField& field) {
    double acc = 0.0;
    for (const auto& a : field.amp) acc += std::norm(a);
    return acc * field.dx * (field.ny > 1 ? field.dy : 1.0);
}

std::pair<double, double> centroid(const ScalarField& field) {
    double p = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t iy = 0; iy < field.ny; ++iy)
        for (std::size_t ix = 0; ix < field.nx; ++ix) {
            const double i = std::norm(field.at(ix, iy));
            p += i;
            sx += i * field.x_of(ix);
            sy += i * field.y_of(iy);
        }
    if (p <= 0.0) throw UndefinedMomentsError();
    return {sx / p, field.ny > 1 ? sy / p : 0.0};
}

double width(const ScalarField& field) {
    const auto [cx, cy] = centroid(field);
    double p = 0.0, s2 = 0.0;
    for (std::size_t iy = 0; iy < field.ny; ++iy)
        for (std::size_t ix = 0; ix < field.nx; ++ix) {
            const double i = std::norm(field.at(ix, iy));
            const double rx = field.x_of(ix) - cx;
            const double ry = field.ny > 1 ? field.y_of(iy) - cy : 0.0;
            p += i;
            s2 += i * (rx * rx + ry * ry);
        }
    return std::sqrt(s2 / p);
}

double peak_amplitude(const ScalarField& field) {
    double peak = 0.0;
    for (const auto& a : field.amp) peak = std::max(peak, std::abs(a));
    return peak;
}

void step(ScalarField& field, double dz, const MediumParams& p, const WaveParams& w) {
    if (!(dz > 0.0)) throw std::invalid_argument("step: dz must be > 0");
    check_grid(field.nx, field.ny);
    LinearStepper lin(field, dz, p, w, false);
    lin.half_linear(field);
    nonlinear_phase(field, dz, p, w);
    lin.half_linear(field);
    field.z += dz;
    check_finite(field);
}

PropagationTrace propagate(ScalarField& field, const PropagateOptions& opt,
                           const MediumParams& p, const WaveParams& w) {
    if (!(opt.dz > 0.0)) throw std::invalid_argument("propagate: dz must be > 0");
    if (!(opt.z_end > field.z)) throw std::invalid_argument("propagate: z_end must exceed current z");
    for (const auto& [zm, m] : opt.masks) {
        if (zm < field.z || zm > opt.z_end)
            throw std::invalid_argument("propagate: mask plane outside [z, z_end]");
        if (m.nx != field.nx || m.ny != field.ny)
            throw std::invalid_argument("propagate: mask grid mismatch");
    }
    auto masks = opt.masks;
    std::stable_sort(masks.begin(), masks.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    const auto n_steps =
        static_cast<std::size_t>(std::ceil((opt.z_end - field.z) / opt.dz - 1e-12));
    const double dz = (opt.z_end - field.z) / static_cast<double>(n_steps);
    LinearStepper lin(field, dz, p, w, opt.absorber);

    PropagationTrace trace;
    auto record = [&]() {
        const double pw = power(field);
        if (pw > 0.0) {
            const auto [cx, cy] = centroid(field);
            trace.records.push_back(
                {field.z, pw, peak_amplitude(field), cx, cy, width(field)});
        } else {
            // fully occluded field has no moments; record zeros
            trace.records.push_back({field.z, 0.0, 0.0, 0.0, 0.0, 0.0});
        }
        if (opt.observer) opt.observer(field);
    };

    std::size_t next_mask = 0;
    auto apply_due_masks = [&]() {
        while (next_mask < masks.size() && masks[next_mask].first <= field.z + 1e-12 * dz) {
            masks[next_mask].second.apply(field);
            ++next_mask;
        }
    };

    apply_due_masks();
    record();
    for (std::size_t s = 0; s < n_steps; ++s) {
        lin.half_linear(field);
        nonlinear_phase(field, dz, p, w);
        lin.half_linear(field);
        lin.absorb(field);
        field.z += dz;
        check_finite(field);
        apply_due_masks();
        const bool last = s + 1 == n_steps;
        if (last || (s + 1) % opt.trace_every == 0) record();
    }
    return trace;
}

void perturb(ScalarField& field, PerturbKind kind, double level, const MediumParams& p,
             const WaveParams& w, std::uint64_t seed) {
    if (level == 0.0) return;
    switch (kind) {
        case PerturbKind::SymmetricRing: {
            const auto [cx, cy] = centroid(field);
            const double w0 = width(field);
            const double r0 = 1.5 * w0, wr = 0.5 * w0;
            for (std::size_t iy = 0; iy < field.ny; ++iy)
                for (std::size_t ix = 0; ix < field.nx; ++ix) {
                    const double rx = field.x_of(ix) - cx;
                    const double ry = field.ny > 1 ? field.y_of(iy) - cy : 0.0;
                    const double r = std::hypot(rx, ry);
                    const double g = std::exp(-(r - r0) * (r - r0) / (wr * wr));
                    field.at(ix, iy) *= 1.0 + level * g;
                }
            break;
        }
        case PerturbKind::AsymmetricTilt: {
            // phase tilt; in paraxial rays the centroid then drifts at
            // dx/dz = level
            const double kx = level * w.k0 * std::sqrt(p.eps_lin);
            for (std::size_t iy = 0; iy < field.ny; ++iy)
                for (std::size_t ix = 0; ix < field.nx; ++ix)
                    field.at(ix, iy) *= std::polar(1.0, kx * field.x_of(ix));
            break;
        }
        case PerturbKind::Noise: {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            for (auto& a : field.amp) a *= 1.0 + level * u(rng);
            break;
        }
    }
}

Mask Mask::identity(std::size_t nx, std::size_t ny) {
    Mask m;
    m.nx = nx;
    m.ny = ny;
    m.transmission.assign(nx * ny, cplx{1.0, 0.0});
    return m;
}

Mask Mask::full_absorber(std::size_t nx, std::size_t ny) {
    Mask m = identity(nx, ny);
    std::fill(m.transmission.begin(), m.transmission.end(), cplx{0.0, 0.0});
    return m;
}

Mask Mask::single_slit(const ScalarField& like, double center, double width_) {
    Mask m = full_absorber(like.nx, like.ny);
    for (std::size_t iy = 0; iy < like.ny; ++iy)
        for (std::size_t ix = 0; ix < like.nx; ++ix)
            if (std::fabs(like.x_of(ix) - center) < 0.5 * width_)
                m.transmission[iy * like.nx + ix] = 1.0;
    return m;
}

Mask Mask::double_slit(const ScalarField& like, double center1, double width1,
                       double center2, double width2) {
    Mask m = full_absorber(like.nx, like.ny);
    for (std::size_t iy = 0; iy < like.ny; ++iy)
        for (std::size_t ix = 0; ix < like.nx; ++ix) {
            const double x = like.x_of(ix);
            if (std::fabs(x - center1) < 0.5 * width1 || std::fabs(x - center2) < 0.5 * width2)
                m.transmission[iy * like.nx + ix] = 1.0;
        }
    return m;
}

Mask Mask::circular_hole(const ScalarField& like, double cx, double cy, double radius) {
    Mask m = full_absorber(like.nx, like.ny);
    for (std::size_t iy = 0; iy < like.ny; ++iy)
        for (std::size_t ix = 0; ix < like.nx; ++ix)
            if (std::hypot(like.x_of(ix) - cx, like.y_of(iy) - cy) < radius)
                m.transmission[iy * like.nx + ix] = 1.0;
    return m;
}

Mask Mask::two_holes(const ScalarField& like, double cx1, double cy1, double r1,
                     double cx2, double cy2, double r2) {
    Mask m = full_absorber(like.nx, like.ny);
    for (std::size_t iy = 0; iy < like.ny; ++iy)
        for (std::size_t ix = 0; ix < like.nx; ++ix) {
            const double x = like.x_of(ix), y = like.y_of(iy);
            if (std::hypot(x - cx1, y - cy1) < r1 || std::hypot(x - cx2, y - cy2) < r2)
                m.transmission[iy * like.nx + ix] = 1.0;
        }
    return m;
}

void Mask::apply(ScalarField& field) const {
    if (nx != field.nx || ny != field.ny)
        throw std::invalid_argument("Mask::apply: grid mismatch");
    for (std::size_t i = 0; i < field.amp.size(); ++i) field.amp[i] *= transmission[i];
}

ScalarField make_gaussian(std::size_t nx, std::size_t ny, double dx, double dy,
                          double waist, double amplitude, double x0, double y0) {
    ScalarField f(nx, ny, dx, dy);
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double rx = f.x_of(ix) - x0;
            const double ry = ny > 1 ? f.y_of(iy) - y0 : 0.0;
            f.at(ix, iy) = amplitude * std::exp(-(rx * rx + ry * ry) / (waist * waist));
        }
    return f;
}

ScalarField embed_profile(const RadialProfile& profile, std::size_t nx, std::size_t ny,
                          double dx, double dy, double x0, double y0) {
    ScalarField f(nx, ny, dx, dy);
    const double r_max = profile.r_max();
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double r = std::hypot(f.x_of(ix) - x0, f.y_of(iy) - y0);
            f.at(ix, iy) = r <= r_max ? profile.value_at(r) : 0.0;
        }
    return f;
}

ScalarField embed_profile_1d(const PlanarProfile& profile, std::size_t nx, double dx,
                             double x0, double phase) {
    ScalarField f(nx, 1, dx, 1.0);
    for (std::size_t ix = 0; ix < nx; ++ix)
        f.at(ix, 0) = std::polar(profile.value_at(f.x_of(ix) - x0), phase);
    return f;
}

ScalarField embed_pair_1d(const PlanarProfile& profile, std::size_t nx, double dx,
                          double separation, double relative_phase) {
    ScalarField f(nx, 1, dx, 1.0);
    const cplx ph = std::polar(1.0, relative_phase);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const double x = f.x_of(ix);
        f.at(ix, 0) = profile.value_at(x + 0.5 * separation) +
                      ph * profile.value_at(x - 0.5 * separation);
    }
    return f;
}

ScalarField embed_pair(const RadialProfile& profile, std::size_t nx, std::size_t ny,
                       double dx, double dy, double separation, double relative_phase) {
    ScalarField f(nx, ny, dx, dy);
    const double r_max = profile.r_max();
    const cplx ph = std::polar(1.0, relative_phase);
    auto val = [&](double r) { return r <= r_max ? profile.value_at(r) : 0.0; };
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double x = f.x_of(ix), y = ny > 1 ? f.y_of(iy) : 0.0;
            f.at(ix, iy) = val(std::hypot(x + 0.5 * separation, y)) +
                           ph * val(std::hypot(x - 0.5 * separation, y));
        }
    return f;
}

}  // namespace toroton
