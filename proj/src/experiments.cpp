#include "toroton/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace toroton {

namespace {

// rms radius of the axisymmetric profile
double profile_rms_width(const RadialProfile& prof) {
    double p = 0.0, s = 0.0;
    for (std::size_t i = 1; i < prof.r_grid.size(); ++i) {
        const double r0 = prof.r_grid[i - 1], r1 = prof.r_grid[i];
        const double f0 = prof.e_t[i - 1] * prof.e_t[i - 1] * r0;
        const double f1 = prof.e_t[i] * prof.e_t[i] * r1;
        p += 0.5 * (f0 + f1) * (r1 - r0);
        s += 0.5 * (f0 * r0 * r0 + f1 * r1 * r1) * (r1 - r0);
    }
    return std::sqrt(s / p);
}

double core_radius_efold(const std::vector<double>& grid, const std::vector<double>& e) {
    const double target = e.front() / M_E;
    for (std::size_t i = 1; i < e.size(); ++i)
        if (e[i] < target) return grid[i];
    return grid.back();
}

double power_within(const ScalarField& f, double cx, double cy, double radius) {
    double acc = 0.0;
    for (std::size_t iy = 0; iy < f.ny; ++iy)
        for (std::size_t ix = 0; ix < f.nx; ++ix) {
            const double rx = f.x_of(ix) - cx;
            const double ry = f.ny > 1 ? f.y_of(iy) - cy : 0.0;
            if (rx * rx + ry * ry <= radius * radius) acc += std::norm(f.at(ix, iy));
        }
    return acc * f.dx * (f.ny > 1 ? f.dy : 1.0);
}

bool monotone_drift(const std::vector<double>& x, double jitter) {
    if (x.size() < 3) return false;
    const double total = x.back() - x.front();
    if (total == 0.0) return false;
    const double dir = total > 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (dir * (x[i] - x[i - 1]) < -jitter) return false;
    return true;
}

// centroid of the y-collapsed |A|^2 within a window centered on the launch
// axis; the symmetric index window keeps the measure exactly
// mirror-equivariant (a coordinate test is one-ulp asymmetric when the
// window is not an exact multiple of dx)
double windowed_centroid_row(const ScalarField& f, double x_center, double half_window) {
    std::vector<double> ix_int(f.nx, 0.0);
    for (std::size_t iy = 0; iy < f.ny; ++iy)
        for (std::size_t ix = 0; ix < f.nx; ++ix) ix_int[ix] += std::norm(f.at(ix, iy));
    std::ptrdiff_t ic = 0;
    double best = std::fabs(f.x_of(0) - x_center);
    for (std::size_t ix = 1; ix < f.nx; ++ix) {
        const double d = std::fabs(f.x_of(ix) - x_center);
        if (d < best) {
            best = d;
            ic = static_cast<std::ptrdiff_t>(ix);
        }
    }
    const std::ptrdiff_t hw = static_cast<std::ptrdiff_t>(std::lround(half_window / f.dx));
    double p = 0.0, s = 0.0;
    for (std::ptrdiff_t di = -hw; di <= hw; ++di) {
        const std::ptrdiff_t ix = ic + di;
        if (ix < 0 || ix >= static_cast<std::ptrdiff_t>(f.nx)) continue;
        p += ix_int[static_cast<std::size_t>(ix)];
        s += ix_int[static_cast<std::size_t>(ix)] * f.x_of(static_cast<std::size_t>(ix));
    }
    return p > 0.0 ? s / p : x_center;
}

}  // namespace

StabilityReport run_stability(PerturbKind kind, double level, const MediumParams& p,
                              const WaveParams& w, const StabilityConfig& cfg) {
    const RadialProfile prof = solve_profile(cfg.e0, p, w);
    const double w_rms = profile_rms_width(prof);
    const double n0 = std::sqrt(p.eps_lin);
    const double l_diff = w.k0 * n0 * w_rms * w_rms;

    double dx = cfg.dx;
    if (dx <= 0.0) {
        const double span = std::max(14.0 * w_rms, 18.0 / prof.kappa);
        dx = span / static_cast<double>(cfg.nx);
    }
    ScalarField field = embed_profile(prof, cfg.nx, cfg.ny, dx, dx);
    perturb(field, kind, level, p, w, cfg.seed);

    const double power_in = power(field);
    PropagateOptions opt;
    opt.z_end = cfg.diffraction_lengths * l_diff;
    opt.dz = std::min(l_diff / cfg.steps_per_length, w.lambda_med / 10.0);
    opt.trace_every = std::max<std::size_t>(
        1, static_cast<std::size_t>(cfg.steps_per_length / 10.0));
    opt.absorber = true;

    StabilityReport rep;
    rep.trace = propagate(field, opt, p, w);

    const auto& rec = rep.trace.records;
    const double w0 = rec.front().width;
    std::vector<double> cx;
    double max_wdrift = 0.0;
    for (const auto& r : rec) {
        cx.push_back(r.cx);
        max_wdrift = std::max(max_wdrift, std::fabs(r.width - w0) / w0);
    }
    rep.centroid_drift = std::hypot(rec.back().cx - rec.front().cx,
                                    rec.back().cy - rec.front().cy);
    rep.width_drift = max_wdrift;
    rep.drift_monotone = monotone_drift(cx, 0.1 * dx);
    rep.core_power_fraction =
        power_within(field, rec.back().cx, rec.back().cy, 3.0 * w_rms) / power_in;

    if (kind == PerturbKind::AsymmetricTilt && level != 0.0) {
        rep.verdict = (rep.drift_monotone && rep.core_power_fraction > 0.9)
                          ? "curved-intact"
                          : "disrupted";
    } else {
        rep.verdict =
            (rep.centroid_drift < dx && rep.width_drift < 0.05) ? "stable" : "disrupted";
    }
    return rep;
}

PairReport run_pair(double separation, double relative_phase, const MediumParams& p,
                    const WaveParams& w, const PairConfig& cfg) {
    const RadialProfile prof = solve_profile(cfg.e0, p, w);
    const double r_core = core_radius_efold(prof.r_grid, prof.e_t);
    if (separation <= 0.0) separation = cfg.separation_cores * r_core;
    const double w_rms = profile_rms_width(prof);
    const double n0 = std::sqrt(p.eps_lin);
    const double l_diff = w.k0 * n0 * w_rms * w_rms;

    double dx = cfg.dx;
    if (dx <= 0.0) {
        const double span = std::max(10.0 * (separation + 4.0 * w_rms), 16.0 / prof.kappa);
        dx = span / static_cast<double>(cfg.nx);
    }
    ScalarField field = embed_pair(prof, cfg.nx, cfg.ny, dx, dx, separation, relative_phase);

    PairReport rep;
    PropagateOptions opt;
    opt.z_end = cfg.diffraction_lengths * l_diff;
    opt.dz = std::min(l_diff / cfg.steps_per_length, w.lambda_med / 10.0);
    opt.trace_every = std::max<std::size_t>(
        1, static_cast<std::size_t>(cfg.steps_per_length / 20.0));
    opt.absorber = true;
    opt.observer = [&](const ScalarField& f) {
        double pr = 0.0, sr = 0.0, pall = 0.0, sall = 0.0;
        for (std::size_t iy = 0; iy < f.ny; ++iy)
            for (std::size_t ix = 0; ix < f.nx; ++ix) {
                const double x = f.x_of(ix);
                const double i = std::norm(f.at(ix, iy));
                pall += i;
                sall += i * x;
                if (x > 0.0) {
                    pr += i;
                    sr += i * x;
                }
            }
        rep.z.push_back(f.z);
        rep.separation.push_back(pr > 0.0 ? 2.0 * sr / pr : 0.0);
        const double com = pall > 0.0 ? sall / pall : 0.0;
        rep.com_drift = std::max(rep.com_drift, std::fabs(com));
    };
    propagate(field, opt, p, w);

    // truncate at merge
    for (std::size_t i = 0; i < rep.separation.size(); ++i) {
        if (rep.separation[i] < 2.0 * dx) {
            rep.merged = true;
            rep.z.resize(i + 1);
            rep.separation.resize(i + 1);
            break;
        }
    }
    const double d0 = rep.separation.front();
    const double d1 = rep.separation.back();
    const double thresh = std::max(2.0 * dx, 0.01 * d0);
    if (rep.merged || d1 < d0 - thresh)
        rep.verdict = "attract";
    else if (d1 > d0 + thresh)
        rep.verdict = "repel";
    else
        rep.verdict = "neutral";
    return rep;
}

DeflectionReport run_young(const MediumParams& p, const WaveParams& w,
                           const YoungConfig& cfg) {
    const PlanarProfile prof = solve_profile_1d(cfg.e0, p, w);
    const double r_core = core_radius_efold(prof.x_grid, prof.e_t);
    const double slit_w = cfg.slit_width_cores * r_core;
    const double offset1 = cfg.hole1_offset_cores * r_core;
    const double offset = cfg.hole_offset_cores * r_core;
    const double n0 = std::sqrt(p.eps_lin);
    const double l_slit = w.k0 * n0 * slit_w * slit_w;

    double dx = cfg.dx;
    if (dx <= 0.0) dx = r_core / 8.0;
    if (std::max(std::fabs(offset), std::fabs(offset1)) + slit_w >
        0.25 * static_cast<double>(cfg.nx) * dx)
        throw std::invalid_argument("run_young: hole outside the guard band");

    auto build = [&](bool two_holes) {
        ScalarField f = cfg.twod
                            ? embed_profile(solve_profile(cfg.e0, p, w), cfg.nx, cfg.ny2d,
                                            dx, dx)
                            : embed_profile_1d(prof, cfg.nx, dx);
        Mask m = cfg.twod
                     ? (two_holes ? Mask::two_holes(f, offset1, 0.0, 0.5 * slit_w, offset,
                                                    0.0, 0.5 * slit_w)
                                  : Mask::circular_hole(f, offset1, 0.0, 0.5 * slit_w))
                     : (two_holes ? Mask::double_slit(f, offset1, slit_w, offset, slit_w)
                                  : Mask::single_slit(f, offset1, slit_w));
        m.apply(f);
        if (two_holes) {
            auto in_hole2 = [&](std::size_t ix, std::size_t iy) {
                const double rx = f.x_of(ix) - offset;
                const double ry = cfg.twod ? f.y_of(iy) : 0.0;
                return rx * rx + ry * ry < 0.25 * slit_w * slit_w;
            };
            if (cfg.randomize_second_hole) {
                // incoherent variant: per-sample random phases replace the plate
                std::mt19937_64 rng(cfg.seed);
                std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
                for (std::size_t iy = 0; iy < f.ny; ++iy)
                    for (std::size_t ix = 0; ix < f.nx; ++ix)
                        if (in_hole2(ix, iy)) f.at(ix, iy) *= std::polar(1.0, u(rng));
            } else if (cfg.hole2_phase != 0.0) {
                for (std::size_t iy = 0; iy < f.ny; ++iy)
                    for (std::size_t ix = 0; ix < f.nx; ++ix)
                        if (in_hole2(ix, iy)) f.at(ix, iy) *= std::polar(1.0, cfg.hole2_phase);
            }
        }
        return f;
    };

    DeflectionReport rep;
    const double half_window = 3.0 * r_core;
    auto run = [&](ScalarField& f, std::vector<double>* xs, bool record_z) {
        PropagateOptions opt;
        opt.z_end = cfg.diffraction_lengths * l_slit;
        opt.dz = std::min(l_slit / cfg.steps_per_length, w.lambda_med / 10.0);
        opt.trace_every = std::max<std::size_t>(
            1, static_cast<std::size_t>(cfg.steps_per_length / 20.0));
        opt.absorber = true;
        opt.observer = [&](const ScalarField& fld) {
            xs->push_back(windowed_centroid_row(fld, 0.0, half_window));
            if (record_z) rep.z.push_back(fld.z);
        };
        propagate(f, opt, p, w);
    };

    ScalarField ctrl = build(false);
    run(ctrl, &rep.control_x, true);
    ScalarField test = build(true);
    run(test, &rep.test_x, false);

    rep.deflection_control = rep.control_x.back() - rep.control_x.front();
    rep.deflection_test = rep.test_x.back() - rep.test_x.front();

    // Linear Fresnel two-source model: both apertures radiate the truncated
    // profile (hole 2 behind its phase plate); the z-averaged transverse
    // intensity gradient at the launch axis gives the bright-fringe side.
    {
        const double k = w.k0 * n0;
        const double xprobe = 0.5 * r_core;
        const std::size_t nsrc = 256;
        const double dxs = slit_w / static_cast<double>(nsrc);
        auto pattern = [&](double x, double z) {
            cplx sum{0.0, 0.0};
            for (std::size_t i = 0; i < nsrc; ++i) {
                const double rel = -0.5 * slit_w + (static_cast<double>(i) + 0.5) * dxs;
                const double xs = offset1 + rel;
                const double d1 = x - xs;
                sum += prof.value_at(xs) * std::polar(1.0, k * d1 * d1 / (2.0 * z));
                const double xs2 = offset + rel;
                const double d2 = x - xs2;
                sum += prof.value_at(xs2) *
                       std::polar(1.0, k * d2 * d2 / (2.0 * z) + cfg.hole2_phase);
            }
            return std::norm(sum);
        };
        double acc = 0.0;
        for (double z : rep.z) {
            if (z <= 0.0) continue;
            acc += (pattern(xprobe, z) - pattern(-xprobe, z)) / (2.0 * xprobe);
        }
        rep.fringe_gradient_sign = acc > 0.0 ? 1 : (acc < 0.0 ? -1 : 0);
    }

    const double ctrl_mag = std::max(std::fabs(rep.deflection_control), 1e-3 * dx);
    if (std::fabs(rep.deflection_test) >= cfg.significance * ctrl_mag) {
        const int sgn = rep.deflection_test > 0.0 ? 1 : -1;
        rep.verdict = (sgn == rep.fringe_gradient_sign) ? "consistent" : "inconsistent";
    } else {
        rep.verdict = "null-effect";
    }
    return rep;
}

}  // namespace toroton
