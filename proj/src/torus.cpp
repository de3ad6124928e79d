#include "toroton/torus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace toroton {

namespace {

double core_radius(const RadialProfile& profile, double level) {
    const double e0 = profile.e_t.front();
    for (std::size_t i = 1; i < profile.e_t.size(); ++i)
        if (profile.e_t[i] < level * e0) return profile.r_grid[i];
    return profile.r_max();
}

std::size_t thread_cap() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TOROTON_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
    }
    return n;
}

}  // namespace

double TorusGeometry::rho(double r, double theta) const {
    const double v = R + r * std::cos(theta);
    if (!(v > 0.0)) throw GeometryError("rho = R + r cos(theta) must stay positive");
    return v;
}

double curl_sq_straight(const RadialProfile& profile, const WaveParams& w, double r,
                        double theta) {
    (void)w;
    const double et = profile.value_at(r);
    const double detdr = profile.deriv_at(r);
    const double s = std::sin(theta);
    return 0.5 * (profile.beta * profile.beta * et * et + detdr * detdr * s * s);
}

double curl_sq_curved(const RadialProfile& profile, const WaveParams& w,
                      const TorusGeometry& g, double r, double theta) {
    (void)w;
    const double rho = g.rho(r, theta);
    const double et = profile.value_at(r);
    const double detdr = profile.deriv_at(r);
    const double s = std::sin(theta);
    const double ratio = g.R / rho;
    return 0.5 * (ratio * ratio * profile.beta * profile.beta * et * et +
                  detdr * detdr * s * s);
}

VecComponents curl_components_curved(const TorusVectorField& field, const TorusGeometry& g,
                                     double r, double theta, double alpha, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("curl_components_curved: h must be > 0");
    const double rho = g.rho(r, theta);
    g.rho(r + h, theta);
    if (r - h > 0.0) g.rho(r - h, theta);

    auto rho_at = [&](double th) { return g.R + r * std::cos(th); };
    auto d_theta = [&](auto f) { return (f(theta + h) - f(theta - h)) / (2.0 * h); };
    auto d_alpha = [&](auto f) { return (f(alpha + h) - f(alpha - h)) / (2.0 * h); };
    auto d_r = [&](auto f) { return (f(r + h) - f(r - h)) / (2.0 * h); };

    VecComponents out;
    // (curl E)_r = 1/(r rho) { d[rho E_alpha]/dtheta - r dE_theta/dalpha }
    out.r = (d_theta([&](double th) { return rho_at(th) * field(r, th, alpha).alpha; }) -
             r * d_alpha([&](double al) { return field(r, theta, al).theta; })) /
            (r * rho);
    // (curl E)_theta = 1/rho { dE_r/dalpha - d[rho E_alpha]/dr }
    out.theta = (d_alpha([&](double al) { return field(r, theta, al).r; }) -
                 d_r([&](double rr) {
                     return (g.R + rr * std::cos(theta)) * field(rr, theta, alpha).alpha;
                 })) /
                rho;
    // (curl E)_alpha = 1/r { d[r E_theta]/dr - dE_r/dtheta }
    out.alpha = (d_r([&](double rr) { return rr * field(rr, theta, alpha).theta; }) -
                 d_theta([&](double th) { return field(r, th, alpha).r; })) /
                r;
    return out;
}

double index_at(const RadialProfile& profile, const MediumParams& p, const WaveParams& w,
                const TorusGeometry& g, double r, double theta) {
    const double et = profile.value_at(r);
    const double u = curl_sq_curved(profile, w, g, r, theta);
    return index(et * et, u, p);
}

PolarIndexField delta_index_field(const RadialProfile& profile, const MediumParams& p,
                                  const WaveParams& w, const TorusGeometry& g,
                                  std::size_t nr, std::size_t ntheta, double r_max) {
    if (!(r_max < g.R)) throw GeometryError("delta_index_field: r_max must be < R");
    PolarIndexField out;
    out.r_values.resize(nr);
    out.theta_values.resize(ntheta);
    out.n.resize(nr * ntheta);
    for (std::size_t ir = 0; ir < nr; ++ir)
        out.r_values[ir] = (static_cast<double>(ir) + 0.5) * r_max / static_cast<double>(nr);
    for (std::size_t it = 0; it < ntheta; ++it)
        out.theta_values[it] = 2.0 * M_PI * static_cast<double>(it) / static_cast<double>(ntheta);
    for (std::size_t ir = 0; ir < nr; ++ir)
        for (std::size_t it = 0; it < ntheta; ++it)
            out.n[ir * ntheta + it] =
                index_at(profile, p, w, g, out.r_values[ir], out.theta_values[it]);
    return out;
}

double gamma_of_c(const RadialProfile& profile, const MediumParams& p, const WaveParams& w,
                  double curvature, const GammaOptions& opt) {
    if (!(curvature > 0.0)) throw GeometryError("gamma_of_c: curvature must be > 0");
    const TorusGeometry g = TorusGeometry::from_curvature(curvature);
    double r_core = core_radius(profile, opt.core_level);
    r_core = std::min(r_core, opt.max_core_curv / curvature);
    r_core = std::min(r_core, profile.r_max() - 2.0 * profile.dr());

    // intensity-weighted eikonal curvature: C_ray = -<dn/drho> / <n>,
    // dn/drho = cos(th) dn/dr - sin(th)/r dn/dth on the cross-section
    const std::size_t nr = opt.nr, nth = opt.ntheta;
    const double dr = r_core / static_cast<double>(nr);
    const double dth = 2.0 * M_PI / static_cast<double>(nth);
    const double hr = 0.5 * dr;
    const double hth = 0.5 * dth;

    double wsum = 0.0, grad_sum = 0.0, n_sum = 0.0;
    for (std::size_t ir = 0; ir < nr; ++ir) {
        const double r = (static_cast<double>(ir) + 0.5) * dr;
        const double et = profile.value_at(r);
        const double weight = et * et * r;  // area element r dr dth
        for (std::size_t it = 0; it < nth; ++it) {
            const double th = dth * static_cast<double>(it);
            const double n0 = index_at(profile, p, w, g, r, th);
            const double dndr =
                (index_at(profile, p, w, g, r + hr, th) -
                 index_at(profile, p, w, g, std::max(r - hr, 1e-12 * dr), th)) /
                (hr + std::min(hr, r));
            const double dndth = (index_at(profile, p, w, g, r, th + hth) -
                                  index_at(profile, p, w, g, r, th - hth)) /
                                 (2.0 * hth);
            const double dndrho = std::cos(th) * dndr - std::sin(th) / r * dndth;
            wsum += weight;
            grad_sum += weight * dndrho;
            n_sum += weight * n0;
        }
    }
    if (wsum <= 0.0) throw std::domain_error("gamma_of_c: zero-power profile");
    const double c_ray = -(grad_sum / wsum) / (n_sum / wsum);
    return c_ray / curvature;
}

CurvatureScan find_fixed_point(const std::function<double(double)>& gamma_fn, double c_min,
                               double c_max, std::size_t n_scan) {
    if (!(c_min > 0.0) || !(c_max > c_min) || n_scan < 2)
        throw std::invalid_argument("find_fixed_point: bad scan range");
    CurvatureScan scan;
    scan.c_values.resize(n_scan);
    scan.gamma_values.resize(n_scan);
    // log spacing so two-decade ranges resolve the small-C end
    const double lr = std::log(c_max / c_min);
    for (std::size_t i = 0; i < n_scan; ++i) {
        scan.c_values[i] =
            c_min * std::exp(lr * static_cast<double>(i) / static_cast<double>(n_scan - 1));
        scan.gamma_values[i] = gamma_fn(scan.c_values[i]);
    }

    // first downward crossing of 1, else first upward
    std::optional<std::size_t> pick;
    bool downward = false;
    for (std::size_t i = 0; i + 1 < n_scan; ++i) {
        const double a = scan.gamma_values[i] - 1.0;
        const double b = scan.gamma_values[i + 1] - 1.0;
        if (a > 0.0 && b <= 0.0) {
            pick = i;
            downward = true;
            break;
        }
        if (!pick && a < 0.0 && b >= 0.0) {
            pick = i;
            downward = false;
        }
    }
    if (!pick) return scan;

    double lo = scan.c_values[*pick], hi = scan.c_values[*pick + 1];
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double gm = gamma_fn(mid) - 1.0;
        if (std::fabs(gm) < 1e-9 || (hi - lo) < 1e-16 * mid) break;
        const bool above = gm > 0.0;
        if (above == downward)
            lo = mid;
        else
            hi = mid;
    }
    scan.c0 = mid;
    const double delta = 1e-3 * mid;
    scan.stable = gamma_fn(mid - delta) > 1.0 && gamma_fn(mid + delta) < 1.0;
    return scan;
}

CurvatureScan find_fixed_point(const RadialProfile& profile, const MediumParams& p,
                               const WaveParams& w, double c_min, double c_max,
                               std::size_t n_scan, const GammaOptions& opt) {
    return find_fixed_point(
        [&](double c) { return gamma_of_c(profile, p, w, c, opt); }, c_min, c_max, n_scan);
}

std::vector<TorusSolution> quantize(double r0, const WaveParams& w, MPolicy policy,
                                    double delta) {
    if (!(r0 > 0.0)) throw std::invalid_argument("quantize: r0 must be > 0");
    const double turns = 2.0 * M_PI * r0 / w.lambda_med;
    if (turns < 0.5) throw std::domain_error("quantize: r0 < lambda_med/(2 pi), no m >= 1 exists");
    auto make = [&](int m) {
        TorusSolution s;
        s.r0 = r0;
        s.m = m;
        s.lambda_adj = 2.0 * M_PI * r0 / static_cast<double>(m);
        s.freq_shift = w.lambda_med / s.lambda_adj;
        return s;
    };
    std::vector<TorusSolution> out;
    if (policy == MPolicy::Nearest) {
        const int m = std::max(1, static_cast<int>(std::lround(turns)));
        out.push_back(make(m));
    } else {
        // all m with |freq_shift - 1| <= delta
        const int m_lo = std::max(1, static_cast<int>(std::ceil(turns * (1.0 - delta))));
        const int m_hi = static_cast<int>(std::floor(turns * (1.0 + delta)));
        for (int m = m_lo; m <= m_hi; ++m) out.push_back(make(m));
    }
    return out;
}

double torus_energy(double critical_power, const TorusSolution& sol, const MediumParams& p) {
    if (!(critical_power > 0.0) || sol.m < 1 || !(sol.lambda_adj > 0.0))
        throw std::invalid_argument("torus_energy: inputs must be positive");
    return critical_power * static_cast<double>(sol.m) * sol.lambda_adj * std::sqrt(p.eps_lin);
}

SweepReport sweep_gamma(const std::vector<std::pair<MediumParams, double>>& grid,
                        const WaveParams& w, double c_min, double c_max,
                        std::size_t n_scan, const GammaOptions& opt) {
    SweepReport report;
    report.cells.resize(grid.size());

    auto run_cell = [&](std::size_t i) {
        SweepCell& cell = report.cells[i];
        cell.params = grid[i].first;
        cell.e0 = grid[i].second;
        try {
            const WaveParams wc = WaveParams::from_k0(w.k0, cell.params);
            const RadialProfile prof = solve_profile(cell.e0, cell.params, wc);
            const CurvatureScan scan =
                find_fixed_point(prof, cell.params, wc, c_min, c_max, n_scan, opt);
            cell.c0 = scan.c0;
            cell.stable = scan.stable;
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    };

    const std::size_t n_threads = std::min(thread_cap(), std::max<std::size_t>(grid.size(), 1));
    if (n_threads <= 1 || grid.size() <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) run_cell(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (std::size_t t = 0; t < n_threads; ++t)
            pool.emplace_back([&]() {
                for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                    run_cell(i);
            });
        for (auto& th : pool) th.join();
    }
    return report;
}

}  // namespace toroton
