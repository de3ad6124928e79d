#include "toroton/radial.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace toroton {

namespace {

using State = std::array<double, 2>;  // (E, E')
namespace ode = boost::numeric::odeint;

struct RadialRhs {
    double k0_sq, beta_sq;
    const MediumParams* p;
    bool planar;  // drop the 1/r term

    void operator()(const State& y, State& dy, double r) const {
        const double eps = epsilon_of_intensity(y[0] * y[0], *p);
        dy[0] = y[1];
        dy[1] = -(k0_sq * eps - beta_sq) * y[0];
        if (!planar) dy[1] -= y[1] / r;
    }
};

// Integrate from the series start outward over a uniform grid, classifying
// the tail on the fly. Fills `values` up to the point reached.
ShootResult integrate_classify(double e0, double beta, const MediumParams& p,
                               const WaveParams& w, double r_max, double dr,
                               double ode_tol, bool planar,
                               std::vector<double>* values = nullptr) {
    const double k0_sq = w.k0 * w.k0;
    const double beta_sq = beta * beta;
    RadialRhs rhs{k0_sq, beta_sq, &p, planar};

    // regular expansion at the origin: E = e0 + c r^2 (axial), coefficient
    // halves the curvature split between E'' and E'/r in the planar case
    const double q0 = k0_sq * epsilon_of_intensity(e0 * e0, p) - beta_sq;
    const double c = -q0 * e0 / (planar ? 2.0 : 4.0);

    const std::size_t n = static_cast<std::size_t>(std::floor(r_max / dr)) + 1;
    if (values) {
        values->assign(n, 0.0);
        (*values)[0] = e0;
    }

    double r = dr;
    State y{e0 + c * r * r, 2.0 * c * r};
    if (values && n > 1) (*values)[1] = y[0];

    auto stepper = ode::make_controlled(ode_tol, ode_tol,
                                        ode::runge_kutta_cash_karp54<State>());
    const double blow_bound = 1e6 * e0;

    for (std::size_t i = 2; i < n; ++i) {
        const double r_next = static_cast<double>(i) * dr;
        try {
            ode::integrate_adaptive(stepper, rhs, y, r, r_next, dr * 0.1);
        } catch (...) {
            throw IntegrationBlowup(r);
        }
        r = r_next;
        if (!std::isfinite(y[0]) || !std::isfinite(y[1])) throw IntegrationBlowup(r);
        if (values) (*values)[i] = y[0];
        if (y[0] < 0.0)
            return {ShootOutcome::NegativeCrossing, y[0], r};
        if (y[0] > blow_bound || (y[1] > 0.0 && y[0] > 1e-6 * e0))
            return {ShootOutcome::DivergingPositive, y[0], r};
    }
    return {ShootOutcome::Decayed, y[0], r};
}

struct BetaBracket {
    double lo, hi;  // lo classifies as crossing, hi as diverging
};

BetaBracket bracket_or_throw(double e0, const MediumParams& p, const WaveParams& w,
                             double r_max, double dr, double ode_tol, bool planar) {
    const double beta_lo = w.k0 * std::sqrt(p.eps_lin);
    const double beta_hi = w.k0 * std::sqrt(epsilon_of_intensity(e0 * e0, p));
    if (!(beta_hi > beta_lo * (1.0 + 1e-14)))
        throw NoBracketingError(
            "no trapping interval: peak index does not exceed the background "
            "(amplitude below threshold or d_eps = 0)");

    auto cls = [&](double b) {
        return integrate_classify(e0, b, p, w, r_max, dr, ode_tol, planar).outcome;
    };

    // Coarse scan: endpoints very close to the light lines evolve too slowly
    // to classify on a finite grid, so hunt for an adjacent (crossing,
    // diverging) pair instead of trusting the extremes.
    const std::size_t n_scan = 33;
    double lo = beta_lo * (1.0 + 1e-13);
    if (cls(lo) == ShootOutcome::DivergingPositive)
        throw NoBracketingError("shooting diverges at the lower light line");
    for (std::size_t i = 1; i <= n_scan; ++i) {
        double b = beta_lo + (beta_hi - beta_lo) * static_cast<double>(i) / n_scan;
        b = std::min(b, beta_hi * (1.0 - 1e-13));
        const ShootOutcome o = cls(b);
        if (o == ShootOutcome::DivergingPositive) return {lo, b};
        if (o == ShootOutcome::NegativeCrossing) lo = b;
        // Decayed: grid too short to tell; keep the last crossing as lo
    }
    throw NoBracketingError("shooting classification does not bracket a bound mode");
}

double bisect_beta(double e0, const MediumParams& p, const WaveParams& w, double r_max,
                   double dr, const SolveTolerances& tol, bool planar) {
    BetaBracket b = bracket_or_throw(e0, p, w, r_max, dr, tol.ode_tol, planar);
    while ((b.hi - b.lo) > tol.beta_rel * 0.5 * (b.hi + b.lo)) {
        const double mid = 0.5 * (b.lo + b.hi);
        const ShootOutcome o =
            integrate_classify(e0, mid, p, w, r_max, dr, tol.ode_tol, planar).outcome;
        if (o == ShootOutcome::NegativeCrossing)
            b.lo = mid;
        else if (o == ShootOutcome::DivergingPositive)
            b.hi = mid;
        else
            return mid;
    }
    return 0.5 * (b.lo + b.hi);
}

// Replace the numerically fragile far tail with the matched asymptote
// A exp(-kappa r)/sqrt(r) (axial) or A exp(-kappa x) (planar), grafted where
// the amplitude first drops below graft_level * e0.
void graft_tail(std::vector<double>& e, double dr, double e0, double kappa,
                double graft_level, bool planar) {
    std::size_t g = e.size();
    for (std::size_t i = 1; i < e.size(); ++i) {
        if (e[i] <= graft_level * e0) {
            g = i;
            break;
        }
        if (e[i] < 0.0 || e[i] > e[i - 1]) {  // lost the decaying branch early
            g = i;
            break;
        }
    }
    if (g >= e.size()) return;
    const double rg = static_cast<double>(g) * dr;
    const double eg = std::max(e[g], 0.0);
    for (std::size_t i = g; i < e.size(); ++i) {
        const double r = static_cast<double>(i) * dr;
        double v = eg * std::exp(-kappa * (r - rg));
        if (!planar) v *= std::sqrt(rg / r);
        e[i] = v;
    }
}

struct GridChoice {
    double r_max, dr;
};

GridChoice choose_grid(double kappa_est, const WaveParams& w) {
    GridChoice g;
    g.r_max = 30.0 / kappa_est;
    g.dr = std::min(w.lambda_med / 50.0, 0.0005 / kappa_est);
    return g;
}

}  // namespace

double RadialProfile::value_at(double r) const {
    if (r < 0.0 || r > r_max() || r_grid.size() < 2)
        throw std::domain_error("RadialProfile::value_at: r outside grid");
    const double h = dr();
    const std::size_t i = std::min(static_cast<std::size_t>(r / h), r_grid.size() - 2);
    const double t = (r - r_grid[i]) / h;
    return (1.0 - t) * e_t[i] + t * e_t[i + 1];
}

double RadialProfile::deriv_at(double r) const {
    const double h = dr();
    const double rl = std::max(0.0, r - h);
    const double rr = std::min(r_max(), r + h);
    return (value_at(rr) - value_at(rl)) / (rr - rl);
}

double PlanarProfile::value_at(double x) const {
    const double ax = std::fabs(x);
    if (x_grid.size() < 2 || ax > x_grid.back()) return 0.0;
    const double h = x_grid[1] - x_grid[0];
    const std::size_t i = std::min(static_cast<std::size_t>(ax / h), x_grid.size() - 2);
    const double t = (ax - x_grid[i]) / h;
    return (1.0 - t) * e_t[i] + t * e_t[i + 1];
}

ShootResult shoot(double e0, double beta, const MediumParams& p, const WaveParams& w,
                  double r_max, double dr) {
    p.validate();
    if (!(e0 > 0.0)) throw std::invalid_argument("shoot: e0 must be > 0");
    if (!(dr > 0.0) || !(r_max > dr)) throw std::invalid_argument("shoot: bad grid");
    return integrate_classify(e0, beta, p, w, r_max, dr, 1e-12, false);
}

RadialProfile solve_profile(double e0, const MediumParams& p, const WaveParams& w,
                            SolveTolerances tol) {
    p.validate();
    if (!(e0 > 0.0)) throw std::invalid_argument("solve_profile: e0 must be > 0");

    const double beta_lo = w.k0 * std::sqrt(p.eps_lin);
    const double beta_hi = w.k0 * std::sqrt(epsilon_of_intensity(e0 * e0, p));
    if (!(beta_hi > beta_lo))
        throw NoBracketingError("solve_profile: medium cannot self-trap at this amplitude");

    double kappa_est = 0.4 * std::sqrt(beta_hi * beta_hi - beta_lo * beta_lo);
    RadialProfile out;
    for (int pass = 0; pass < 4; ++pass) {
        const GridChoice g = choose_grid(kappa_est, w);
        const double beta = bisect_beta(e0, p, w, g.r_max, g.dr, tol, false);
        const double kappa = std::sqrt(beta * beta - beta_lo * beta_lo);
        if (pass < 3 && (kappa < 0.8 * kappa_est || kappa > 1.3 * kappa_est)) {
            kappa_est = kappa;
            continue;
        }
        std::vector<double> e;
        integrate_classify(e0, beta, p, w, g.r_max, g.dr, tol.ode_tol, false, &e);
        graft_tail(e, g.dr, e0, kappa, 1e-6, false);
        out.e_t = std::move(e);
        out.r_grid.resize(out.e_t.size());
        for (std::size_t i = 0; i < out.r_grid.size(); ++i)
            out.r_grid[i] = static_cast<double>(i) * g.dr;
        out.beta = beta;
        out.kappa = kappa;
        out.power = power_of(out);
        return out;
    }
    throw NoBracketingError("solve_profile: grid adaptation failed to settle");
}

double power_of(const RadialProfile& profile) {
    const auto& r = profile.r_grid;
    const auto& e = profile.e_t;
    if (r.size() != e.size() || r.size() < 2)
        throw std::invalid_argument("power_of: malformed profile");
    double acc = 0.0;
    for (std::size_t i = 1; i < r.size(); ++i) {
        const double f0 = e[i - 1] * e[i - 1] * r[i - 1];
        const double f1 = e[i] * e[i] * r[i];
        acc += 0.5 * (f0 + f1) * (r[i] - r[i - 1]);
    }
    return 2.0 * M_PI * acc;
}

PowerCurve critical_power(const MediumParams& p, const WaveParams& w,
                          const std::vector<double>& amplitudes) {
    if (amplitudes.size() < 2)
        throw std::invalid_argument("critical_power: need at least two amplitudes");
    PowerCurve curve;
    for (double e0 : amplitudes) {
        try {
            const RadialProfile prof = solve_profile(e0, p, w);
            curve.peak_amplitudes.push_back(e0);
            curve.powers.push_back(prof.power);
        } catch (const NoBracketingError&) {
            // below threshold at this amplitude; skip
        }
    }
    if (curve.powers.empty())
        throw NoBracketingError("critical_power: no amplitude in range self-traps");

    // linear extrapolation of P(e0^2) to the trapping threshold e0 -> 0
    std::vector<std::size_t> idx(curve.powers.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return curve.peak_amplitudes[a] < curve.peak_amplitudes[b];
    });
    if (idx.size() == 1) {
        curve.critical_power = curve.powers[idx[0]];
    } else {
        const double x0 = curve.peak_amplitudes[idx[0]] * curve.peak_amplitudes[idx[0]];
        const double x1 = curve.peak_amplitudes[idx[1]] * curve.peak_amplitudes[idx[1]];
        const double p0 = curve.powers[idx[0]];
        const double p1 = curve.powers[idx[1]];
        curve.critical_power = p0 - x0 * (p1 - p0) / (x1 - x0);
    }
    return curve;
}

PlanarProfile solve_profile_1d(double e0, const MediumParams& p, const WaveParams& w,
                               SolveTolerances tol) {
    p.validate();
    if (!(e0 > 0.0)) throw std::invalid_argument("solve_profile_1d: e0 must be > 0");

    const double beta_lo = w.k0 * std::sqrt(p.eps_lin);
    const double beta_hi = w.k0 * std::sqrt(epsilon_of_intensity(e0 * e0, p));
    if (!(beta_hi > beta_lo))
        throw NoBracketingError("solve_profile_1d: medium cannot self-trap at this amplitude");

    double kappa_est = 0.6 * std::sqrt(beta_hi * beta_hi - beta_lo * beta_lo);
    for (int pass = 0; pass < 4; ++pass) {
        const GridChoice g = choose_grid(kappa_est, w);
        const double beta = bisect_beta(e0, p, w, g.r_max, g.dr, tol, true);
        const double kappa = std::sqrt(beta * beta - beta_lo * beta_lo);
        if (pass < 3 && (kappa < 0.8 * kappa_est || kappa > 1.3 * kappa_est)) {
            kappa_est = kappa;
            continue;
        }
        std::vector<double> e;
        integrate_classify(e0, beta, p, w, g.r_max, g.dr, tol.ode_tol, true, &e);
        graft_tail(e, g.dr, e0, kappa, 1e-6, true);
        PlanarProfile out;
        out.e_t = std::move(e);
        out.x_grid.resize(out.e_t.size());
        for (std::size_t i = 0; i < out.x_grid.size(); ++i)
            out.x_grid[i] = static_cast<double>(i) * g.dr;
        out.beta = beta;
        out.kappa = kappa;
        double acc = 0.0;
        for (std::size_t i = 1; i < out.e_t.size(); ++i)
            acc += 0.5 * (out.e_t[i - 1] * out.e_t[i - 1] + out.e_t[i] * out.e_t[i]) * g.dr;
        out.power = 2.0 * acc;
        return out;
    }
    throw NoBracketingError("solve_profile_1d: grid adaptation failed to settle");
}

}  // namespace toroton
