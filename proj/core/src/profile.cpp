#include "cwsim/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwsim/errors.hpp"
#include "cwsim/tridiag.hpp"

namespace cwsim {

namespace {

// Residual of the conservative discretization at interior node i.
// q_{i+1/2} = (T_{i+1}-T_i) / (h * (T_i+T_{i+1})/2)
double native_residual_at(const std::vector<double>& xi, const std::vector<double>& T,
                          double a, double h, size_t i) {
    const double mp = 0.5 * (T[i] + T[i + 1]);
    const double mm = 0.5 * (T[i - 1] + T[i]);
    const double qp = (T[i + 1] - T[i]) / (h * mp);
    const double qm = (T[i] - T[i - 1]) / (h * mm);
    return a * (qp - qm) / h + xi[i] * (T[i + 1] - T[i - 1]) / (4.0 * h);
}

struct NewtonResult {
    bool converged = false;
    double residual = 0.0;
};

NewtonResult newton_solve(const std::vector<double>& xi, std::vector<double>& T, double a,
                          double h, int max_iter, double tol) {
    const size_t n = T.size();
    const size_t m = n - 2;  // interior unknowns
    std::vector<double> lower(m), diag(m), upper(m), rhs(m), scratch(m);

    auto residual_norm = [&](const std::vector<double>& U) {
        double r = 0.0;
        for (size_t i = 1; i + 1 < n; ++i)
            r = std::max(r, std::fabs(native_residual_at(xi, U, a, h, i)));
        return r;
    };

    double rnorm = residual_norm(T);
    for (int it = 0; it < max_iter; ++it) {
        if (rnorm <= tol) return {true, rnorm};
        for (size_t i = 1; i + 1 < n; ++i) {
            const size_t k = i - 1;
            const double mp = 0.5 * (T[i] + T[i + 1]);
            const double mm = 0.5 * (T[i - 1] + T[i]);
            const double qp = (T[i + 1] - T[i]) / (h * mp);
            const double qm = (T[i] - T[i - 1]) / (h * mm);
            const double dqp_dTp = 1.0 / (h * mp) - qp / (2.0 * mp);
            const double dqp_dTi = -1.0 / (h * mp) - qp / (2.0 * mp);
            const double dqm_dTi = 1.0 / (h * mm) - qm / (2.0 * mm);
            const double dqm_dTm = -1.0 / (h * mm) - qm / (2.0 * mm);
            rhs[k] = -(a * (qp - qm) / h + xi[i] * (T[i + 1] - T[i - 1]) / (4.0 * h));
            diag[k] = a * (dqp_dTi - dqm_dTi) / h;
            upper[k] = a * dqp_dTp / h + xi[i] / (4.0 * h);
            lower[k] = -a * dqm_dTm / h - xi[i] / (4.0 * h);
        }
        solve_tridiag(lower, diag, upper, rhs, scratch);

        // damped update with positivity guard
        double step = 1.0;
        bool improved = false;
        std::vector<double> trial(T);
        for (int bt = 0; bt < 30; ++bt) {
            bool positive = true;
            for (size_t k = 0; k < m; ++k) {
                trial[k + 1] = T[k + 1] + step * rhs[k];
                if (!(trial[k + 1] > 0.0)) positive = false;
            }
            if (positive) {
                const double rt = residual_norm(trial);
                if (rt < rnorm || rt <= tol) {
                    T = trial;
                    rnorm = rt;
                    improved = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!improved) return {rnorm <= tol, rnorm};
    }
    return {rnorm <= tol, rnorm};
}

// Standard Fritsch-Carlson pass; only active where the data stops being resolvably
// monotone (the flat Gaussian tails).
std::vector<double> limit_slopes(const std::vector<double>& T, const std::vector<double>& d,
                                 double h) {
    const size_t n = T.size();
    std::vector<double> out(d);
    std::vector<double> sec(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) sec[i] = (T[i + 1] - T[i]) / h;
    for (size_t i = 0; i < n; ++i) {
        const double dl = (i > 0) ? sec[i - 1] : sec[0];
        const double dr = (i + 1 < n) ? sec[i] : sec[n - 2];
        if (dl * dr <= 0.0) out[i] = 0.0;
    }
    for (size_t i = 0; i + 1 < n; ++i) {
        if (sec[i] == 0.0) {
            out[i] = 0.0;
            out[i + 1] = 0.0;
            continue;
        }
        const double alpha = out[i] / sec[i];
        const double beta = out[i + 1] / sec[i];
        const double r2 = alpha * alpha + beta * beta;
        if (r2 > 9.0) {
            const double tau = 3.0 / std::sqrt(r2);
            out[i] = tau * alpha * sec[i];
            out[i + 1] = tau * beta * sec[i];
        }
    }
    return out;
}

struct Hermite {
    double value;
    double deriv;
};

Hermite hermite_eval(double x0, double h, double f0, double f1, double d0, double d1, double x) {
    const double s = (x - x0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    const double dh00 = (6.0 * s2 - 6.0 * s) / h;
    const double dh10 = (3.0 * s2 - 4.0 * s + 1.0) / h;
    const double dh01 = (-6.0 * s2 + 6.0 * s) / h;
    const double dh11 = (3.0 * s2 - 2.0 * s) / h;
    return {h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1,
            dh00 * f0 + dh10 * h * d0 + dh01 * f1 + dh11 * h * d1};
}

}  // namespace

ProfileTable solve_profile(const GasModel& gas, const EndStates& ends, double Xi, int n) {
    gas.validate();
    ends.validate(gas);
    if (!(Xi >= 8.0)) throw std::invalid_argument("solve_profile: need Xi >= 8");
    if (n < 64) throw std::invalid_argument("solve_profile: need at least 64 nodes");

    ProfileTable p;
    p.theta_minus = ends.theta_minus;
    p.theta_plus = ends.theta_plus;
    p.a_coef = gas.diffusion_coefficient(ends.p_plus(gas));
    p.xi_max = Xi;
    p.h = 2.0 * Xi / (n - 1);
    p.xi_grid.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p.xi_grid[static_cast<size_t>(i)] = -Xi + p.h * i;
    p.xi_grid[static_cast<size_t>(n / 2)] = (n % 2 == 1) ? 0.0 : p.xi_grid[static_cast<size_t>(n / 2)];
    p.xi_grid.back() = Xi;

    const double tl = ends.theta_minus, tr = ends.theta_plus;
    p.theta_hat.assign(static_cast<size_t>(n), 0.0);

    auto ramp_between = [&](double a_end, double b_end, std::vector<double>& T) {
        for (int i = 0; i < n; ++i) {
            const double s = static_cast<double>(i) / (n - 1);
            T[static_cast<size_t>(i)] = a_end + (b_end - a_end) * s;
        }
    };

    if (p.delta() == 0.0) {
        std::fill(p.theta_hat.begin(), p.theta_hat.end(), tl);
    } else {
        ramp_between(tl, tr, p.theta_hat);
        // round-off floor of the residual evaluation scales like eps a theta / h^2
        const double theta_scale = std::max(tl, tr);
        const double tol = std::min(
            1e-9, std::max(1e-12, 50.0 * 2.2e-16 * p.a_coef * theta_scale / (p.h * p.h)));
        NewtonResult res = newton_solve(p.xi_grid, p.theta_hat, p.a_coef, p.h, 60, tol);
        if (!res.converged) {
            // continuation in the jump: solve a sequence of smaller jumps, warm-starting
            const int stages = 8;
            ramp_between(tl, tl, p.theta_hat);
            bool ok = false;
            for (int s = 1; s <= stages; ++s) {
                const double trs = tl + (tr - tl) * static_cast<double>(s) / stages;
                // shift the previous solution linearly toward the new right state
                const double prev_right = p.theta_hat.back();
                for (int i = 0; i < n; ++i) {
                    const double w = static_cast<double>(i) / (n - 1);
                    p.theta_hat[static_cast<size_t>(i)] = std::max(
                        1e-12, p.theta_hat[static_cast<size_t>(i)] + w * (trs - prev_right));
                }
                res = newton_solve(p.xi_grid, p.theta_hat, p.a_coef, p.h, 60, tol);
                ok = res.converged;
                if (!ok) break;
            }
            if (!ok) {
                char msg[128];
                std::snprintf(msg, sizeof(msg),
                              "solve_profile: Newton iteration stalled, last residual %.3e",
                              res.residual);
                throw SolverFailure(msg);
            }
        }
        // flush round-off wiggles in the flat tails so the table is monotone
        const int sgn = p.sign();
        if (sgn > 0) {
            for (int i = 1; i < n; ++i)
                p.theta_hat[static_cast<size_t>(i)] =
                    std::max(p.theta_hat[static_cast<size_t>(i)], p.theta_hat[static_cast<size_t>(i - 1)]);
        } else if (sgn < 0) {
            for (int i = 1; i < n; ++i)
                p.theta_hat[static_cast<size_t>(i)] =
                    std::min(p.theta_hat[static_cast<size_t>(i)], p.theta_hat[static_cast<size_t>(i - 1)]);
        }
        p.theta_hat.front() = tl;
        p.theta_hat.back() = tr;
    }

    // nodal first derivative: 4th-order central stencils, 2nd-order one-sided at the
    // edges (the profile is constant there to far below round-off)
    p.dtheta.assign(static_cast<size_t>(n), 0.0);
    const auto& T = p.theta_hat;
    const double h = p.h;
    for (int i = 2; i < n - 2; ++i) {
        const size_t k = static_cast<size_t>(i);
        p.dtheta[k] = (-T[k + 2] + 8.0 * T[k + 1] - 8.0 * T[k - 1] + T[k - 2]) / (12.0 * h);
    }
    p.dtheta[0] = (-3.0 * T[0] + 4.0 * T[1] - T[2]) / (2.0 * h);
    p.dtheta[1] = (T[2] - T[0]) / (2.0 * h);
    p.dtheta[static_cast<size_t>(n - 2)] = (T[static_cast<size_t>(n - 1)] - T[static_cast<size_t>(n - 3)]) / (2.0 * h);
    p.dtheta[static_cast<size_t>(n - 1)] =
        (3.0 * T[static_cast<size_t>(n - 1)] - 4.0 * T[static_cast<size_t>(n - 2)] + T[static_cast<size_t>(n - 3)]) / (2.0 * h);
    // flush sign-inconsistent round-off so sign(dtheta) matches sign(theta_+-theta_-)
    const int sgn = p.sign();
    if (sgn != 0) {
        for (auto& d : p.dtheta)
            if (d * sgn < 0.0) d = 0.0;
    } else {
        std::fill(p.dtheta.begin(), p.dtheta.end(), 0.0);
    }

    // second and third derivatives from the ODE:
    //   T'' = T'^2/T - (xi/(2a)) T' T
    //   T''' = 2 T'T''/T - T'^3/T^2 - (1/(2a)) (T'T + xi T''T + xi T'^2)
    p.ddtheta.assign(static_cast<size_t>(n), 0.0);
    p.d3theta.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const size_t k = static_cast<size_t>(i);
        const double xi = p.xi_grid[k];
        const double th = T[k];
        const double d1 = p.dtheta[k];
        const double d2 = d1 * d1 / th - xi / (2.0 * p.a_coef) * d1 * th;
        p.ddtheta[k] = d2;
        p.d3theta[k] = 2.0 * d1 * d2 / th - d1 * d1 * d1 / (th * th) -
                       (d1 * th + xi * d2 * th + xi * d1 * d1) / (2.0 * p.a_coef);
    }

    p.mono_slope = limit_slopes(p.theta_hat, p.dtheta, p.h);
    return p;
}

double ode_residual_native(const ProfileTable& p) {
    double r = 0.0;
    for (size_t i = 1; i + 1 < p.theta_hat.size(); ++i)
        r = std::max(r, std::fabs(native_residual_at(p.xi_grid, p.theta_hat, p.a_coef, p.h, i)));
    return r;
}

double ode_residual_oracle(const ProfileTable& p) {
    // non-conservative form, plain central differences: an independent discretization
    double r = 0.0;
    const auto& T = p.theta_hat;
    const double h = p.h, a = p.a_coef;
    for (size_t i = 1; i + 1 < T.size(); ++i) {
        const double d1 = (T[i + 1] - T[i - 1]) / (2.0 * h);
        const double d2 = (T[i + 1] - 2.0 * T[i] + T[i - 1]) / (h * h);
        const double res = a * (d2 / T[i] - d1 * d1 / (T[i] * T[i])) + 0.5 * p.xi_grid[i] * d1;
        r = std::max(r, std::fabs(res));
    }
    return r;
}

ProfileSample sample_profile(const ProfileTable& p, double x, double t) {
    if (t < 0.0) throw std::invalid_argument("sample_profile: t must be nonnegative");
    const double s = std::sqrt(1.0 + t);
    const double xi = x / s;
    ProfileSample out;
    if (xi <= -p.xi_max) {
        out.theta = p.theta_minus;
        return out;
    }
    if (xi >= p.xi_max) {
        out.theta = p.theta_plus;
        return out;
    }
    const size_t n = p.xi_grid.size();
    size_t i = static_cast<size_t>((xi + p.xi_max) / p.h);
    if (i >= n - 1) i = n - 2;
    const double x0 = p.xi_grid[i];

    const Hermite th = hermite_eval(x0, p.h, p.theta_hat[i], p.theta_hat[i + 1],
                                    p.mono_slope[i], p.mono_slope[i + 1], xi);
    const Hermite d1 = hermite_eval(x0, p.h, p.dtheta[i], p.dtheta[i + 1], p.ddtheta[i],
                                    p.ddtheta[i + 1], xi);
    const Hermite d2 = hermite_eval(x0, p.h, p.ddtheta[i], p.ddtheta[i + 1], p.d3theta[i],
                                    p.d3theta[i + 1], xi);
    (void)th.deriv;
    out.theta = th.value;
    out.theta_x = d1.value / s;
    out.theta_xx = d2.value / (s * s);
    out.theta_t = -xi * d1.value / (2.0 * s * s);
    out.theta_xt = -(xi * d2.value + d1.value) / (2.0 * s * s * s);
    return out;
}

namespace {

GaussianBoundFit fit_on_xi_set(const ProfileTable& p, const std::vector<double>& xis) {
    GaussianBoundFit fit;
    const double delta = p.delta();
    if (delta == 0.0) {
        fit.c1 = 0.0;
        fit.c2 = 0.0;
        fit.pass = true;
        return fit;
    }
    std::vector<double> F(xis.size());
    for (size_t k = 0; k < xis.size(); ++k) {
        const double xi = xis[k];
        const ProfileSample smp = sample_profile(p, xi, 0.0);
        const double far = (xi >= 0.0) ? p.theta_plus : p.theta_minus;
        F[k] = std::fabs(smp.theta_xx) + std::fabs(smp.theta_x) + std::fabs(smp.theta - far);
    }
    // largest candidate rate whose worst point stays in the interior of the lattice
    const int n_cand = 96;
    const double lo = 5e-3, hi = 2.5;
    double best_c2 = 0.0, best_c1 = 0.0;
    for (int c = 0; c < n_cand; ++c) {
        const double c2 = lo * std::pow(hi / lo, static_cast<double>(c) / (n_cand - 1));
        double c1 = 0.0;
        double arg = 0.0;
        for (size_t k = 0; k < xis.size(); ++k) {
            const double val = F[k] * std::exp(c2 * xis[k] * xis[k]) / delta;
            if (val > c1) {
                c1 = val;
                arg = std::fabs(xis[k]);
            }
        }
        if (arg <= 0.9 * p.xi_max && std::isfinite(c1)) {
            best_c2 = c2;
            best_c1 = c1;
        }
    }
    fit.c1 = best_c1;
    fit.c2 = best_c2;
    fit.pass = best_c2 > 0.0 && best_c1 > 0.0;
    return fit;
}

}  // namespace

GaussianBoundFit fit_envelope_at(const ProfileTable& p, double t, int m_points) {
    // the (x,t) lattice at fixed t maps to xi = x/sqrt(1+t)
    std::vector<double> xis(static_cast<size_t>(m_points));
    for (int k = 0; k < m_points; ++k)
        xis[static_cast<size_t>(k)] =
            -p.xi_max + 2.0 * p.xi_max * static_cast<double>(k) / (m_points - 1);
    (void)t;
    return fit_on_xi_set(p, xis);
}

GaussianBoundFit verify_gaussian_bounds(ProfileTable& p) {
    std::vector<double> xis;
    const int m = 601;
    for (double t : {0.0, 1.0, 9.0, 99.0}) {
        (void)t;
        for (int k = 0; k < m; ++k)
            xis.push_back(-p.xi_max + 2.0 * p.xi_max * static_cast<double>(k) / (m - 1));
    }
    const GaussianBoundFit fit = fit_on_xi_set(p, xis);
    p.gauss_c1 = fit.c1;
    p.gauss_c2 = fit.c2;
    return fit;
}

void dump_profile_table(const ProfileTable& p, std::ostream& os) {
    os << "# xi theta dtheta ddtheta\n";
    char buf[160];
    for (size_t i = 0; i < p.xi_grid.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g\n", p.xi_grid[i],
                      p.theta_hat[i], p.dtheta[i], p.ddtheta[i]);
        os << buf;
    }
}

}  // namespace cwsim
