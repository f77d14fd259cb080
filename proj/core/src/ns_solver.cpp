#include "cwsim/ns_solver.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "cwsim/errors.hpp"
#include "cwsim/tridiag.hpp"

namespace cwsim {

Field SimState::pressure(const GasModel& gas) const {
    Field p(*v.grid);
    for (int i = 0; i < v.size(); ++i) p[i] = gas.pressure(v[i], theta[i]);
    return p;
}

Field SimState::total_energy(const GasModel& gas) const {
    Field E(*v.grid);
    for (int i = 0; i < v.size(); ++i)
        E[i] = gas.internal_energy(theta[i]) + 0.5 * u[i] * u[i];
    return E;
}

double PerturbationSpec::shape_fn(double x) const {
    const double z = (x - center) / width;
    const double g = std::exp(-z * z) / (width * std::sqrt(M_PI));  // unit mass
    if (shape == BumpShape::Bump) return g;
    return -2.0 * z / width * g;
}

namespace {

SimState initial_data_impl(const Field& bv, const Field& bu, const Field& bth,
                           const std::array<double, 3>& left, const std::array<double, 3>& right,
                           const PerturbationSpec& spec, const Grid1D& grid, const GasModel& gas) {
    SimState s;
    s.t = 0.0;
    s.v = Field(grid);
    s.u = Field(grid);
    s.theta = Field(grid);
    const double g1 = 0.5 * (gas.gamma - 1.0) / gas.R;
    for (int i = 0; i < grid.n_nodes; ++i) {
        const double g = spec.shape_fn(grid.x[static_cast<size_t>(i)]);
        const double v0 = bv[i] + spec.eps_v * g;
        const double u0 = bu[i] + spec.eps_u * g;
        // perturb the conserved third component, then recover theta
        const double m3 = bth[i] + g1 * bu[i] * bu[i] + spec.eps_theta * g;
        const double th0 = m3 - g1 * u0 * u0;
        if (!(v0 > 0.0) || !(th0 > 0.0))
            throw std::invalid_argument("initial_data: perturbation destroys positivity");
        s.v[i] = v0;
        s.u[i] = u0;
        s.theta[i] = th0;
    }
    s.left_bc = left;
    s.right_bc = right;
    return s;
}

}  // namespace

SimState initial_data(const WaveEnsemble& base, const PerturbationSpec& spec, const Grid1D& grid,
                      const GasModel& gas) {
    if (base.v_tilde.grid != &grid)
        throw std::invalid_argument("initial_data: base and grid mismatch");
    const int n = grid.n_nodes;
    return initial_data_impl(base.v_tilde, base.u_tilde, base.theta_tilde,
                             {base.v_tilde[0], base.u_tilde[0], base.theta_tilde[0]},
                             {base.v_tilde[n - 1], base.u_tilde[n - 1], base.theta_tilde[n - 1]},
                             spec, grid, gas);
}

SimState initial_data(const ContactWave& base, const PerturbationSpec& spec, const Grid1D& grid,
                      const GasModel& gas) {
    if (base.v_bar.grid != &grid)
        throw std::invalid_argument("initial_data: base and grid mismatch");
    const int n = grid.n_nodes;
    return initial_data_impl(base.v_bar, base.u_bar, base.theta_bar,
                             {base.v_bar[0], base.u_bar[0], base.theta_bar[0]},
                             {base.v_bar[n - 1], base.u_bar[n - 1], base.theta_bar[n - 1]}, spec,
                             grid, gas);
}

double max_char_speed(const SimState& s, const GasModel& gas) {
    double m = 0.0;
    for (int i = 0; i < s.v.size(); ++i) {
        const double lam = std::sqrt(gas.gamma * gas.pressure(s.v[i], s.theta[i]) / s.v[i]);
        if (lam > m) m = lam;
    }
    return m;
}

namespace {

// work arrays for one step; sized on first use
struct StepWork {
    std::vector<double> lower, diag, upper, rhs, scratch;
};

// face flux difference of the average-flux form: out_i = (f_{i+1}+f_i)/2 - (f_i+f_{i-1})/2
// over dx, i.e. the plain central difference written as a telescoping flux.
inline double central_div(const std::vector<double>& f, int i, double dx) {
    return (f[static_cast<size_t>(i + 1)] - f[static_cast<size_t>(i - 1)]) / (2.0 * dx);
}

// diffusion flux difference: d/dx (coef * q_x / v) with face-averaged v
inline double diff_div(const std::vector<double>& q, const std::vector<double>& v, int i,
                       double dx, double coef) {
    const size_t k = static_cast<size_t>(i);
    const double fp = coef * (q[k + 1] - q[k]) / (dx * 0.5 * (v[k] + v[k + 1]));
    const double fm = coef * (q[k] - q[k - 1]) / (dx * 0.5 * (v[k - 1] + v[k]));
    return (fp - fm) / dx;
}

// d/dx (coef * u u_x / v) with face-averaged u and v
inline double mom_diff_div(const std::vector<double>& u, const std::vector<double>& v, int i,
                           double dx, double coef) {
    const size_t k = static_cast<size_t>(i);
    const double fp =
        coef * 0.5 * (u[k] + u[k + 1]) * (u[k + 1] - u[k]) / (dx * 0.5 * (v[k] + v[k + 1]));
    const double fm =
        coef * 0.5 * (u[k - 1] + u[k]) * (u[k] - u[k - 1]) / (dx * 0.5 * (v[k - 1] + v[k]));
    return (fp - fm) / dx;
}

void check_positive(const std::vector<double>& v, const std::vector<double>& th) {
    for (size_t i = 0; i < v.size(); ++i)
        if (!(v[i] > 0.0) || !(th[i] > 0.0))
            throw StepRejected("step: positivity lost at node " + std::to_string(i));
}

void check_positive_v(const std::vector<double>& v) {
    for (size_t i = 0; i < v.size(); ++i)
        if (!(v[i] > 0.0))
            throw StepRejected("step: volume positivity lost at node " + std::to_string(i));
}

}  // namespace

SimState step(const SimState& s, const StepConfig& cfg, const GasModel& gas) {
    const Grid1D& grid = *s.v.grid;
    const int n = grid.n_nodes;
    const double dx = grid.dx;
    const double dt = cfg.dt;
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    // 10% slack: transient steepening may push speeds slightly past the value the
    // caller sized dt with
    if (dt * max_char_speed(s, gas) / dx > cfg.cfl_max * 1.1)
        throw std::invalid_argument("step: advective CFL bound violated");
    const double w = cfg.theta_scheme;
    if (w < 0.5 || w > 1.0)
        throw std::invalid_argument("step: theta_scheme must lie in [1/2, 1]");

    const double R = gas.R, g1 = gas.gamma - 1.0;
    const double t_new = s.t + dt;
    const double t_mid = s.t + 0.5 * dt;

    std::array<double, 3> lbc = s.left_bc, rbc = s.right_bc;
    if (cfg.forcing && cfg.forcing->left_bc) lbc = cfg.forcing->left_bc(t_new);
    if (cfg.forcing && cfg.forcing->right_bc) rbc = cfg.forcing->right_bc(t_new);

    const std::vector<double>&vn = s.v.v, &un = s.u.v, &thn = s.theta.v;
    std::vector<double> pn(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        pn[static_cast<size_t>(i)] = R * thn[static_cast<size_t>(i)] / vn[static_cast<size_t>(i)];

    auto src = [&](const std::function<double(double, double)>& f, int i) {
        return (cfg.forcing && f) ? f(grid.x[static_cast<size_t>(i)], t_mid) : 0.0;
    };

    StepWork ws;
    ws.lower.resize(static_cast<size_t>(n));
    ws.diag.resize(static_cast<size_t>(n));
    ws.upper.resize(static_cast<size_t>(n));
    ws.rhs.resize(static_cast<size_t>(n));

    // --- predictor: explicit advection, implicit-Euler diffusion ---
    std::vector<double> vs(vn), us(static_cast<size_t>(n)), ths(static_cast<size_t>(n));
    for (int i = 1; i < n - 1; ++i)
        vs[static_cast<size_t>(i)] = vn[static_cast<size_t>(i)] +
                                     dt * (central_div(un, i, dx) + src(cfg.forcing ? cfg.forcing->s_v : nullptr, i));
    vs[0] = lbc[0];
    vs[static_cast<size_t>(n - 1)] = rbc[0];
    check_positive_v(vs);  // vs enters the diffusion denominators below

    auto solve_velocity = [&](const std::vector<double>& v_impl, double w_impl,
                              const std::vector<double>& expl, std::vector<double>& out) {
        // (I - w_impl dt L(v_impl)) out = expl
        for (int i = 1; i < n - 1; ++i) {
            const size_t k = static_cast<size_t>(i);
            const double ap = gas.mu / (dx * dx * 0.5 * (v_impl[k] + v_impl[k + 1]));
            const double am = gas.mu / (dx * dx * 0.5 * (v_impl[k - 1] + v_impl[k]));
            ws.lower[k] = -w_impl * dt * am;
            ws.upper[k] = -w_impl * dt * ap;
            ws.diag[k] = 1.0 + w_impl * dt * (ap + am);
            ws.rhs[k] = expl[k];
        }
        ws.lower[0] = 0.0;
        ws.upper[0] = 0.0;
        ws.diag[0] = 1.0;
        ws.rhs[0] = lbc[1];
        ws.lower[static_cast<size_t>(n - 1)] = 0.0;
        ws.upper[static_cast<size_t>(n - 1)] = 0.0;
        ws.diag[static_cast<size_t>(n - 1)] = 1.0;
        ws.rhs[static_cast<size_t>(n - 1)] = rbc[1];
        solve_tridiag(ws.lower, ws.diag, ws.upper, ws.rhs, ws.scratch);
        out = ws.rhs;
    };

    auto solve_temperature = [&](const std::vector<double>& v_impl, double w_impl,
                                 const std::vector<double>& expl, std::vector<double>& out) {
        // (R/g1) out - w_impl dt Gtheta(out; v_impl) = expl
        for (int i = 1; i < n - 1; ++i) {
            const size_t k = static_cast<size_t>(i);
            const double ap = gas.kappa / (dx * dx * 0.5 * (v_impl[k] + v_impl[k + 1]));
            const double am = gas.kappa / (dx * dx * 0.5 * (v_impl[k - 1] + v_impl[k]));
            ws.lower[k] = -w_impl * dt * am;
            ws.upper[k] = -w_impl * dt * ap;
            ws.diag[k] = R / g1 + w_impl * dt * (ap + am);
            ws.rhs[k] = expl[k];
        }
        ws.lower[0] = 0.0;
        ws.upper[0] = 0.0;
        ws.diag[0] = 1.0;
        ws.rhs[0] = lbc[2];
        ws.lower[static_cast<size_t>(n - 1)] = 0.0;
        ws.upper[static_cast<size_t>(n - 1)] = 0.0;
        ws.diag[static_cast<size_t>(n - 1)] = 1.0;
        ws.rhs[static_cast<size_t>(n - 1)] = rbc[2];
        solve_tridiag(ws.lower, ws.diag, ws.upper, ws.rhs, ws.scratch);
        out = ws.rhs;
    };

    std::vector<double> expl(static_cast<size_t>(n));
    // predictor velocity
    for (int i = 1; i < n - 1; ++i)
        expl[static_cast<size_t>(i)] =
            un[static_cast<size_t>(i)] +
            dt * (-central_div(pn, i, dx) + src(cfg.forcing ? cfg.forcing->s_u : nullptr, i));
    solve_velocity(vs, 1.0, expl, us);

    // predictor temperature through the energy form
    {
        std::vector<double> pu(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            pu[static_cast<size_t>(i)] = pn[static_cast<size_t>(i)] * un[static_cast<size_t>(i)];
        for (int i = 1; i < n - 1; ++i) {
            const size_t k = static_cast<size_t>(i);
            expl[k] = R / g1 * thn[k] + 0.5 * (un[k] * un[k] - us[k] * us[k]) +
                      dt * (-central_div(pu, i, dx) + mom_diff_div(us, vs, i, dx, gas.mu) +
                            src(cfg.forcing ? cfg.forcing->s_E : nullptr, i));
        }
        solve_temperature(vs, 1.0, expl, ths);
    }
    check_positive(vs, ths);

    // --- corrector: midpoint advective fluxes, theta-weighted diffusion ---
    std::vector<double> vm(static_cast<size_t>(n)), um(static_cast<size_t>(n)),
        pm(static_cast<size_t>(n)), pum(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const size_t k = static_cast<size_t>(i);
        vm[k] = 0.5 * (vn[k] + vs[k]);
        um[k] = 0.5 * (un[k] + us[k]);
        const double thm = 0.5 * (thn[k] + ths[k]);
        pm[k] = R * thm / vm[k];
        pum[k] = pm[k] * um[k];
    }

    SimState out;
    out.t = t_new;
    out.left_bc = lbc;
    out.right_bc = rbc;
    out.v = Field(grid);
    out.u = Field(grid);
    out.theta = Field(grid);

    std::vector<double>&v1 = out.v.v, &u1 = out.u.v, &th1 = out.theta.v;
    v1.assign(vn.begin(), vn.end());
    for (int i = 1; i < n - 1; ++i)
        v1[static_cast<size_t>(i)] = vn[static_cast<size_t>(i)] +
                                     dt * (central_div(um, i, dx) + src(cfg.forcing ? cfg.forcing->s_v : nullptr, i));
    v1[0] = lbc[0];
    v1[static_cast<size_t>(n - 1)] = rbc[0];
    check_positive_v(v1);

    for (int i = 1; i < n - 1; ++i) {
        const size_t k = static_cast<size_t>(i);
        expl[k] = un[k] + dt * (-central_div(pm, i, dx) +
                                (1.0 - w) * diff_div(un, vn, i, dx, gas.mu) +
                                src(cfg.forcing ? cfg.forcing->s_u : nullptr, i));
    }
    solve_velocity(v1, w, expl, u1);

    for (int i = 1; i < n - 1; ++i) {
        const size_t k = static_cast<size_t>(i);
        expl[k] = R / g1 * thn[k] + 0.5 * (un[k] * un[k] - u1[k] * u1[k]) +
                  dt * (-central_div(pum, i, dx) + (1.0 - w) * diff_div(thn, vn, i, dx, gas.kappa) +
                        w * mom_diff_div(u1, v1, i, dx, gas.mu) +
                        (1.0 - w) * mom_diff_div(un, vn, i, dx, gas.mu) +
                        src(cfg.forcing ? cfg.forcing->s_E : nullptr, i));
    }
    solve_temperature(v1, w, expl, th1);

    check_positive(v1, th1);
    return out;
}

Trajectory simulate(const SimState& init, StepConfig cfg, const GasModel& gas, double t_end,
                    const std::vector<Observer>& observers, double rho) {
    if (t_end < init.t) throw std::invalid_argument("simulate: t_end before initial time");
    if (!(rho > 1.0)) throw std::invalid_argument("simulate: output ratio must exceed 1");
    const Grid1D& grid = *init.v.grid;
    ensure_finite(init.v, "initial v");
    ensure_finite(init.u, "initial u");
    ensure_finite(init.theta, "initial theta");

    Trajectory traj;
    if (cfg.dt <= 0.0) {
        const double lam = max_char_speed(init, gas);
        cfg.dt = 0.98 * cfg.cfl_max * grid.dx / lam;
    }
    traj.dt_used = cfg.dt;

    auto record = [&](const SimState& s) {
        traj.snapshots.push_back(s);
        for (const auto& ob : observers) ob(s);
    };

    // with no observers only the endpoints are kept; observers get the full
    // geometric schedule
    const bool schedule = !observers.empty();

    SimState s = init;
    record(s);
    if (t_end <= init.t) return traj;

    double next_output = (1.0 + init.t) * rho - 1.0;
    int halvings = 0;
    while (s.t < t_end - 1e-12 * (1.0 + t_end)) {
        StepConfig local = cfg;
        if (s.t + local.dt > t_end) local.dt = t_end - s.t;
        bool accepted = false;
        while (!accepted) {
            try {
                SimState next = step(s, local, gas);
                s = std::move(next);
                accepted = true;
            } catch (const StepRejected&) {
                ++traj.rejections;
                if (++halvings > 10)
                    throw SolverFailure("simulate: step rejected after 10 dt halvings");
                cfg.dt *= 0.5;
                local.dt = std::min(cfg.dt, t_end - s.t);
            }
        }
        ++traj.steps;
        const bool at_end = s.t >= t_end - 1e-12 * (1.0 + t_end);
        if ((schedule && s.t >= next_output) || at_end) {
            record(s);
            while (next_output <= s.t) next_output = (1.0 + next_output) * rho - 1.0;
        }
    }
    return traj;
}

ConservationDrift conservation_audit(const Trajectory& traj, const GasModel& gas) {
    if (traj.snapshots.size() < 2)
        throw std::invalid_argument("conservation_audit: need at least 2 snapshots");
    const Grid1D& grid = *traj.snapshots.front().v.grid;
    const int n = grid.n_nodes;
    const double dx = grid.dx;

    auto boundary_flux = [&](const SimState& s, bool left) -> Vec3 {
        // physical fluxes of (v, u, E): (-u, p - mu u_x/v, pu - kappa theta_x/v - mu u u_x/v)
        const int i = left ? 0 : n - 1;
        auto one_sided = [&](const Field& f) {
            if (left) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
            return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
        };
        const double ux = one_sided(s.u);
        const double thx = one_sided(s.theta);
        const double p = gas.pressure(s.v[i], s.theta[i]);
        return {-s.u[i], p - gas.mu * ux / s.v[i],
                p * s.u[i] - gas.kappa * thx / s.v[i] - gas.mu * s.u[i] * ux / s.v[i]};
    };

    auto integrals = [&](const SimState& s) -> Vec3 {
        return {trapezoid(s.v), trapezoid(s.u), trapezoid(s.total_energy(gas))};
    };

    ConservationDrift drift;
    const Vec3 I0 = integrals(traj.snapshots.front());
    Vec3 flux_acc{0.0, 0.0, 0.0};
    Vec3 prev_diff{};
    double prev_t = traj.snapshots.front().t;
    {
        const Vec3 fl = boundary_flux(traj.snapshots.front(), true);
        const Vec3 fr = boundary_flux(traj.snapshots.front(), false);
        prev_diff = fl - fr;
    }
    for (size_t k = 1; k < traj.snapshots.size(); ++k) {
        const SimState& s = traj.snapshots[k];
        const Vec3 fl = boundary_flux(s, true);
        const Vec3 fr = boundary_flux(s, false);
        const Vec3 diff = fl - fr;
        const double h = s.t - prev_t;
        flux_acc = flux_acc + 0.5 * h * (prev_diff + diff);
        prev_diff = diff;
        prev_t = s.t;

        const Vec3 I = integrals(s);
        for (int c = 0; c < 3; ++c) {
            const double denom = std::max(std::fabs(I0[static_cast<size_t>(c)]), 1.0);
            const double d = std::fabs(I[static_cast<size_t>(c)] - I0[static_cast<size_t>(c)] -
                                       flux_acc[static_cast<size_t>(c)]) /
                             denom;
            drift.max_rel_drift[static_cast<size_t>(c)] =
                std::max(drift.max_rel_drift[static_cast<size_t>(c)], d);
        }
    }
    return drift;
}

void write_checkpoint(const std::string& path, const SimState& s) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_checkpoint: cannot open " + path);
    const char magic[6] = {'C', 'W', 'S', 'I', 'M', '1'};
    os.write(magic, 6);
    const std::uint64_t n = static_cast<std::uint64_t>(s.v.size());
    os.write(reinterpret_cast<const char*>(&n), sizeof(n));
    os.write(reinterpret_cast<const char*>(&s.t), sizeof(double));
    const double L = s.v.grid->half_width;
    os.write(reinterpret_cast<const char*>(&L), sizeof(double));
    auto write_arr = [&](const std::vector<double>& a) {
        os.write(reinterpret_cast<const char*>(a.data()),
                 static_cast<std::streamsize>(a.size() * sizeof(double)));
    };
    write_arr(s.v.v);
    write_arr(s.u.v);
    write_arr(s.theta.v);
    if (!os) throw std::runtime_error("write_checkpoint: write failed for " + path);
}

CheckpointData read_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_checkpoint: cannot open " + path);
    char magic[6];
    is.read(magic, 6);
    if (!is || std::memcmp(magic, "CWSIM1", 6) != 0)
        throw std::runtime_error("read_checkpoint: bad magic in " + path);
    CheckpointData d;
    is.read(reinterpret_cast<char*>(&d.n), sizeof(d.n));
    is.read(reinterpret_cast<char*>(&d.t), sizeof(double));
    is.read(reinterpret_cast<char*>(&d.L), sizeof(double));
    auto read_arr = [&](std::vector<double>& a) {
        a.resize(d.n);
        is.read(reinterpret_cast<char*>(a.data()),
                static_cast<std::streamsize>(d.n * sizeof(double)));
    };
    read_arr(d.v);
    read_arr(d.u);
    read_arr(d.theta);
    if (!is) throw std::runtime_error("read_checkpoint: truncated file " + path);
    return d;
}

SimState state_from_checkpoint(const CheckpointData& data, const Grid1D& grid) {
    if (static_cast<std::uint64_t>(grid.n_nodes) != data.n)
        throw std::invalid_argument("state_from_checkpoint: node count mismatch");
    SimState s;
    s.t = data.t;
    s.v = Field(grid);
    s.u = Field(grid);
    s.theta = Field(grid);
    s.v.v = data.v;
    s.u.v = data.u;
    s.theta.v = data.theta;
    s.left_bc = {s.v[0], s.u[0], s.theta[0]};
    const int n = grid.n_nodes;
    s.right_bc = {s.v[n - 1], s.u[n - 1], s.theta[n - 1]};
    return s;
}

}  // namespace cwsim
