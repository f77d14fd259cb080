#include <cmath>
#include <cstdio>
#include <filesystem>

#include "cwsim/errors.hpp"
#include "cwsim/mass.hpp"
#include "cwsim/ns_solver.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cwsim;

namespace {

SimState constant_state(const Grid1D& grid, double v0, double u0, double th0) {
    SimState s;
    s.t = 0.0;
    s.v = Field(grid, v0);
    s.u = Field(grid, u0);
    s.theta = Field(grid, th0);
    s.left_bc = {v0, u0, th0};
    s.right_bc = {v0, u0, th0};
    return s;
}

}  // namespace

TEST_CASE("constant state is a fixed point to round-off") {
    GasModel gas;
    const Grid1D grid = make_grid(10.0, 201);
    SimState s = constant_state(grid, 1.0, 0.0, 1.0);
    StepConfig cfg;
    cfg.dt = cfg.cfl_max * grid.dx / max_char_speed(s, gas);
    for (int k = 0; k < 1000; ++k) s = step(s, cfg, gas);
    for (int i = 0; i < grid.n_nodes; ++i) {
        CHECK(std::fabs(s.v[i] - 1.0) <= 1e-14);
        CHECK(std::fabs(s.u[i]) <= 1e-14);
        CHECK(std::fabs(s.theta[i] - 1.0) <= 1e-14);
    }
}

TEST_CASE("step preconditions") {
    GasModel gas;
    const Grid1D grid = make_grid(10.0, 201);
    SimState s = constant_state(grid, 1.0, 0.0, 1.0);
    StepConfig cfg;
    cfg.dt = 10.0 * grid.dx;  // far beyond the advective CFL bound
    CHECK_THROWS_AS(step(s, cfg, gas), std::invalid_argument);
    cfg.dt = 0.1 * grid.dx;
    cfg.theta_scheme = 0.2;
    CHECK_THROWS_AS(step(s, cfg, gas), std::invalid_argument);
}

TEST_CASE("positivity loss rejects the step") {
    GasModel gas;
    const Grid1D grid = make_grid(10.0, 201);
    SimState s = constant_state(grid, 1.0, 0.0, 1.0);
    // strong expansion: v + dt u_x goes negative at the center for dt near the
    // relaxed CFL bound
    for (int i = 0; i < grid.n_nodes; ++i)
        s.u[i] = -std::tanh(grid.x[static_cast<size_t>(i)] / 0.2);
    s.left_bc[1] = s.u[0];
    s.right_bc[1] = s.u[grid.n_nodes - 1];
    StepConfig cfg;
    cfg.cfl_max = 12.0;
    cfg.dt = 0.6;  // dt * max|u_x| ~ 3 >> min v
    CHECK_THROWS_AS(step(s, cfg, gas), StepRejected);
}

TEST_CASE("manufactured-solution convergence at order >= 1.8") {
    GasModel gas;
    const double g1 = gas.gamma - 1.0;

    auto vf = [](double x, double t) { return 1.5 + 0.2 * std::sin(2 * x) * std::cos(1.5 * t); };
    auto uf = [](double x, double t) { return 0.3 * std::cos(2 * x) * std::sin(1.5 * t); };
    auto thf = [](double x, double t) { return 1.2 + 0.15 * std::sin(2 * x + 0.5) * std::cos(1.5 * t); };
    auto v_t = [](double x, double t) { return -0.3 * std::sin(2 * x) * std::sin(1.5 * t); };
    auto v_x = [](double x, double t) { return 0.4 * std::cos(2 * x) * std::cos(1.5 * t); };
    auto u_t = [](double x, double t) { return 0.45 * std::cos(2 * x) * std::cos(1.5 * t); };
    auto u_x = [](double x, double t) { return -0.6 * std::sin(2 * x) * std::sin(1.5 * t); };
    auto th_t = [](double x, double t) { return -0.225 * std::sin(2 * x + 0.5) * std::sin(1.5 * t); };
    auto th_x = [](double x, double t) { return 0.3 * std::cos(2 * x + 0.5) * std::cos(1.5 * t); };

    auto pf = [&](double x, double t) { return gas.R * thf(x, t) / vf(x, t); };
    auto p_x = [&](double x, double t) {
        return gas.R * (th_x(x, t) * vf(x, t) - thf(x, t) * v_x(x, t)) / (vf(x, t) * vf(x, t));
    };

    SourceTerms src;
    src.s_v = [&](double x, double t) { return v_t(x, t) - u_x(x, t); };
    src.s_u = [&](double x, double t) {
        auto flux = [&](double xx) { return gas.mu * u_x(xx, t) / vf(xx, t); };
        return u_t(x, t) + p_x(x, t) - testsup::fd1(flux, x, 1e-4);
    };
    src.s_E = [&](double x, double t) {
        auto flux = [&](double xx) {
            return gas.kappa * th_x(xx, t) / vf(xx, t) +
                   gas.mu * uf(xx, t) * u_x(xx, t) / vf(xx, t);
        };
        const double E_t = gas.R * th_t(x, t) / g1 + uf(x, t) * u_t(x, t);
        const double pu_x_val = p_x(x, t) * uf(x, t) + pf(x, t) * u_x(x, t);
        return E_t + pu_x_val - testsup::fd1(flux, x, 1e-4);
    };
    src.left_bc = [&](double t) {
        return std::array<double, 3>{vf(-1.0, t), uf(-1.0, t), thf(-1.0, t)};
    };
    src.right_bc = [&](double t) {
        return std::array<double, 3>{vf(1.0, t), uf(1.0, t), thf(1.0, t)};
    };

    // cross-check the hand-coded sources against a pure finite-difference oracle of
    // the manufactured fields
    {
        auto rg = testsup::rng(5);
        for (int k = 0; k < 12; ++k) {
            const double x = testsup::uniform(rg, -0.8, 0.8);
            const double t = testsup::uniform(rg, 0.05, 0.45);
            auto vt_fd = [&](double tt) { return vf(x, tt); };
            const double sv_fd =
                testsup::fd1(vt_fd, t, 1e-4) - testsup::fd1([&](double xx) { return uf(xx, t); }, x, 1e-4);
            CHECK(std::fabs(src.s_v(x, t) - sv_fd) <= 1e-8);
            auto ut_fd = [&](double tt) { return uf(x, tt); };
            const double su_fd = testsup::fd1(ut_fd, t, 1e-4) +
                                 testsup::fd1([&](double xx) { return pf(xx, t); }, x, 1e-4) -
                                 testsup::fd1([&](double xx) { return gas.mu * u_x(xx, t) / vf(xx, t); }, x, 1e-4);
            CHECK(std::fabs(src.s_u(x, t) - su_fd) <= 1e-8);
            auto Ef = [&](double xx, double tt) {
                return gas.R * thf(xx, tt) / g1 + 0.5 * uf(xx, tt) * uf(xx, tt);
            };
            const double sE_fd =
                testsup::fd1([&](double tt) { return Ef(x, tt); }, t, 1e-4) +
                testsup::fd1([&](double xx) { return pf(xx, t) * uf(xx, t); }, x, 1e-4) -
                testsup::fd1(
                    [&](double xx) {
                        return gas.kappa * th_x(xx, t) / vf(xx, t) +
                               gas.mu * uf(xx, t) * u_x(xx, t) / vf(xx, t);
                    },
                    x, 1e-4);
            CHECK(std::fabs(src.s_E(x, t) - sE_fd) <= 1e-8);
        }
    }

    auto run_error = [&](int n) {
        const Grid1D grid = make_grid(1.0, n);
        SimState s;
        s.t = 0.0;
        s.v = Field::from_fn(grid, [&](double x) { return vf(x, 0.0); });
        s.u = Field::from_fn(grid, [&](double x) { return uf(x, 0.0); });
        s.theta = Field::from_fn(grid, [&](double x) { return thf(x, 0.0); });
        s.left_bc = src.left_bc(0.0);
        s.right_bc = src.right_bc(0.0);
        StepConfig cfg;
        cfg.forcing = &src;
        const double t_final = 0.5;
        const int steps = static_cast<int>(std::ceil(t_final / (0.3 * grid.dx)));
        cfg.dt = t_final / steps;
        for (int k = 0; k < steps; ++k) s = step(s, cfg, gas);
        Field ev(grid), eu(grid), eth(grid);
        for (int i = 0; i < grid.n_nodes; ++i) {
            const double x = grid.x[static_cast<size_t>(i)];
            ev[i] = s.v[i] - vf(x, t_final);
            eu[i] = s.u[i] - uf(x, t_final);
            eth[i] = s.theta[i] - thf(x, t_final);
        }
        return std::sqrt(norms(ev).l2 * norms(ev).l2 + norms(eu).l2 * norms(eu).l2 +
                         norms(eth).l2 * norms(eth).l2);
    };

    const double e1 = run_error(129);
    const double e2 = run_error(257);
    const double e3 = run_error(513);
    const double order12 = std::log2(e1 / e2);
    const double order23 = std::log2(e2 / e3);
    INFO("errors ", e1, " ", e2, " ", e3, " orders ", order12, " ", order23);
    CHECK(order12 >= 1.8);
    CHECK(order23 >= 1.8);
}

TEST_CASE("contact wave evolves within the residual budget") {
    GasModel gas;
    const EndStates ends = make_end_states(gas, 1.0, 1.2, 1.0);
    const ProfileTable prof = solve_profile(gas, ends, 12.0, 4097);
    const Grid1D grid = make_grid(60.0, 1201);
    const ContactWave cw0 = contact_wave(prof, gas, ends, grid, 0.0);

    SimState s;
    s.t = 0.0;
    s.v = cw0.v_bar;
    s.u = cw0.u_bar;
    s.theta = cw0.theta_bar;
    s.left_bc = {cw0.v_bar[0], cw0.u_bar[0], cw0.theta_bar[0]};
    const int n = grid.n_nodes;
    s.right_bc = {cw0.v_bar[n - 1], cw0.u_bar[n - 1], cw0.theta_bar[n - 1]};

    StepConfig cfg;
    cfg.dt = cfg.cfl_max * grid.dx / max_char_speed(s, gas);
    double budget = 0.0;
    const double t_end = 10.0;
    while (s.t < t_end - 1e-12) {
        StepConfig local = cfg;
        if (s.t + local.dt > t_end) local.dt = t_end - s.t;
        const ContactWave cw = contact_wave(prof, gas, ends, grid, s.t);
        const ContactResiduals res = contact_residuals(cw, gas);
        budget += local.dt * (norms(derivative(res.R1, 1)).linf +
                              norms(derivative(res.R2, 1)).linf);
        s = step(s, local, gas);
    }
    const ContactWave cwT = contact_wave(prof, gas, ends, grid, t_end);
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
        dev = std::max({dev, std::fabs(s.v[i] - cwT.v_bar[i]), std::fabs(s.u[i] - cwT.u_bar[i]),
                        std::fabs(s.theta[i] - cwT.theta_bar[i])});
    INFO("deviation ", dev, " budget ", budget);
    CHECK(dev <= budget + 5.0 * grid.dx * grid.dx);
    CHECK(budget > 0.0);
}

TEST_CASE("simulate schedule and observers") {
    GasModel gas;
    const Grid1D grid = make_grid(10.0, 101);
    const SimState init = constant_state(grid, 1.0, 0.0, 1.0);
    StepConfig cfg;

    // t_end = 0: exactly the initial record
    const Trajectory t0 = simulate(init, cfg, gas, 0.0);
    CHECK(t0.snapshots.size() == 1);

    // no observers: endpoints only
    const Trajectory te = simulate(init, cfg, gas, 5.0);
    CHECK(te.snapshots.size() == 2);
    CHECK(te.snapshots.back().t == doctest::Approx(5.0));

    // with an observer: geometric schedule
    int count = 0;
    std::vector<Observer> obs{[&](const SimState&) { ++count; }};
    const Trajectory ts = simulate(init, cfg, gas, 5.0, obs, 1.1);
    CHECK(static_cast<size_t>(count) == ts.snapshots.size());
    // thresholds 1.1^k - 1 up to 5 plus the initial and final records
    CHECK(count >= 15);
    CHECK(count <= 25);
}

TEST_CASE("conservation audit") {
    GasModel gas;

    // constant state: zero drift to round-off
    {
        const Grid1D grid = make_grid(10.0, 101);
        const SimState init = constant_state(grid, 1.0, 0.0, 1.0);
        StepConfig cfg;
        std::vector<Observer> obs{[](const SimState&) {}};
        const Trajectory traj = simulate(init, cfg, gas, 2.0, obs);
        const ConservationDrift d = conservation_audit(traj, gas);
        for (double x : d.max_rel_drift) CHECK(x <= 1e-14);
    }

    // perturbed contact-wave run: drift at round-off level for the flux-form scheme,
    // at dt and at dt/2 (the scheme conserves exactly, so there is no O(dt) tail for
    // halving to shrink; both sit on the floor)
    {
        const EndStates ends = make_end_states(gas, 1.0, 1.1, 1.0);
        const ProfileTable prof = solve_profile(gas, ends, 12.0, 2049);
        const Grid1D grid = make_grid(60.0, 1025);
        const ContactWave cw0 = contact_wave(prof, gas, ends, grid, 0.0);
        PerturbationSpec spec;
        spec.shape = BumpShape::BumpDerivative;
        spec.eps_v = spec.eps_u = spec.eps_theta = 0.01;
        const SimState init = initial_data(cw0, spec, grid, gas);
        std::vector<Observer> obs{[](const SimState&) {}};
        for (double halve : {1.0, 0.5}) {
            StepConfig cfg;
            cfg.dt = halve * cfg.cfl_max * grid.dx / max_char_speed(init, gas);
            const Trajectory traj = simulate(init, cfg, gas, 20.0, obs);
            const ConservationDrift d = conservation_audit(traj, gas);
            for (double x : d.max_rel_drift) CHECK(x <= 1e-10);
        }
    }
}

TEST_CASE("norm refinement order >= 1.8 at t = 10") {
    GasModel gas;
    const EndStates ends = make_end_states(gas, 1.0, 1.1, 1.0);
    const ProfileTable prof = solve_profile(gas, ends, 12.0, 4097);

    auto norm_at_10 = [&](int n) {
        const Grid1D grid = make_grid(60.0, n);
        const ContactWave cw0 = contact_wave(prof, gas, ends, grid, 0.0);
        PerturbationSpec spec;
        spec.shape = BumpShape::BumpDerivative;
        spec.eps_v = spec.eps_u = spec.eps_theta = 0.01;
        const SimState init = initial_data(cw0, spec, grid, gas);
        StepConfig cfg;
        cfg.dt = cfg.cfl_max * grid.dx / max_char_speed(init, gas);
        const Trajectory traj = simulate(init, cfg, gas, 10.0);
        const SimState& s = traj.snapshots.back();
        const ContactWave cwT = contact_wave(prof, gas, ends, grid, s.t);
        Field dv = s.v - cwT.v_bar, du = s.u - cwT.u_bar, dth = s.theta - cwT.theta_bar;
        return std::sqrt(norms(dv).l2 * norms(dv).l2 + norms(du).l2 * norms(du).l2 +
                         norms(dth).l2 * norms(dth).l2);
    };
    const double y1 = norm_at_10(513);
    const double y2 = norm_at_10(1025);
    const double y3 = norm_at_10(2049);
    const double order = std::log2(std::fabs(y1 - y2) / std::fabs(y2 - y3));
    INFO("norms ", y1, " ", y2, " ", y3, " order ", order);
    CHECK(order >= 1.8);
}

TEST_CASE("checkpoint round trip") {
    GasModel gas;
    const Grid1D grid = make_grid(12.0, 64);
    SimState s = constant_state(grid, 1.1, 0.2, 0.9);
    auto rg = testsup::rng(17);
    for (int i = 0; i < grid.n_nodes; ++i) s.v[i] += 0.01 * testsup::uniform(rg, -1, 1);
    s.t = 3.25;

    const std::string path = (std::filesystem::temp_directory_path() / "cwsim_ckpt.bin").string();
    write_checkpoint(path, s);
    const CheckpointData d = read_checkpoint(path);
    CHECK(d.t == s.t);
    CHECK(d.n == 64);
    CHECK(d.L == 12.0);
    const SimState r = state_from_checkpoint(d, grid);
    for (int i = 0; i < grid.n_nodes; ++i) {
        CHECK(r.v[i] == s.v[i]);
        CHECK(r.u[i] == s.u[i]);
        CHECK(r.theta[i] == s.theta[i]);
    }
    std::filesystem::remove(path);
}

TEST_CASE("long desk simulation completes with >= 80 ledger rows") {
    GasModel gas;
    const EndStates ends = make_end_states(gas, 1.0, 1.1, 1.0);
    const ProfileTable prof = solve_profile(gas, ends, 12.0, 4097);
    const Grid1D grid = make_grid(400.0, 8192);
    const ContactWave cw0 = contact_wave(prof, gas, ends, grid, 0.0);
    PerturbationSpec spec;
    spec.eps_v = spec.eps_u = spec.eps_theta = 0.01;
    const SimState init = initial_data(cw0, spec, grid, gas);
    StepConfig cfg;
    int rows = 0;
    std::vector<Observer> obs{[&](const SimState&) { ++rows; }};
    const Trajectory traj = simulate(init, cfg, gas, 2000.0, obs);
    CHECK(rows >= 80);
    CHECK(traj.snapshots.back().t == doctest::Approx(2000.0));
}

TEST_CASE("initial_data rejects positivity violations") {
    GasModel gas;
    const EndStates ends = make_end_states(gas, 1.0, 1.1, 1.0);
    const ProfileTable prof = solve_profile(gas, ends, 12.0, 1025);
    const Grid1D grid = make_grid(60.0, 601);
    const ContactWave cw = contact_wave(prof, gas, ends, grid, 0.0);
    PerturbationSpec spec;
    spec.eps_v = -30.0;  // swallows the volume at the bump peak
    CHECK_THROWS_AS(initial_data(cw, spec, grid, gas), std::invalid_argument);
}

TEST_CASE("conservation audit needs at least two snapshots") {
    GasModel gas;
    Trajectory traj;
    CHECK_THROWS_AS(conservation_audit(traj, gas), std::invalid_argument);
}
