#include <benchmark/benchmark.h>

#include "cwsim/decay_fit.hpp"
#include "cwsim/diagonal.hpp"
#include "cwsim/ns_solver.hpp"
#include "cwsim/profile.hpp"

using namespace cwsim;

namespace {

struct Fixture {
    GasModel gas;
    EndStates ends;
    ProfileTable prof;
    Grid1D grid;
    SimState state;
    StepConfig cfg;

    Fixture() {
        ends = make_end_states(gas, 1.0, 1.1, 1.0);
        prof = solve_profile(gas, ends);
        grid = make_grid(400.0, 8192);
        const ContactWave cw = contact_wave(prof, gas, ends, grid, 0.0);
        PerturbationSpec spec;
        spec.shape = BumpShape::BumpDerivative;  // zero-mass data, usable against cw
        spec.eps_v = spec.eps_u = spec.eps_theta = 0.01;
        state = initial_data(cw, spec, grid, gas);
        cfg.dt = cfg.cfl_max * grid.dx / max_char_speed(state, gas);
    }
};

Fixture& fixture() {
    static Fixture f;
    return f;
}

void bm_profile_solve(benchmark::State& s) {
    Fixture& f = fixture();
    for (auto _ : s) {
        ProfileTable p = solve_profile(f.gas, f.ends, 12.0, 2049);
        benchmark::DoNotOptimize(p.theta_hat.data());
    }
}
BENCHMARK(bm_profile_solve);

void bm_step_8192(benchmark::State& s) {
    Fixture& f = fixture();
    for (auto _ : s) {
        SimState next = step(f.state, f.cfg, f.gas);
        benchmark::DoNotOptimize(next.v.v.data());
    }
}
BENCHMARK(bm_step_8192);

void bm_diagnostics_8192(benchmark::State& s) {
    Fixture& f = fixture();
    const ContactWave cw = contact_wave(f.prof, f.gas, f.ends, f.grid, 0.0);
    const PerturbationSet pert = perturbation_fields(f.state, cw, f.gas);
    for (auto _ : s) {
        const DiagonalFrame frame = diagonal_frame(pert, cw, f.gas);
        const WeightedEnergies we =
            weighted_energies(frame, pert, cw, f.ends, f.gas, cw.v_bar);
        benchmark::DoNotOptimize(&we);
    }
}
BENCHMARK(bm_diagnostics_8192);

void bm_fit_power(benchmark::State& s) {
    std::vector<double> t, y;
    for (int i = 0; i < 200; ++i) {
        const double ti = 10.0 * std::pow(1.05, i);
        t.push_back(ti);
        y.push_back(std::pow(1.0 + ti, -0.5));
    }
    for (auto _ : s) {
        DecayFit f = fit_power(t, y, t.front(), t.back());
        benchmark::DoNotOptimize(&f);
    }
}
BENCHMARK(bm_fit_power);

}  // namespace

BENCHMARK_MAIN();
