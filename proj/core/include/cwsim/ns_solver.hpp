#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cwsim/ansatz.hpp"
#include "cwsim/contact_wave.hpp"
#include "cwsim/field_ops.hpp"
#include "cwsim/gas.hpp"
#include "cwsim/grid.hpp"

namespace cwsim {

struct SimState {
    double t = 0.0;
    Field v, u, theta;
    // pinned Dirichlet values: (v, u, theta) at each end
    std::array<double, 3> left_bc{}, right_bc{};

    Field pressure(const GasModel& gas) const;
    Field total_energy(const GasModel& gas) const;  // R theta/(gamma-1) + u^2/2
};

// Optional manufactured-solution hooks: volume/momentum/energy sources and
// time-dependent Dirichlet data.
struct SourceTerms {
    std::function<double(double x, double t)> s_v, s_u, s_E;
    std::function<std::array<double, 3>(double t)> left_bc, right_bc;
};

struct StepConfig {
    double dt = 0.0;
    double theta_scheme = 0.5;  // implicitness weight of the diffusion terms
    double cfl_max = 0.4;
    const SourceTerms* forcing = nullptr;
};

enum class BumpShape { Bump, BumpDerivative };

// Perturbation applied to the conserved components (v, u, theta + (g-1)u^2/2R), so a
// derivative-shaped bump has exactly zero excess mass in all three of them.
struct PerturbationSpec {
    BumpShape shape = BumpShape::Bump;
    double eps_v = 0.0, eps_u = 0.0, eps_theta = 0.0;
    double width = 4.0;
    double center = 0.0;

    double shape_fn(double x) const;  // normalized bump or its derivative
};

SimState initial_data(const WaveEnsemble& base, const PerturbationSpec& spec, const Grid1D& grid,
                      const GasModel& gas);
SimState initial_data(const ContactWave& base, const PerturbationSpec& spec, const Grid1D& grid,
                      const GasModel& gas);

double max_char_speed(const SimState& s, const GasModel& gas);

// One IMEX step: central explicit fluxes at the midpoint state, theta-weighted
// implicit diffusion via tridiagonal solves, v updated from the same face velocities.
// Throws StepRejected when positivity is lost.
SimState step(const SimState& s, const StepConfig& cfg, const GasModel& gas);

using Observer = std::function<void(const SimState&)>;

struct Trajectory {
    std::vector<SimState> snapshots;
    double dt_used = 0.0;
    int steps = 0;
    int rejections = 0;
};

// Advances to t_end recording on the geometric schedule t_k = (1+t0) rho^k - 1.
// dt comes from the initial CFL when cfg.dt == 0; rejected steps halve dt (at most
// 10 times over the run).
Trajectory simulate(const SimState& init, StepConfig cfg, const GasModel& gas, double t_end,
                    const std::vector<Observer>& observers = {}, double rho = 1.1);

struct ConservationDrift {
    // per conserved component: max over snapshots of
    // |I(t) - I(0) - integral of boundary flux| / max(|I(0)|, 1)
    std::array<double, 3> max_rel_drift{};
};

ConservationDrift conservation_audit(const Trajectory& traj, const GasModel& gas);

// Checkpoint layout (little-endian): magic "CWSIM1", u64 node count, f64 t, f64 L,
// then three f64 arrays v, u, theta.
void write_checkpoint(const std::string& path, const SimState& s);

struct CheckpointData {
    double t = 0.0;
    double L = 0.0;
    std::uint64_t n = 0;
    std::vector<double> v, u, theta;
};

CheckpointData read_checkpoint(const std::string& path);
SimState state_from_checkpoint(const CheckpointData& data, const Grid1D& grid);

}  // namespace cwsim
