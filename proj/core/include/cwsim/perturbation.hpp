#pragma once
#include "cwsim/ansatz.hpp"
#include "cwsim/ns_solver.hpp"

namespace cwsim {

enum class PerturbationMode { NonzeroMass, ZeroMass };

// Perturbation against the ansatz (nonzero-mass) or the bare contact wave
// (zero-mass), its anti-derivatives and the diffusive variables
//   W = (g-1)/R (Wbar - u_base Psi),  zeta = W_x - Y,
//   Y = (g-1)/R (psi^2/2 - u_base_x Psi).
struct PerturbationSet {
    PerturbationMode mode = PerturbationMode::NonzeroMass;
    double t = 0.0;
    Field phi, psi, zeta;
    Field Phi, Psi, Wbar, W, Y;
    double end_Phi = 0.0, end_Psi = 0.0, end_Wbar = 0.0;  // right-end anti-derivative values
};

// tol_mass bounds the admissible right-end anti-derivative values; beyond it the mode
// does not represent the data and a MassLeakError is thrown.
PerturbationSet perturbation_fields(const SimState& s, const WaveEnsemble& base,
                                    const GasModel& gas, double tol_mass = 1e-6);
PerturbationSet perturbation_fields(const SimState& s, const ContactWave& base,
                                    const GasModel& gas, double tol_mass = 1e-6);

// Right-hand sides of the linearized integrated system; exact fields, used to verify
// that (Phi, Psi, W) satisfies it up to discretization error.
struct PertSources {
    Field Q1, Q2, J1, J2;
    Field S1;  // source of the Phi equation: -Rt1 (nonzero-mass), 0 (zero-mass)
};

PertSources perturbation_sources(const SimState& s, const WaveEnsemble& base,
                                 const PerturbationSet& pert, const GasModel& gas);
PertSources perturbation_sources(const SimState& s, const ContactWave& base,
                                 const PerturbationSet& pert, const GasModel& gas);

}  // namespace cwsim
