#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "cwsim/config.hpp"
#include "cwsim/decay_fit.hpp"
#include "cwsim/heat_kernel.hpp"
#include "cwsim/mass.hpp"

namespace cwsim {

struct IdentityCheck {
    std::string name;
    double worst = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// Algebraic identity suite over randomized states: eigenvector duality, the
// diagonalization of A1, the closed-form viscosity-matrix entries, and the
// dissipation sum of squares.
std::vector<IdentityCheck> identity_suite(std::uint64_t seed = 20240801, int n_states = 1000);

struct ExperimentResult {
    int exit_code = 0;  // 0 pass/inconclusive, 1 verdict fail, 3 solver failure
    EnergyLedger ledger;
    TheoremReport theorem;
    PoincareReport poincare;
    MassDecomposition decomposition;
    GaussianBoundFit envelope;
    double alpha_used = 0.0;
    double N_apriori = 0.0, chi = 0.0, delta_bar = 0.0, eps_initial = 0.0;
    std::vector<std::string> warnings;
    std::string error;
};

// Full pipeline: profile solve, (nonzero-mass) decomposition and ansatz, initial
// data, simulation with diagnostics, decay fits and verdicts. Writes ledger.tsv,
// fit_report.txt, snapshots/, plotdata/ and state.bin under cfg.out_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Re-fit an existing ledger file (written by run_experiment).
EnergyLedger read_ledger_tsv(const std::string& path);

}  // namespace cwsim
