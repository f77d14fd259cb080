#pragma once
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "cwsim/diagonal.hpp"
#include "cwsim/profile.hpp"

namespace cwsim {

// One evaluation of the weighted-energy machinery. The weight is v1^(s n) with
// v1 = theta_hat/theta_plus, s = sign(theta_plus - theta_minus) and
// n = floor(delta^{-1/2}) + 1; at delta = 0 the weight degenerates to 1 (n = 0) and
// the fallback flag is set.
struct WeightedEnergies {
    std::array<double, 3> E_tilde{}, K_tilde{}, G{}, K{};
    std::array<double, 3> phi_quad{};   // integral of (mu/2 v_base)|d^i phi|^2 - d^i phi d^i Psi
    std::array<double, 3> dom_target{}; // integral of sum |d^i b_j|^2 + |d^i phi|^2
    double a1_min = 0.0, a3_min = 0.0;  // pointwise minima of the absorption weights
    int n_weight = 0;
    int s_sign = 0;
    bool delta_zero_fallback = false;

    // E_i assembled from the recorded pieces once the constants are chosen
    double E_i(int i, double C_bar, double C_hat) const {
        return C_bar * E_tilde[static_cast<size_t>(i)] + C_hat * phi_quad[static_cast<size_t>(i)];
    }
};

// v_base is the volume coefficient of the phi_quad integrals: the ansatz volume in
// nonzero-mass mode, the contact-wave volume in zero-mass mode. use_tilde_frame
// recomputes the frame coefficients from v_base instead of v_bar (alternative
// bookkeeping, off by default).
WeightedEnergies weighted_energies(const DiagonalFrame& frame, const PerturbationSet& pert,
                                   const ContactWave& cw, const EndStates& ends,
                                   const GasModel& gas, const Field& v_base);

int weight_exponent(double delta);  // floor(delta^{-1/2}) + 1, 0 at delta == 0

// Ledger of per-time diagnostics. Columns are fixed and written with a named header.
struct EnergyLedgerRow {
    double t = 0.0;
    double l2_pert = 0.0, l2_dpert = 0.0, linf_pert = 0.0, h1_pert = 0.0;
    double l2_anti = 0.0, linf_anti = 0.0;
    double end_Phi = 0.0, end_Psi = 0.0, end_Wbar = 0.0;
    double zeta_identity_resid = 0.0;
    WeightedEnergies we;
    std::array<double, 3> E_i{};  // filled after the constant search
    double apa_term = 0.0;        // the a-priori bracket evaluated at this time
    // zero-mass extras (0 when unused)
    double w_l2_anti = 0.0;
    double poin_lhs = 0.0, poin_rhs = 0.0, poin_ratio = 0.0;
    double heat_lhs = 0.0, heat_rhs = 0.0, heat_ratio = 0.0;
};

struct EnergyLedger {
    std::vector<EnergyLedgerRow> rows;
    // constants of the E_i assembly, chosen by the positivity search
    std::array<double, 3> C_bar{};
    std::array<double, 3> C_hat{};
    std::string mode_name;

    void write_tsv(std::ostream& os) const;
};

// Chooses C_hat = 2 and per-order C_bar >= 8 C_hat (1 + 1/min(mu/v_base)) as the
// smallest grid value making E_i >= dom_target at every recorded row, then fills the
// E_i columns. Returns false if the search hit its cap without succeeding.
bool assemble_combined_energies(EnergyLedger& ledger, double mu_over_v_min);

}  // namespace cwsim
