#include "cwsim/energy.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace cwsim {

int weight_exponent(double delta) {
    if (delta <= 0.0) return 0;
    return static_cast<int>(std::floor(1.0 / std::sqrt(delta))) + 1;
}

WeightedEnergies weighted_energies(const DiagonalFrame& frame, const PerturbationSet& pert,
                                   const ContactWave& cw, const EndStates& ends,
                                   const GasModel& gas, const Field& v_base) {
    const Grid1D& grid = *pert.Phi.grid;
    const int n_nodes = grid.n_nodes;
    const double g = gas.gamma, g1 = g - 1.0;
    const double delta = ends.delta();

    WeightedEnergies out;
    out.n_weight = weight_exponent(delta);
    out.s_sign = (ends.theta_plus > ends.theta_minus) ? 1 : (ends.theta_plus < ends.theta_minus ? -1 : 0);
    out.delta_zero_fallback = (delta == 0.0);
    const double sn = static_cast<double>(out.s_sign * out.n_weight);

    // weights and absorption coefficients
    std::vector<double> w1(static_cast<size_t>(n_nodes)), w3(static_cast<size_t>(n_nodes)),
        a1(static_cast<size_t>(n_nodes)), a3(static_cast<size_t>(n_nodes));
    for (int i = 0; i < n_nodes; ++i) {
        const double v1 = cw.theta_hat[i] / ends.theta_plus;
        const double v1x = cw.theta_hat_x[i] / ends.theta_plus;
        const double l3 = frame.lambda3[i];
        const double l3x = -0.5 * l3 * cw.v_bar_x[i] / cw.v_bar[i];
        const double l1 = -l3, l1x = -l3x;
        const double w1i = std::pow(v1, sn);
        const double w3i = std::pow(v1, -sn);
        const double w1x = sn * std::pow(v1, sn - 1.0) * v1x;
        const double w3x = -sn * std::pow(v1, -sn - 1.0) * v1x;
        w1[static_cast<size_t>(i)] = w1i;
        w3[static_cast<size_t>(i)] = w3i;
        a1[static_cast<size_t>(i)] = -0.5 * (w1x * l1 + w1i * l1x);
        a3[static_cast<size_t>(i)] = -0.5 * (w3x * l3 + w3i * l3x);
    }
    out.a1_min = a1[0];
    out.a3_min = a3[0];
    for (int i = 1; i < n_nodes; ++i) {
        out.a1_min = std::min(out.a1_min, a1[static_cast<size_t>(i)]);
        out.a3_min = std::min(out.a3_min, a3[static_cast<size_t>(i)]);
    }

    const double h = grid.dx;
    auto integrate = [&](auto&& f) {
        double s = 0.5 * (f(0) + f(n_nodes - 1));
        for (int i = 1; i < n_nodes - 1; ++i) s += f(i);
        return s * h;
    };

    for (int k = 0; k < 3; ++k) {
        const auto& bk = frame.dB[static_cast<size_t>(k)];
        const auto& bk1 = frame.dB[static_cast<size_t>(k + 1)];
        out.E_tilde[static_cast<size_t>(k)] = integrate([&](int i) {
            return 0.5 * (w1[static_cast<size_t>(i)] * bk[0][i] * bk[0][i] + bk[1][i] * bk[1][i] +
                          w3[static_cast<size_t>(i)] * bk[2][i] * bk[2][i]);
        });
        out.K_tilde[static_cast<size_t>(k)] = integrate([&](int i) {
            const double z1 = bk1[0][i], z2 = bk1[1][i], z3 = bk1[2][i];
            const double br1 = std::sqrt(g1 / (2.0 * g)) * (z1 + z3) + z2 / std::sqrt(g);
            const double br2 = (z3 - z1) / std::sqrt(2.0);
            return gas.kappa * g1 / (gas.R * cw.v_bar[i]) * br1 * br1 +
                   gas.mu / cw.v_bar[i] * br2 * br2;
        });
        out.G[static_cast<size_t>(k)] = integrate([&](int i) {
            return a1[static_cast<size_t>(i)] * bk[0][i] * bk[0][i] +
                   a3[static_cast<size_t>(i)] * bk[2][i] * bk[2][i];
        });
        out.K[static_cast<size_t>(k)] = integrate([&](int i) {
            return bk1[0][i] * bk1[0][i] + bk1[1][i] * bk1[1][i] + bk1[2][i] * bk1[2][i];
        });
    }

    // phi-side integrals: d^i phi and d^i Psi, i = 0,1,2
    const Field phi_x = derivative(pert.phi, 1);
    const Field phi_xx = derivative(pert.phi, 2);
    const Field psi_x = derivative(pert.psi, 1);
    const Field* dphi[3] = {&pert.phi, &phi_x, &phi_xx};
    const Field* dPsi[3] = {&pert.Psi, &pert.psi, &psi_x};
    for (int i = 0; i < 3; ++i) {
        out.phi_quad[static_cast<size_t>(i)] = integrate([&](int j) {
            const double ph = (*dphi[i])[j];
            return 0.5 * gas.mu / v_base[j] * ph * ph - ph * (*dPsi[i])[j];
        });
        const auto& bi = frame.dB[static_cast<size_t>(i)];
        out.dom_target[static_cast<size_t>(i)] = integrate([&](int j) {
            const double ph = (*dphi[i])[j];
            return bi[0][j] * bi[0][j] + bi[1][j] * bi[1][j] + bi[2][j] * bi[2][j] + ph * ph;
        });
    }
    return out;
}

bool assemble_combined_energies(EnergyLedger& ledger, double mu_over_v_min) {
    const double C_hat = 2.0;
    const double floor_C = 8.0 * C_hat * (1.0 + 1.0 / mu_over_v_min);
    bool all_ok = true;
    for (int i = 0; i < 3; ++i) {
        double C_bar = floor_C;
        bool ok = false;
        for (int it = 0; it < 80 && !ok; ++it) {
            ok = true;
            for (const auto& row : ledger.rows) {
                const double Ei = C_bar * row.we.E_tilde[static_cast<size_t>(i)] +
                                  C_hat * row.we.phi_quad[static_cast<size_t>(i)];
                if (Ei < row.we.dom_target[static_cast<size_t>(i)]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) C_bar *= 1.25;
        }
        ledger.C_bar[static_cast<size_t>(i)] = C_bar;
        ledger.C_hat[static_cast<size_t>(i)] = C_hat;
        all_ok = all_ok && ok;
    }
    for (auto& row : ledger.rows)
        for (int i = 0; i < 3; ++i)
            row.E_i[static_cast<size_t>(i)] =
                row.we.E_i(i, ledger.C_bar[static_cast<size_t>(i)], ledger.C_hat[static_cast<size_t>(i)]);
    return all_ok;
}

void EnergyLedger::write_tsv(std::ostream& os) const {
    os << "# mode=" << mode_name;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  " C_bar=%.17g,%.17g,%.17g C_hat=%.17g,%.17g,%.17g\n", C_bar[0], C_bar[1],
                  C_bar[2], C_hat[0], C_hat[1], C_hat[2]);
    os << buf;
    os << "t\tl2_pert\tl2_dpert\tlinf_pert\th1_pert\tl2_anti\tlinf_anti"
       << "\tend_Phi\tend_Psi\tend_Wbar\tzeta_resid"
       << "\tEt0\tEt1\tEt2\tKt0\tKt1\tKt2\tG0\tG1\tG2\tK0\tK1\tK2"
       << "\tphiq0\tphiq1\tphiq2\tdom0\tdom1\tdom2\tE0\tE1\tE2"
       << "\ta1_min\ta3_min\tn_weight\tapa_term"
       << "\tw_l2_anti\tpoin_lhs\tpoin_rhs\tpoin_ratio\theat_lhs\theat_rhs\theat_ratio\n";
    for (const auto& r : rows) {
        const double cols[] = {r.t, r.l2_pert, r.l2_dpert, r.linf_pert, r.h1_pert, r.l2_anti,
                               r.linf_anti, r.end_Phi, r.end_Psi, r.end_Wbar,
                               r.zeta_identity_resid, r.we.E_tilde[0], r.we.E_tilde[1],
                               r.we.E_tilde[2], r.we.K_tilde[0], r.we.K_tilde[1], r.we.K_tilde[2],
                               r.we.G[0], r.we.G[1], r.we.G[2], r.we.K[0], r.we.K[1], r.we.K[2],
                               r.we.phi_quad[0], r.we.phi_quad[1], r.we.phi_quad[2],
                               r.we.dom_target[0], r.we.dom_target[1], r.we.dom_target[2],
                               r.E_i[0], r.E_i[1], r.E_i[2], r.we.a1_min, r.we.a3_min,
                               static_cast<double>(r.we.n_weight), r.apa_term, r.w_l2_anti,
                               r.poin_lhs, r.poin_rhs, r.poin_ratio, r.heat_lhs, r.heat_rhs,
                               r.heat_ratio};
        const size_t n_cols = sizeof(cols) / sizeof(cols[0]);
        for (size_t c = 0; c < n_cols; ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", cols[c]);
            os << buf << (c + 1 < n_cols ? '\t' : '\n');
        }
    }
}

}  // namespace cwsim
