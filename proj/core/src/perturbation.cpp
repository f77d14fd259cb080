#include "cwsim/perturbation.hpp"

#include <cmath>
#include <string>

#include "cwsim/errors.hpp"

namespace cwsim {

namespace {

struct BaseView {
    const Field *v, *u, *theta, *u_x, *u_t, *theta_x, *p;
    const Field* R2_src;  // Rt2 or R1 (what enters Q1)
    const Field* R3_src;  // Rt3 or R2 (what enters Q2)
    const Field* R1_phi;  // Rt1 or nullptr (source of the Phi equation)
};

PerturbationSet fields_impl(const SimState& s, const BaseView& b, PerturbationMode mode,
                            const GasModel& gas, double tol_mass) {
    const Grid1D& grid = *s.v.grid;
    if (b.v->grid != &grid)
        throw std::invalid_argument("perturbation_fields: base and state on different grids");
    const double g1 = gas.gamma - 1.0;

    PerturbationSet p;
    p.mode = mode;
    p.t = s.t;
    p.phi = s.v - *b.v;
    p.psi = s.u - *b.u;
    p.zeta = s.theta - *b.theta;
    p.Phi = antiderivative_from_left(p.phi);
    p.Psi = antiderivative_from_left(p.psi);

    // e + u^2/2 - e_base - u_base^2/2, grouped so equal states give exact zeros
    Field energy_diff(grid);
    for (int i = 0; i < grid.n_nodes; ++i)
        energy_diff[i] = gas.R * p.zeta[i] / g1 + 0.5 * p.psi[i] * (s.u[i] + (*b.u)[i]);
    p.Wbar = antiderivative_from_left(energy_diff);

    p.W = Field(grid);
    p.Y = Field(grid);
    for (int i = 0; i < grid.n_nodes; ++i) {
        p.W[i] = g1 / gas.R * (p.Wbar[i] - (*b.u)[i] * p.Psi[i]);
        p.Y[i] = g1 / gas.R * (0.5 * p.psi[i] * p.psi[i] - (*b.u_x)[i] * p.Psi[i]);
    }

    const int n = grid.n_nodes;
    p.end_Phi = p.Phi[n - 1];
    p.end_Psi = p.Psi[n - 1];
    p.end_Wbar = p.Wbar[n - 1];
    const double worst =
        std::max({std::fabs(p.end_Phi), std::fabs(p.end_Psi), std::fabs(p.end_Wbar)});
    if (worst > tol_mass)
        throw MassLeakError("perturbation_fields: right-end anti-derivative " +
                            std::to_string(worst) + " exceeds tol_mass " +
                            std::to_string(tol_mass));
    ensure_finite(p.phi, "phi");
    ensure_finite(p.zeta, "zeta");
    return p;
}

PertSources sources_impl(const SimState& s, const BaseView& b, const PerturbationSet& pert,
                         const GasModel& gas) {
    const Grid1D& grid = *s.v.grid;
    PertSources out;
    out.Q1 = Field(grid);
    out.Q2 = Field(grid);
    out.J1 = Field(grid);
    out.J2 = Field(grid);
    out.S1 = Field(grid);

    const Field u_x = derivative(s.u, 1);
    const Field theta_x = derivative(s.theta, 1);
    const Field Y_x = derivative(pert.Y, 1);

    // p_plus from the far right state of the base
    const int n = grid.n_nodes;
    const double p_plus = gas.pressure((*b.v)[n - 1], (*b.theta)[n - 1]);

    for (int i = 0; i < n; ++i) {
        const double vb = (*b.v)[i];
        const double pb = (*b.p)[i];
        const double pv = gas.pressure(s.v[i], s.theta[i]);
        const double J1 = (pb - p_plus) / vb * pert.phi[i] -
                          (pv - pb + pb / vb * pert.phi[i] - gas.R / vb * pert.zeta[i]);
        const double J2 = (p_plus - pv) * pert.psi[i];
        out.J1[i] = J1;
        out.J2[i] = J2;
        out.Q1[i] = (gas.mu / s.v[i] - gas.mu / vb) * u_x[i] + J1 +
                    gas.R / vb * pert.Y[i] - (*b.R2_src)[i];
        out.Q2[i] = (gas.kappa / s.v[i] - gas.kappa / vb) * theta_x[i] +
                    gas.mu * u_x[i] / s.v[i] * pert.psi[i] - (*b.R3_src)[i] -
                    (*b.u_t)[i] * pert.Psi[i] + (*b.u)[i] * (*b.R2_src)[i] + J2 -
                    gas.kappa / vb * Y_x[i];
        out.S1[i] = b.R1_phi ? -(*b.R1_phi)[i] : 0.0;
    }
    return out;
}

}  // namespace

PerturbationSet perturbation_fields(const SimState& s, const WaveEnsemble& base,
                                    const GasModel& gas, double tol_mass) {
    const BaseView b{&base.v_tilde, &base.u_tilde,  &base.theta_tilde,
                     &base.u_tilde_x, &base.u_tilde_t, &base.theta_tilde_x,
                     &base.p_tilde, &base.residuals.Rt2, &base.residuals.Rt3,
                     &base.residuals.Rt1};
    return fields_impl(s, b, PerturbationMode::NonzeroMass, gas, tol_mass);
}

PerturbationSet perturbation_fields(const SimState& s, const ContactWave& base,
                                    const GasModel& gas, double tol_mass) {
    const BaseView b{&base.v_bar, &base.u_bar, &base.theta_bar, &base.u_bar_x,
                     &base.u_bar_t, &base.theta_bar_x, &base.p_bar, nullptr, nullptr, nullptr};
    return fields_impl(s, b, PerturbationMode::ZeroMass, gas, tol_mass);
}

PertSources perturbation_sources(const SimState& s, const WaveEnsemble& base,
                                 const PerturbationSet& pert, const GasModel& gas) {
    const BaseView b{&base.v_tilde, &base.u_tilde,  &base.theta_tilde,
                     &base.u_tilde_x, &base.u_tilde_t, &base.theta_tilde_x,
                     &base.p_tilde, &base.residuals.Rt2, &base.residuals.Rt3,
                     &base.residuals.Rt1};
    return sources_impl(s, b, pert, gas);
}

PertSources perturbation_sources(const SimState& s, const ContactWave& base,
                                 const PerturbationSet& pert, const GasModel& gas) {
    const ContactResiduals res = contact_residuals(base, gas);
    // keep the residual fields alive for the duration of the computation
    BaseView b{&base.v_bar, &base.u_bar, &base.theta_bar, &base.u_bar_x,
               &base.u_bar_t, &base.theta_bar_x, &base.p_bar, &res.R1, &res.R2, nullptr};
    return sources_impl(s, b, pert, gas);
}

}  // namespace cwsim
