#include "cwsim/contact_wave.hpp"

namespace cwsim {

ContactPoint contact_point(const ProfileTable& prof, const GasModel& gas,
                           const EndStates& ends, double x, double t) {
    const ProfileSample s = sample_profile(prof, x, t);
    const double g1 = gas.gamma - 1.0;
    const double b = gas.kappa * g1 / (gas.gamma * gas.R);  // velocity coefficient
    const double p_plus = ends.p_plus(gas);

    ContactPoint cp;
    cp.theta_hat = s.theta;
    cp.theta_hat_x = s.theta_x;
    cp.v = gas.R * s.theta / p_plus;
    cp.v_x = gas.R * s.theta_x / p_plus;
    cp.u = ends.u_minus + b * s.theta_x / s.theta;
    cp.u_x = b * (s.theta_xx / s.theta - s.theta_x * s.theta_x / (s.theta * s.theta));
    cp.u_t = b * (s.theta_xt / s.theta - s.theta_x * s.theta_t / (s.theta * s.theta));
    cp.theta = s.theta - 0.5 * g1 / gas.R * cp.u * cp.u;
    cp.theta_x = s.theta_x - g1 / gas.R * cp.u * cp.u_x;
    cp.p = gas.R * cp.theta / cp.v;
    cp.E = gas.R * cp.theta / g1 - 0.5 * cp.u * cp.u;
    return cp;
}

ContactWave contact_wave(const ProfileTable& prof, const GasModel& gas,
                         const EndStates& ends, const Grid1D& grid, double t) {
    ContactWave cw;
    cw.t = t;
    cw.p_plus = ends.p_plus(gas);
    cw.v_bar = Field(grid);
    cw.u_bar = Field(grid);
    cw.theta_bar = Field(grid);
    cw.p_bar = Field(grid);
    cw.E_bar = Field(grid);
    cw.v_bar_x = Field(grid);
    cw.u_bar_x = Field(grid);
    cw.theta_bar_x = Field(grid);
    cw.u_bar_t = Field(grid);
    cw.theta_hat = Field(grid);
    cw.theta_hat_x = Field(grid);
    for (int i = 0; i < grid.n_nodes; ++i) {
        const ContactPoint cp = contact_point(prof, gas, ends, grid.x[static_cast<size_t>(i)], t);
        cw.v_bar[i] = cp.v;
        cw.u_bar[i] = cp.u;
        cw.theta_bar[i] = cp.theta;
        cw.p_bar[i] = cp.p;
        cw.E_bar[i] = cp.E;
        cw.v_bar_x[i] = cp.v_x;
        cw.u_bar_x[i] = cp.u_x;
        cw.theta_bar_x[i] = cp.theta_x;
        cw.u_bar_t[i] = cp.u_t;
        cw.theta_hat[i] = cp.theta_hat;
        cw.theta_hat_x[i] = cp.theta_hat_x;
    }
    return cw;
}

double contact_R1(const ContactPoint& cp, const GasModel& gas, double p_plus) {
    const double b = gas.kappa * (gas.gamma - 1.0) / (gas.gamma * gas.R);
    return (b - gas.mu) * cp.u_x / cp.v + (cp.p - p_plus);
}

double contact_R2(const ContactPoint& cp, const GasModel& gas, double p_plus) {
    const double b = gas.kappa * (gas.gamma - 1.0) / (gas.gamma * gas.R);
    return (b - gas.mu) * cp.u * cp.u_x / cp.v + (cp.p - p_plus) * cp.u;
}

ContactResiduals contact_residuals(const ContactWave& cw, const GasModel& gas) {
    const Grid1D& grid = *cw.v_bar.grid;
    ContactResiduals r;
    r.R1 = Field(grid);
    r.R2 = Field(grid);
    const double b = gas.kappa * (gas.gamma - 1.0) / (gas.gamma * gas.R);
    for (int i = 0; i < grid.n_nodes; ++i) {
        const double visc = (b - gas.mu) * cw.u_bar_x[i] / cw.v_bar[i];
        const double dp = cw.p_bar[i] - cw.p_plus;
        r.R1[i] = visc + dp;
        r.R2[i] = visc * cw.u_bar[i] + dp * cw.u_bar[i];
    }
    return r;
}

}  // namespace cwsim
