#pragma once

namespace cwsim {

// Ideal polytropic gas in Lagrangian form: p = R theta / v, e = R theta / (gamma - 1).
struct GasModel {
    double R = 1.0;        // gas constant
    double gamma = 5.0 / 3.0;
    double mu = 1.0;       // viscosity
    double kappa = 1.0;    // heat conduction
    double A_const = 1.0;  // entropy-law constant

    void validate() const;

    double pressure(double v, double theta) const { return R * theta / v; }
    double internal_energy(double theta) const { return R * theta / (gamma - 1.0); }
    // diffusion coefficient of the temperature profile equation
    double diffusion_coefficient(double p_plus) const {
        return kappa * p_plus * (gamma - 1.0) / (gamma * R * R);
    }
};

// Far-field states of a pressure-matched contact configuration: u = u_minus on both
// sides, p_minus = p_plus.
struct EndStates {
    double v_minus = 1.0;
    double v_plus = 1.0;
    double theta_minus = 1.0;
    double theta_plus = 1.0;
    double u_minus = 0.0;

    double delta() const;  // |theta_plus - theta_minus|, always recomputed
    double p_minus(const GasModel& gas) const { return gas.pressure(v_minus, theta_minus); }
    double p_plus(const GasModel& gas) const { return gas.pressure(v_plus, theta_plus); }

    // relative pressure mismatch must stay below 1e-12
    void validate(const GasModel& gas) const;
};

// Builds pressure-matched end states from temperatures and the common pressure.
EndStates make_end_states(const GasModel& gas, double theta_minus, double theta_plus,
                          double p_common, double u_minus = 0.0);

}  // namespace cwsim
