#pragma once
#include "cwsim/field_ops.hpp"
#include "cwsim/gas.hpp"
#include "cwsim/grid.hpp"
#include "cwsim/profile.hpp"

namespace cwsim {

// Pointwise contact-wave sample with the derivatives needed by the residual and
// energy computations; everything comes from the profile table by the chain rule.
struct ContactPoint {
    double v = 0.0, u = 0.0, theta = 0.0, p = 0.0, E = 0.0;
    double v_x = 0.0, u_x = 0.0, theta_x = 0.0;
    double u_t = 0.0;
    double theta_hat = 0.0, theta_hat_x = 0.0;
};

ContactPoint contact_point(const ProfileTable& prof, const GasModel& gas,
                           const EndStates& ends, double x, double t);

struct ContactWave {
    double t = 0.0;
    double p_plus = 0.0;
    Field v_bar, u_bar, theta_bar, p_bar, E_bar;
    Field v_bar_x, u_bar_x, theta_bar_x, u_bar_t;
    Field theta_hat, theta_hat_x;  // profile samples reused by the energy weights
};

ContactWave contact_wave(const ProfileTable& prof, const GasModel& gas,
                         const EndStates& ends, const Grid1D& grid, double t);

struct ContactResiduals {
    Field R1, R2;
};

// R1 = (kappa(gamma-1)/(gamma R) - mu) u_x / v + (p - p_plus), R2 = its momentum flux
// companion; both vanish identically when delta = 0 and mu = kappa(gamma-1)/(gamma R).
ContactResiduals contact_residuals(const ContactWave& cw, const GasModel& gas);

// Scalar versions used on arbitrary lattices.
double contact_R1(const ContactPoint& cp, const GasModel& gas, double p_plus);
double contact_R2(const ContactPoint& cp, const GasModel& gas, double p_plus);

}  // namespace cwsim
