#pragma once
#include <vector>

#include "cwsim/contact_wave.hpp"
#include "cwsim/diffusion_wave.hpp"
#include "cwsim/mass.hpp"

namespace cwsim {

// Contact wave plus mass-carrying diffusion waves, with the residual fields of the
// approximate system it satisfies. Everything is analytic in (x,t).
struct AnsatzPoint {
    double v = 0.0, u = 0.0, theta = 0.0, e = 0.0, p = 0.0;
    double v_x = 0.0, u_x = 0.0, theta_x = 0.0;
    double u_t = 0.0;
    double R1 = 0.0, R2 = 0.0;        // contact-wave residuals
    double Rt1 = 0.0, Rt2 = 0.0, Rt3 = 0.0;  // ansatz residuals
};

AnsatzPoint ansatz_point(const ProfileTable& prof, const GasModel& gas, const EndStates& ends,
                         const MassDecomposition& coeffs, double x, double t);

struct ResidualFields {
    Field R1, R2;
    Field Rt1, Rt2, Rt3;
    double envelope_c = 0.0;  // rate used in the three-Gaussian comparison envelope
};

struct WaveEnsemble {
    double t = 0.0;
    ContactWave contact;
    DiffusionWaves waves;
    MassDecomposition coeffs;
    Field v_tilde, u_tilde, theta_tilde, e_tilde, p_tilde;
    Field v_tilde_x, u_tilde_x, theta_tilde_x, u_tilde_t;
    ResidualFields residuals;
};

// Assembles the ansatz on the contact wave's grid; theta_bar_2 is not applied (the
// translation is normalized away), so callers should keep it at round-off size.
// Throws InvalidState when v_tilde or theta_tilde loses positivity.
WaveEnsemble build_ansatz(const ProfileTable& prof, const GasModel& gas, const EndStates& ends,
                          const MassDecomposition& coeffs, const Grid1D& grid, double t);

// sup over an (x,t) lattice of |Rt_i| (1+t) / (three-Gaussian envelope), per component,
// together with the fitted rate c and the bound constant relative to
// delta + theta_bar_1^2 + theta_bar_3^2.
struct EnvelopeReport {
    double c = 0.0;
    std::array<double, 3> sup_ratio{};  // per residual component
    std::vector<double> times;
    std::vector<std::array<double, 3>> ratio_at_time;
    double scale = 0.0;      // delta + tb1^2 + tb3^2
    double fitted_C = 0.0;   // max ratio / scale
};

EnvelopeReport ansatz_envelope_report(const ProfileTable& prof, const GasModel& gas,
                                      const EndStates& ends, const MassDecomposition& coeffs,
                                      const std::vector<double>& times, int points_per_time = 2001);

// Plain-text columns (x, v_bar, u_bar, theta_bar, v~, u~, theta~, Rt1, Rt2, Rt3).
void dump_wave_snapshot(const WaveEnsemble& we, std::ostream& os);

}  // namespace cwsim
