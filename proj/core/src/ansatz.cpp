#include "cwsim/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cwsim/errors.hpp"

namespace cwsim {

namespace {

struct AnsatzWork {
    double lambda1, lambda3, p_plus, g1;
};

AnsatzPoint assemble_point(const ContactPoint& cp, const GaussianSample& w1,
                           const GaussianSample& w3, const MassDecomposition& coeffs,
                           const GasModel& gas, const AnsatzWork& wk) {
    const double tb1 = coeffs.theta_bar_1, tb3 = coeffs.theta_bar_3;
    const double l1 = wk.lambda1, l3 = wk.lambda3;
    const double g1 = wk.g1;
    const double R = gas.R;

    AnsatzPoint a;
    a.v = cp.v - tb1 * w1.value - tb3 * w3.value;
    a.v_x = cp.v_x - tb1 * w1.d_x - tb3 * w3.d_x;
    a.u = cp.u + l1 * tb1 * w1.value + l3 * tb3 * w3.value;
    a.u_x = cp.u_x + l1 * tb1 * w1.d_x + l3 * tb3 * w3.d_x;
    a.u_t = cp.u_t + l1 * tb1 * w1.d_t + l3 * tb3 * w3.d_t;
    const double gsum = tb1 * w1.value + tb3 * w3.value;
    const double gsum_x = tb1 * w1.d_x + tb3 * w3.d_x;
    a.theta = cp.theta + 0.5 * g1 / R * cp.u * cp.u + g1 / R * wk.p_plus * gsum -
              0.5 * g1 / R * a.u * a.u;
    a.theta_x = cp.theta_x + g1 / R * cp.u * cp.u_x + g1 / R * wk.p_plus * gsum_x -
                g1 / R * a.u * a.u_x;
    a.e = R * a.theta / g1;
    a.p = R * a.theta / a.v;

    a.R1 = contact_R1(cp, gas, wk.p_plus);
    a.R2 = contact_R2(cp, gas, wk.p_plus);
    a.Rt1 = -tb1 * w1.d_x - tb3 * w3.d_x;
    a.Rt2 = a.R1 + gas.mu * (cp.u_x / cp.v - a.u_x / a.v) +
            (l1 * tb1 * w1.d_x + l3 * tb3 * w3.d_x) +
            (a.p - cp.p - l1 * l1 * tb1 * w1.value - l3 * l3 * tb3 * w3.value);
    a.Rt3 = a.R2 + gas.kappa * (cp.theta_x / cp.v - a.theta_x / a.v) +
            gas.mu * (cp.u * cp.u_x / cp.v - a.u * a.u_x / a.v) +
            wk.p_plus * (tb1 * w1.d_x + tb3 * w3.d_x) +
            (a.p * a.u - cp.p * cp.u - wk.p_plus * l1 * tb1 * w1.value -
             wk.p_plus * l3 * tb3 * w3.value);
    return a;
}

}  // namespace

AnsatzPoint ansatz_point(const ProfileTable& prof, const GasModel& gas, const EndStates& ends,
                         const MassDecomposition& coeffs, double x, double t) {
    const AnsatzWork wk{lambda1_minus(ends, gas), lambda3_plus(ends, gas), ends.p_plus(gas),
                        gas.gamma - 1.0};
    const ContactPoint cp = contact_point(prof, gas, ends, x, t);
    const GaussianSample w1 = diffusion_wave_point(wk.lambda1, x, t);
    const GaussianSample w3 = diffusion_wave_point(wk.lambda3, x, t);
    return assemble_point(cp, w1, w3, coeffs, gas, wk);
}

WaveEnsemble build_ansatz(const ProfileTable& prof, const GasModel& gas, const EndStates& ends,
                          const MassDecomposition& coeffs, const Grid1D& grid, double t) {
    WaveEnsemble we;
    we.t = t;
    we.contact = contact_wave(prof, gas, ends, grid, t);
    we.waves = diffusion_waves(ends, gas, grid, t);
    we.coeffs = coeffs;
    const AnsatzWork wk{we.waves.lambda1, we.waves.lambda3, ends.p_plus(gas), gas.gamma - 1.0};

    for (Field* f : {&we.v_tilde, &we.u_tilde, &we.theta_tilde, &we.e_tilde, &we.p_tilde,
                     &we.v_tilde_x, &we.u_tilde_x, &we.theta_tilde_x, &we.u_tilde_t,
                     &we.residuals.R1, &we.residuals.R2, &we.residuals.Rt1, &we.residuals.Rt2,
                     &we.residuals.Rt3})
        *f = Field(grid);

    for (int i = 0; i < grid.n_nodes; ++i) {
        ContactPoint cp;
        cp.v = we.contact.v_bar[i];
        cp.u = we.contact.u_bar[i];
        cp.theta = we.contact.theta_bar[i];
        cp.p = we.contact.p_bar[i];
        cp.E = we.contact.E_bar[i];
        cp.v_x = we.contact.v_bar_x[i];
        cp.u_x = we.contact.u_bar_x[i];
        cp.theta_x = we.contact.theta_bar_x[i];
        cp.u_t = we.contact.u_bar_t[i];
        GaussianSample w1{we.waves.theta1[i], we.waves.theta1_x[i], we.waves.theta1_t[i]};
        GaussianSample w3{we.waves.theta3[i], we.waves.theta3_x[i], we.waves.theta3_t[i]};
        const AnsatzPoint a = assemble_point(cp, w1, w3, coeffs, gas, wk);
        if (!(a.v > 0.0) || !(a.theta > 0.0))
            throw InvalidState("build_ansatz: non-positive v~ or theta~ (perturbation too large)");
        we.v_tilde[i] = a.v;
        we.u_tilde[i] = a.u;
        we.theta_tilde[i] = a.theta;
        we.e_tilde[i] = a.e;
        we.p_tilde[i] = a.p;
        we.v_tilde_x[i] = a.v_x;
        we.u_tilde_x[i] = a.u_x;
        we.theta_tilde_x[i] = a.theta_x;
        we.u_tilde_t[i] = a.u_t;
        we.residuals.R1[i] = a.R1;
        we.residuals.R2[i] = a.R2;
        we.residuals.Rt1[i] = a.Rt1;
        we.residuals.Rt2[i] = a.Rt2;
        we.residuals.Rt3[i] = a.Rt3;
    }
    return we;
}

EnvelopeReport ansatz_envelope_report(const ProfileTable& prof, const GasModel& gas,
                                      const EndStates& ends, const MassDecomposition& coeffs,
                                      const std::vector<double>& times, int points_per_time) {
    const double l1 = lambda1_minus(ends, gas);
    const double l3 = lambda3_plus(ends, gas);
    const double tb1 = coeffs.theta_bar_1, tb3 = coeffs.theta_bar_3;

    auto gaussian_sum = [&](double c, double x, double t) {
        const double tau = 1.0 + t;
        const double z0 = x, z1 = x - l1 * tau, z3 = x - l3 * tau;
        return std::exp(-c * z0 * z0 / tau) + std::exp(-c * z1 * z1 / tau) +
               std::exp(-c * z3 * z3 / tau);
    };

    // ratios for one candidate rate; returns per-time per-component sups and whether
    // every maximizer stays inside the lattice
    struct Sweep {
        std::vector<std::array<double, 3>> per_time;
        std::array<double, 3> sup{};
        bool interior = true;
    };
    auto sweep = [&](double c) {
        Sweep s;
        for (double t : times) {
            const double tau = 1.0 + t;
            const double reach = std::max(std::fabs(l1), std::fabs(l3)) * tau + 14.0 * std::sqrt(tau);
            std::array<double, 3> sup_t{};
            std::array<double, 3> arg_t{};
            for (int k = 0; k < points_per_time; ++k) {
                const double x = -reach + 2.0 * reach * static_cast<double>(k) / (points_per_time - 1);
                const AnsatzPoint a = ansatz_point(prof, gas, ends, coeffs, x, t);
                const double env = gaussian_sum(c, x, t);
                const double rt[3] = {a.Rt1, a.Rt2, a.Rt3};
                for (int j = 0; j < 3; ++j) {
                    const double r = std::fabs(rt[j]) * tau / env;
                    if (r > sup_t[static_cast<size_t>(j)]) {
                        sup_t[static_cast<size_t>(j)] = r;
                        arg_t[static_cast<size_t>(j)] = std::fabs(x) / reach;
                    }
                }
            }
            for (int j = 0; j < 3; ++j) {
                s.sup[static_cast<size_t>(j)] =
                    std::max(s.sup[static_cast<size_t>(j)], sup_t[static_cast<size_t>(j)]);
                if (arg_t[static_cast<size_t>(j)] > 0.95) s.interior = false;
            }
            s.per_time.push_back(sup_t);
        }
        return s;
    };

    EnvelopeReport rep;
    rep.times = times;
    Sweep chosen;
    for (double c : {0.02, 0.05, 0.08, 0.10, 0.125}) {
        Sweep s = sweep(c);
        if (s.interior || rep.c == 0.0) {
            rep.c = c;
            chosen = s;
        }
        if (!s.interior) break;
    }
    rep.ratio_at_time = chosen.per_time;
    rep.sup_ratio = chosen.sup;
    const double delta = ends.delta();
    rep.scale = delta + tb1 * tb1 + tb3 * tb3;
    rep.fitted_C = (rep.scale > 0.0)
                       ? std::max({chosen.sup[0], chosen.sup[1], chosen.sup[2]}) / rep.scale
                       : 0.0;
    return rep;
}

void dump_wave_snapshot(const WaveEnsemble& we, std::ostream& os) {
    os << "# x v_bar u_bar theta_bar v_tilde u_tilde theta_tilde Rt1 Rt2 Rt3\n";
    const Grid1D& grid = *we.v_tilde.grid;
    char buf[340];
    for (int i = 0; i < grid.n_nodes; ++i) {
        std::snprintf(buf, sizeof(buf),
                      "%.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n",
                      grid.x[static_cast<size_t>(i)], we.contact.v_bar[i], we.contact.u_bar[i],
                      we.contact.theta_bar[i], we.v_tilde[i], we.u_tilde[i], we.theta_tilde[i],
                      we.residuals.Rt1[i], we.residuals.Rt2[i], we.residuals.Rt3[i]);
        os << buf;
    }
}

}  // namespace cwsim
