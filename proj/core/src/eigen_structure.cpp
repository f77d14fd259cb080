#include "cwsim/eigen_structure.hpp"

#include <cmath>
#include <stdexcept>

#include "cwsim/errors.hpp"

namespace cwsim {

Mat3 flux_jacobian(double v, double u, double theta, const GasModel& gas) {
    if (!(v > 0.0) || !(theta > 0.0))
        throw std::invalid_argument("flux_jacobian: v and theta must be positive");
    const double p = gas.pressure(v, theta);
    const double g1 = gas.gamma - 1.0;
    return Mat3{{{0.0, -1.0, 0.0},
                 {-p / v, 0.0, gas.R / v},
                 {-g1 * p * u / (gas.R * v), g1 * p / gas.R, g1 * u / v}}};
}

CharBasis char_basis(double v_bar, double p_plus, const GasModel& gas) {
    if (!(v_bar > 0.0)) throw std::invalid_argument("char_basis: v_bar must be positive");
    if (!(p_plus > 0.0)) throw std::invalid_argument("char_basis: p_plus must be positive");
    const double g = gas.gamma;
    const double g1 = g - 1.0;
    const double R = gas.R;

    CharBasis cb;
    cb.lambda3 = std::sqrt(g * p_plus / v_bar);
    const double c1 = std::sqrt(1.0 / (2.0 * g));
    const double c2 = std::sqrt(g1 / g);

    cb.L = Mat3{{{-c1, -c1 * g / cb.lambda3, c1 * R / p_plus},
                 {c2, 0.0, c2 * R / (g1 * p_plus)},
                 {-c1, c1 * g / cb.lambda3, c1 * R / p_plus}}};
    // columns r1, r2, r3
    cb.R = Mat3{{{-c1, c2, -c1},
                 {-c1 * cb.lambda3, 0.0, c1 * cb.lambda3},
                 {c1 * g1 * p_plus / R, c2 * p_plus / R, c1 * g1 * p_plus / R}}};
    cb.A1 = Mat3{{{0.0, -1.0, 0.0},
                  {-p_plus / v_bar, 0.0, R / v_bar},
                  {0.0, g1 * p_plus / R, 0.0}}};
    cb.A2 = Mat3{{{0.0, 0.0, 0.0},
                  {0.0, gas.mu / v_bar, 0.0},
                  {0.0, 0.0, gas.kappa * g1 / (R * v_bar)}}};
    cb.Lambda = Mat3{{{-cb.lambda3, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, cb.lambda3}}};

    cb.b11 = (0.5 * gas.mu + g1 * g1 * gas.kappa / (2.0 * g * R)) / v_bar;
    cb.b12 = std::sqrt(0.5 * g1) * g1 * gas.kappa / (g * R * v_bar);
    cb.b13 = (-0.5 * gas.mu + g1 * g1 * gas.kappa / (2.0 * g * R)) / v_bar;
    cb.b22 = g1 * gas.kappa / (g * R * v_bar);
    return cb;
}

double dissipation_form(const Vec3& z, double v_bar, const GasModel& gas) {
    const double g = gas.gamma;
    const double g1 = g - 1.0;
    const double bracket1 =
        std::sqrt(g1 / (2.0 * g)) * (z[0] + z[2]) + z[1] / std::sqrt(g);
    const double bracket2 = (z[2] - z[0]) / std::sqrt(2.0);
    const double form = gas.kappa * g1 / (gas.R * v_bar) * bracket1 * bracket1 +
                        gas.mu / v_bar * bracket2 * bracket2;

    const CharBasis cb = char_basis(v_bar, 1.0, gas);  // A4 does not involve p_plus
    const double quad = dot(z, mat_vec(cb.A4(), z));
    const double scale = std::max(1.0, std::fabs(quad));
    if (std::fabs(form - quad) > 1e-12 * scale)
        throw InvalidState("dissipation_form: sum of squares disagrees with z^t A4 z");
    return form;
}

}  // namespace cwsim
