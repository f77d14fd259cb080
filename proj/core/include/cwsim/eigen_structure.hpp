#pragma once
#include "cwsim/gas.hpp"
#include "cwsim/la3.hpp"

namespace cwsim {

// Jacobian of the flux (-u, p, (gamma-1) p u / R) with respect to (v, u, theta).
Mat3 flux_jacobian(double v, double u, double theta, const GasModel& gas);

// Frozen-coefficient characteristic structure at one point of the contact wave:
// eigenvectors of A1 (built from v_bar and the constant far-field pressure),
// the viscosity matrix A4 = L A2 R and its closed-form entries.
struct CharBasis {
    double lambda3 = 0.0;  // = -lambda1 = sqrt(gamma p_plus / v_bar)
    Mat3 L{}, R{}, A1{}, A2{}, Lambda{};
    double b11 = 0.0, b12 = 0.0, b13 = 0.0, b22 = 0.0;

    Mat3 A4() const {
        return Mat3{{{b11, b12, b13}, {b12, b22, b12}, {b13, b12, b11}}};
    }
};

CharBasis char_basis(double v_bar, double p_plus, const GasModel& gas);

// Quadratic form z^t A4 z written as the sum of two squares; nonnegative by
// construction. Throws InvalidState if it disagrees with the matrix form.
double dissipation_form(const Vec3& z, double v_bar, const GasModel& gas);

}  // namespace cwsim
