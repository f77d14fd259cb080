#pragma once
#include <iosfwd>

#include "cwsim/contact_wave.hpp"
#include "cwsim/gas.hpp"
#include "cwsim/la3.hpp"

namespace cwsim {

// Conserved vector m = (v, u, theta + (gamma-1) u^2 / (2R))^t.
Vec3 conserved_m(double v, double u, double theta, const GasModel& gas);

struct EndpointEigen {
    double lambda1_minus = 0.0;
    double lambda3_plus = 0.0;
    Vec3 r1_minus{}, r3_plus{}, m_jump{};
    double basis_det = 0.0;
};

// Eigen-triples of the flux Jacobian at the two far-field states, plus the jump
// m_plus - m_minus. Construction verifies the eigenvector residuals and the basis
// determinant; a degenerate basis throws InvalidState.
EndpointEigen endpoint_eigen(const EndStates& ends, const GasModel& gas);

// Component-wise trapezoid integral of m(x,0) - m_bar(x,0) on the shared grid.
Vec3 excess_mass(const Field& v, const Field& u, const Field& theta, const ContactWave& cw,
                 const GasModel& gas);

struct MassDecomposition {
    double theta_bar_1 = 0.0;
    double theta_bar_2 = 0.0;
    double theta_bar_3 = 0.0;
    Vec3 excess{};
};

MassDecomposition decompose_mass(const Vec3& excess, const EndpointEigen& eig);

void write_decomposition_report(const EndpointEigen& eig, const MassDecomposition& dec,
                                std::ostream& os);

}  // namespace cwsim
