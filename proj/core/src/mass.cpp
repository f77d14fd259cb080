#include "cwsim/mass.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cwsim/diffusion_wave.hpp"
#include "cwsim/eigen_structure.hpp"
#include "cwsim/errors.hpp"
#include "cwsim/field_ops.hpp"

namespace cwsim {

Vec3 conserved_m(double v, double u, double theta, const GasModel& gas) {
    return {v, u, theta + 0.5 * (gas.gamma - 1.0) / gas.R * u * u};
}

EndpointEigen endpoint_eigen(const EndStates& ends, const GasModel& gas) {
    ends.validate(gas);
    const double g1 = gas.gamma - 1.0;
    EndpointEigen e;
    e.lambda1_minus = lambda1_minus(ends, gas);
    e.lambda3_plus = lambda3_plus(ends, gas);
    e.r1_minus = {-1.0, e.lambda1_minus, g1 * ends.p_minus(gas) / gas.R};
    e.r3_plus = {-1.0, e.lambda3_plus, g1 * ends.p_plus(gas) / gas.R};
    e.m_jump = {ends.v_plus - ends.v_minus, 0.0, ends.theta_plus - ends.theta_minus};

    const Mat3 Am = flux_jacobian(ends.v_minus, 0.0, ends.theta_minus, gas);
    const Mat3 Ap = flux_jacobian(ends.v_plus, 0.0, ends.theta_plus, gas);
    const Vec3 res1 = mat_vec(Am, e.r1_minus) - e.lambda1_minus * e.r1_minus;
    const Vec3 res3 = mat_vec(Ap, e.r3_plus) - e.lambda3_plus * e.r3_plus;
    if (norm_inf(res1) > 1e-10 || norm_inf(res3) > 1e-10)
        throw InvalidState("endpoint_eigen: eigenvector residual exceeds 1e-10");

    const Mat3 basis{{{e.r1_minus[0], e.m_jump[0], e.r3_plus[0]},
                      {e.r1_minus[1], e.m_jump[1], e.r3_plus[1]},
                      {e.r1_minus[2], e.m_jump[2], e.r3_plus[2]}}};
    e.basis_det = det3(basis);
    return e;
}

Vec3 excess_mass(const Field& v, const Field& u, const Field& theta, const ContactWave& cw,
                 const GasModel& gas) {
    if (v.grid != cw.v_bar.grid)
        throw std::invalid_argument("excess_mass: state and contact wave on different grids");
    const Grid1D& grid = *v.grid;
    Field d0(grid), d1(grid), d2(grid);
    for (int i = 0; i < grid.n_nodes; ++i) {
        const Vec3 m = conserved_m(v[i], u[i], theta[i], gas);
        const Vec3 mb = conserved_m(cw.v_bar[i], cw.u_bar[i], cw.theta_bar[i], gas);
        d0[i] = m[0] - mb[0];
        d1[i] = m[1] - mb[1];
        d2[i] = m[2] - mb[2];
    }
    return {trapezoid(d0), trapezoid(d1), trapezoid(d2)};
}

MassDecomposition decompose_mass(const Vec3& excess, const EndpointEigen& eig) {
    if (std::fabs(eig.basis_det) <= 1e-8)
        throw InvalidState("decompose_mass: near-singular basis, |det| = " +
                           std::to_string(std::fabs(eig.basis_det)));
    const Mat3 basis{{{eig.r1_minus[0], eig.m_jump[0], eig.r3_plus[0]},
                      {eig.r1_minus[1], eig.m_jump[1], eig.r3_plus[1]},
                      {eig.r1_minus[2], eig.m_jump[2], eig.r3_plus[2]}}};
    const Vec3 coef = lu_solve3(basis, excess);
    MassDecomposition dec;
    dec.theta_bar_1 = coef[0];
    dec.theta_bar_2 = coef[1];
    dec.theta_bar_3 = coef[2];
    dec.excess = excess;

    const Vec3 rebuilt = dec.theta_bar_1 * eig.r1_minus + dec.theta_bar_2 * eig.m_jump +
                         dec.theta_bar_3 * eig.r3_plus;
    if (norm_inf(rebuilt - excess) > 1e-10 * std::max(1.0, norm_inf(excess)))
        throw InvalidState("decompose_mass: reconstruction residual exceeds 1e-10");
    return dec;
}

void write_decomposition_report(const EndpointEigen& eig, const MassDecomposition& dec,
                                std::ostream& os) {
    char buf[256];
    auto vec = [&](const char* name, const Vec3& v) {
        std::snprintf(buf, sizeof(buf), "%s % .17g % .17g % .17g\n", name, v[0], v[1], v[2]);
        os << buf;
    };
    os << "# excess-mass decomposition onto endpoint characteristic directions\n";
    vec("excess  ", dec.excess);
    vec("r1_minus", eig.r1_minus);
    vec("m_jump  ", eig.m_jump);
    vec("r3_plus ", eig.r3_plus);
    std::snprintf(buf, sizeof(buf), "lambda1_minus %.17g\nlambda3_plus %.17g\n",
                  eig.lambda1_minus, eig.lambda3_plus);
    os << buf;
    std::snprintf(buf, sizeof(buf), "theta_bar %.17g %.17g %.17g\n", dec.theta_bar_1,
                  dec.theta_bar_2, dec.theta_bar_3);
    os << buf;
    std::snprintf(buf, sizeof(buf), "basis_det %.17g\n", eig.basis_det);
    os << buf;
}

}  // namespace cwsim
