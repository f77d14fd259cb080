#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "cwsim/eigen_structure.hpp"
#include "cwsim/errors.hpp"
#include "cwsim/mass.hpp"
#include "cwsim/ns_solver.hpp"
#include "cwsim/profile.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cwsim;

TEST_CASE("flux jacobian entries and eigenvalues") {
    GasModel gas;  // R=1, gamma=5/3
    const Mat3 A = flux_jacobian(1.0, 0.0, 1.0, gas);
    CHECK(A[0][0] == 0.0);
    CHECK(A[0][1] == -1.0);
    CHECK(A[0][2] == 0.0);
    CHECK(A[1][0] == doctest::Approx(-1.0));
    CHECK(A[1][1] == 0.0);
    CHECK(A[1][2] == doctest::Approx(1.0));

    // numerical eigensolver oracle
    Eigen::Matrix3d M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
    Eigen::EigenSolver<Eigen::Matrix3d> es(M);
    std::array<double, 3> ev{es.eigenvalues()(0).real(), es.eigenvalues()(1).real(),
                             es.eigenvalues()(2).real()};
    std::sort(ev.begin(), ev.end());
    const double lam = std::sqrt(5.0 / 3.0);
    CHECK(std::fabs(ev[0] + lam) <= 1e-10);
    CHECK(std::fabs(ev[1]) <= 1e-10);
    CHECK(std::fabs(ev[2] - lam) <= 1e-10);

    // characteristic speeds symmetric at u = 0
    CHECK(ev[0] == doctest::Approx(-ev[2]).epsilon(1e-12));

    CHECK_THROWS_AS(flux_jacobian(-1.0, 0.0, 1.0, gas), std::invalid_argument);
    CHECK_THROWS_AS(flux_jacobian(1.0, 0.0, 0.0, gas), std::invalid_argument);
}

TEST_CASE("endpoint eigen-structure") {
    GasModel gas;
    const EndStates ends = make_end_states(gas, 1.0, 1.2, 1.0);
    const EndpointEigen eig = endpoint_eigen(ends, gas);

    CHECK(std::fabs(eig.lambda1_minus + 1.2909944487358056) <= 1e-12);
    CHECK(std::fabs(eig.lambda3_plus - 1.1785113019775793) <= 1e-12);
    CHECK(eig.r1_minus[0] == -1.0);
    CHECK(eig.r1_minus[1] == doctest::Approx(-1.2909944487358056).epsilon(1e-14));
    CHECK(eig.r1_minus[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(eig.r3_plus[1] == doctest::Approx(1.1785113019775793).epsilon(1e-14));

    // eigenvector residual oracle
    const Mat3 Am = flux_jacobian(ends.v_minus, 0.0, ends.theta_minus, gas);
    const Vec3 res = mat_vec(Am, eig.r1_minus) - eig.lambda1_minus * eig.r1_minus;
    CHECK(norm_inf(res) <= 1e-10);

    // frozen 3x3 solve oracle (computed independently ahead of the build)
    const MassDecomposition dec = decompose_mass({0.1, 0.05, 0.02}, eig);
    CHECK(dec.theta_bar_1 == doctest::Approx(-0.043153794018960488).epsilon(1e-12));
    CHECK(dec.theta_bar_2 == doctest::Approx(0.26).epsilon(1e-12));
    CHECK(dec.theta_bar_3 == doctest::Approx(-0.0048462059810395076).epsilon(1e-12));
    CHECK(eig.basis_det == doctest::Approx(0.82316858357112832).epsilon(1e-12));
}

TEST_CASE("decompose_mass basics") {
    GasModel gas;
    const EndStates ends = make_end_states(gas, 1.0, 1.2, 1.0);
    const EndpointEigen eig = endpoint_eigen(ends, gas);

    const MassDecomposition z = decompose_mass({0.0, 0.0, 0.0}, eig);
    CHECK(z.theta_bar_1 == 0.0);
    CHECK(z.theta_bar_2 == 0.0);
    CHECK(z.theta_bar_3 == 0.0);

    const MassDecomposition b = decompose_mass(eig.r1_minus, eig);
    CHECK(b.theta_bar_1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(b.theta_bar_2) <= 1e-12);
    CHECK(std::fabs(b.theta_bar_3) <= 1e-12);
}

TEST_CASE("decompose_mass scaling property") {
    GasModel gas;
    const EndStates ends = make_end_states(gas, 1.0, 1.15, 1.0);
    const EndpointEigen eig = endpoint_eigen(ends, gas);
    auto rg = testsup::rng(42);
    for (int k = 0; k < 50; ++k) {
        const Vec3 e{testsup::uniform(rg, -1, 1), testsup::uniform(rg, -1, 1),
                     testsup::uniform(rg, -1, 1)};
        const MassDecomposition d1 = decompose_mass(e, eig);
        const double c = testsup::uniform(rg, -3, 3);
        const MassDecomposition dc = decompose_mass(c * e, eig);
        CHECK(dc.theta_bar_1 == doctest::Approx(c * d1.theta_bar_1).epsilon(1e-12));
        CHECK(dc.theta_bar_2 == doctest::Approx(c * d1.theta_bar_2).epsilon(1e-12));
        CHECK(dc.theta_bar_3 == doctest::Approx(c * d1.theta_bar_3).epsilon(1e-12));
    }
}

TEST_CASE("degenerate basis rejected") {
    GasModel gas;
    const EndStates ends = make_end_states(gas, 1.0, 1.2, 1.0);
    EndpointEigen eig = endpoint_eigen(ends, gas);
    eig.basis_det = 0.0;  // forced degenerate (only possible outside the tested range)
    CHECK_THROWS_AS(decompose_mass({0.1, 0.0, 0.0}, eig), InvalidState);
}

TEST_CASE("excess mass of perturbed contact data") {
    GasModel gas;
    const EndStates ends = make_end_states(gas, 1.0, 1.2, 1.0);
    const ProfileTable prof = solve_profile(gas, ends, 12.0, 2049);
    const Grid1D grid = make_grid(100.0, 4097);
    const ContactWave cw = contact_wave(prof, gas, ends, grid, 0.0);

    // exact contact data has no excess
    {
        const Vec3 e = excess_mass(cw.v_bar, cw.u_bar, cw.theta_bar, cw, gas);
        CHECK(norm_inf(e) <= 1e-14);
    }

    // bump in v only, mass 0.1
    {
        PerturbationSpec spec;
        spec.eps_v = 0.1;
        const SimState init = initial_data(cw, spec, grid, gas);
        const Vec3 e = excess_mass(init.v, init.u, init.theta, cw, gas);
        CHECK(std::fabs(e[0] - 0.1) <= 1e-10);
        CHECK(std::fabs(e[1]) <= 1e-10);
        CHECK(std::fabs(e[2]) <= 1e-10);
    }

    // bump along r1_minus: excess = eps r1_minus by linearity of the integral
    {
        const EndpointEigen eig = endpoint_eigen(ends, gas);
        const double eps = 0.05;
        PerturbationSpec spec;
        spec.eps_v = eps * eig.r1_minus[0];
        spec.eps_u = eps * eig.r1_minus[1];
        spec.eps_theta = eps * eig.r1_minus[2];
        const SimState init = initial_data(cw, spec, grid, gas);
        const Vec3 e = excess_mass(init.v, init.u, init.theta, cw, gas);
        const Vec3 want = eps * eig.r1_minus;
        CHECK(norm_inf(e - want) <= 1e-10);

        const MassDecomposition dec = decompose_mass(e, eig);
        CHECK(dec.theta_bar_1 == doctest::Approx(eps).epsilon(1e-9));
        CHECK(std::fabs(dec.theta_bar_2) <= 1e-10);
        CHECK(std::fabs(dec.theta_bar_3) <= 1e-10);
    }

    // grid mismatch
    {
        const Grid1D other = make_grid(100.0, 1025);
        Field v(other, 1.0), u(other), th(other, 1.0);
        CHECK_THROWS_AS(excess_mass(v, u, th, cw, gas), std::invalid_argument);
    }
}

TEST_CASE("small-perturbation coefficient bound is stable across delta") {
    GasModel gas;
    double c_prev = -1.0;
    for (double delta : {0.05, 0.1, 0.2}) {
        const EndStates ends = make_end_states(gas, 1.0, 1.0 + delta, 1.0);
        const ProfileTable prof = solve_profile(gas, ends, 12.0, 1025);
        const Grid1D grid = make_grid(80.0, 2049);
        const ContactWave cw = contact_wave(prof, gas, ends, grid, 0.0);
        const EndpointEigen eig = endpoint_eigen(ends, gas);
        for (double eps : {0.01, 0.05}) {
            PerturbationSpec spec;
            spec.eps_v = eps;
            spec.eps_u = 0.5 * eps;
            spec.eps_theta = 0.25 * eps;
            const SimState init = initial_data(cw, spec, grid, gas);
            const Vec3 e = excess_mass(init.v, init.u, init.theta, cw, gas);
            const MassDecomposition dec = decompose_mass(e, eig);
            const double c = (std::fabs(dec.theta_bar_1) + std::fabs(dec.theta_bar_3)) / eps;
            if (c_prev > 0.0) {
                CHECK(c <= 1.6 * c_prev);
                CHECK(c >= c_prev / 1.6);
            }
            c_prev = c;
        }
    }
}
