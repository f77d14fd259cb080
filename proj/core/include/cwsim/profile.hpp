#pragma once
#include <iosfwd>

#include "cwsim/gas.hpp"
#include "cwsim/grid.hpp"

#include <vector>

namespace cwsim {

// Sampled self-similar temperature profile. theta_hat solves the similarity form of
// the nonlinear diffusion equation,
//     -(xi/2) theta' = a (theta'/theta)',   theta(+-Xi) = theta_pm,
// on a uniform xi grid; dtheta/ddtheta/d3theta are the first three xi-derivatives at
// the nodes (ddtheta and d3theta recovered exactly from the ODE once theta and
// dtheta are known).
struct ProfileTable {
    std::vector<double> xi_grid;
    std::vector<double> theta_hat;
    std::vector<double> dtheta;
    std::vector<double> ddtheta;
    std::vector<double> d3theta;
    double a_coef = 0.0;
    double theta_minus = 0.0;
    double theta_plus = 0.0;
    double xi_max = 0.0;
    double h = 0.0;  // xi spacing
    double gauss_c1 = 0.0;
    double gauss_c2 = 0.0;
    // Fritsch-Carlson-limited slopes used when interpolating theta_hat
    std::vector<double> mono_slope;

    double delta() const { return theta_plus > theta_minus ? theta_plus - theta_minus : theta_minus - theta_plus; }
    int sign() const { return theta_plus > theta_minus ? 1 : (theta_plus < theta_minus ? -1 : 0); }
};

// theta_hat(x,t) = theta_hat(xi), xi = x / sqrt(1+t), with derivatives mapped back to
// (x,t) by the chain rule.
struct ProfileSample {
    double theta = 0.0;
    double theta_x = 0.0;
    double theta_xx = 0.0;
    double theta_t = 0.0;
    double theta_xt = 0.0;
};

struct GaussianBoundFit {
    double c1 = 0.0;
    double c2 = 0.0;
    bool pass = false;
};

// Damped Newton on the conservative central-difference discretization; linear ramp
// initial guess, continuation in the jump on failure. Throws SolverFailure with the
// last residual when the iteration stalls.
ProfileTable solve_profile(const GasModel& gas, const EndStates& ends, double Xi = 12.0,
                           int n = 8193);

ProfileSample sample_profile(const ProfileTable& p, double x, double t);

// Largest envelope rate c2 (and matching smallest c1) such that
//   (1+t)|theta_xx| + (1+t)^{1/2}|theta_x| + |theta - theta_pm| <= c1 delta exp(-c2 x^2/(1+t))
// holds on a test lattice of (x,t). Stores the fit into the table.
GaussianBoundFit verify_gaussian_bounds(ProfileTable& p);

// Single-time fit used to audit the self-similar reduction.
GaussianBoundFit fit_envelope_at(const ProfileTable& p, double t, int m_points = 601);

// Residual of an independently coded (non-conservative) discretization of the
// similarity ODE evaluated on the table's own nodes; O(h^2) for the exact solution.
double ode_residual_oracle(const ProfileTable& p);

// Max-norm residual of the solver's own discrete equations at the stored solution.
double ode_residual_native(const ProfileTable& p);

// Plain-text columns (xi, theta, dtheta, ddtheta), one row per node.
void dump_profile_table(const ProfileTable& p, std::ostream& os);

}  // namespace cwsim
