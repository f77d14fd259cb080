#include "cwsim/heat_kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace cwsim {

HeatKernelWeights heat_weights(double alpha, const Grid1D& grid, double t) {
    if (!(alpha > 0.0)) throw std::invalid_argument("heat_weights: alpha must be positive");
    if (t < 0.0) throw std::invalid_argument("heat_weights: t must be nonnegative");
    HeatKernelWeights w;
    w.alpha = alpha;
    w.t = t;
    const double tau = 1.0 + t;
    w.omega = Field::from_fn(grid, [&](double x) {
        return std::exp(-alpha * x * x / tau) / std::sqrt(tau);
    });
    // cumulative trapezoid plus the first two Euler-Maclaurin endpoint terms (the
    // Gaussian derivatives are closed-form), so the partial integrals are 6th-order
    // accurate pointwise
    const double a_g = alpha / tau;
    auto d1 = [&](double a, double x, double val) { return -2.0 * a * x * val; };
    auto d3 = [&](double a, double x, double val) {
        return (12.0 * a * a * x - 8.0 * a * a * a * x * x * x) * val;
    };
    const double c2 = grid.dx * grid.dx / 12.0;
    const double c4 = c2 * grid.dx * grid.dx / 60.0;  // h^4/720
    w.g = antiderivative_from_left(w.omega);
    w.f = antiderivative_from_left(w.omega * w.omega);
    const double x0 = grid.x.front();
    for (int i = 0; i < grid.n_nodes; ++i) {
        const double xi = grid.x[static_cast<size_t>(i)];
        const double om = w.omega[i], om0 = w.omega[0];
        w.g[i] += c2 * (d1(a_g, x0, om0) - d1(a_g, xi, om)) -
                  c4 * (d3(a_g, x0, om0) - d3(a_g, xi, om));
        const double q = om * om, q0 = om0 * om0;
        w.f[i] += c2 * (d1(2.0 * a_g, x0, q0) - d1(2.0 * a_g, xi, q)) -
                  c4 * (d3(2.0 * a_g, x0, q0) - d3(2.0 * a_g, xi, q));
    }
    return w;
}

PoincareAccumulator::PoincareAccumulator(double alpha, const GasModel& gas, const EndStates& ends)
    : alpha_(alpha), gas_(gas), p_plus_(ends.p_plus(gas)) {
    if (!(alpha > 0.0)) throw std::invalid_argument("PoincareAccumulator: alpha must be positive");
}

void PoincareAccumulator::add(const PerturbationSet& pert, const PertSources& src,
                              const ContactWave& cw) {
    if (pert.mode != PerturbationMode::ZeroMass)
        throw std::invalid_argument("poincare audit requires zero-mass perturbations");
    const Grid1D& grid = *pert.Phi.grid;
    const HeatKernelWeights w = heat_weights(alpha_, grid, pert.t);
    const double g1 = gas_.gamma - 1.0;

    const Field W_x = derivative(pert.W, 1);
    const Field Psi_xx = derivative(pert.psi, 1);
    const Field W_xx = derivative(W_x, 1);

    Field w2_int(grid), grad_int(grid), hess_int(grid), h2_int(grid), hx_int(grid), pair_int(grid);
    Field h(grid);
    for (int i = 0; i < grid.n_nodes; ++i)
        h[i] = gas_.R * pert.W[i] + g1 * p_plus_ * pert.Phi[i];
    const Field h_x = derivative(h, 1);
    for (int i = 0; i < grid.n_nodes; ++i) {
        const double om2 = w.omega[i] * w.omega[i];
        w2_int[i] = (pert.Phi[i] * pert.Phi[i] + pert.Psi[i] * pert.Psi[i] +
                     pert.W[i] * pert.W[i]) * om2;
        grad_int[i] = pert.phi[i] * pert.phi[i] + pert.psi[i] * pert.psi[i] + W_x[i] * W_x[i];
        hess_int[i] = Psi_xx[i] * Psi_xx[i] + W_xx[i] * W_xx[i];
        h2_int[i] = h[i] * h[i] * om2;
        hx_int[i] = h_x[i] * h_x[i];
        // <h_t, h g^2> through the evolution identity of (R/(g-1)) W + p+ Phi
        pair_int[i] = g1 * (gas_.kappa / cw.v_bar[i] * W_xx[i] + src.Q2[i]) * h[i] *
                      w.g[i] * w.g[i];
    }
    const double w2 = trapezoid(w2_int);
    const double grad = trapezoid(grad_int);
    const double hess = trapezoid(hess_int);
    const double h2 = trapezoid(h2_int);
    const double hx = trapezoid(hx_int);
    const double pair = trapezoid(pair_int);

    if (h0_norm2_ < 0.0) {
        Field habs(grid);
        for (int i = 0; i < grid.n_nodes; ++i) habs[i] = h[i] * h[i];
        h0_norm2_ = trapezoid(habs);
    }
    if (prev_t_ >= 0.0) {
        const double dt = pert.t - prev_t_;
        lhs_ += 0.5 * dt * (p_w2_ + w2);
        rhs_grad_ += 0.5 * dt * (p_grad_ + grad);
        rhs_hess_ += 0.5 * dt * (p_hess_ + hess);
        h_lhs_ += 0.5 * dt * (p_h2_ + h2);
        h_rhs_hx_ += 0.5 * dt * (p_hx_ + hx);
        h_rhs_pair_ += 0.5 * dt * (p_pair_ + pair);
    }
    prev_t_ = pert.t;
    p_w2_ = w2;
    p_grad_ = grad;
    p_hess_ = hess;
    p_h2_ = h2;
    p_hx_ = hx;
    p_pair_ = pair;
    last_w2_ = w2;
}

double PoincareAccumulator::heat_rhs() const {
    return 4.0 * M_PI * h0_norm2_ + 4.0 * M_PI / alpha_ * h_rhs_hx_ + 8.0 * alpha_ * h_rhs_pair_;
}

double PoincareAccumulator::heat_ratio() const {
    const double r = heat_rhs();
    return (r > 0.0) ? h_lhs_ / r : 0.0;
}

}  // namespace cwsim
