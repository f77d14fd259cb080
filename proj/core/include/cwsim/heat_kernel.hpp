#pragma once
#include "cwsim/contact_wave.hpp"
#include "cwsim/perturbation.hpp"

namespace cwsim {

// omega(x,t) = (1+t)^{-1/2} exp(-alpha x^2/(1+t)), g = int_{-L}^x omega,
// f = int_{-L}^x omega^2. On domains sized by the truncation rule the missing left
// tails are far below round-off.
struct HeatKernelWeights {
    double alpha = 0.0;
    double t = 0.0;
    Field omega, g, f;
};

HeatKernelWeights heat_weights(double alpha, const Grid1D& grid, double t);

// Running time integrals of the weighted Poincare inequality and of the heat-kernel
// inequality with h = R W + (gamma-1) p_plus Phi (ring variables). Feed states in
// increasing time order; integrals use the trapezoid rule between consecutive calls.
class PoincareAccumulator {
  public:
    PoincareAccumulator(double alpha, const GasModel& gas, const EndStates& ends);

    void add(const PerturbationSet& pert, const PertSources& src, const ContactWave& cw);

    double alpha() const { return alpha_; }
    double lhs() const { return lhs_; }
    double rhs() const { return rhs_grad_ + rhs_hess_; }
    double ratio() const { return lhs_ / (1.0 + rhs()); }
    double current_weighted_l2() const { return last_w2_; }

    double heat_lhs() const { return h_lhs_; }
    double heat_rhs() const;
    double heat_ratio() const;

  private:
    double alpha_ = 0.0;
    GasModel gas_;
    double p_plus_ = 0.0;
    double prev_t_ = -1.0;
    double lhs_ = 0.0, rhs_grad_ = 0.0, rhs_hess_ = 0.0;
    double h_lhs_ = 0.0, h_rhs_hx_ = 0.0, h_rhs_pair_ = 0.0, h0_norm2_ = -1.0;
    double last_w2_ = 0.0;
    // previous integrand values for the trapezoid rule in time
    double p_w2_ = 0.0, p_grad_ = 0.0, p_hess_ = 0.0, p_h2_ = 0.0, p_hx_ = 0.0, p_pair_ = 0.0;
};

struct PoincareReport {
    double alpha = 0.0;
    double sup_ratio = 0.0;
    double ratio_first = 0.0, ratio_last = 0.0;
    double heat_ratio_last = 0.0;
    bool bounded = false;
};

}  // namespace cwsim
