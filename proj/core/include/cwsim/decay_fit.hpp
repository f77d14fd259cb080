#pragma once
#include <string>
#include <vector>

#include "cwsim/energy.hpp"
#include "cwsim/perturbation.hpp"

namespace cwsim {

// Least-squares fit of ln y against ln(1+t) (and optionally ln ln(2+t)):
//   ln y ~= intercept - p ln(1+t) + q ln ln(2+t).
struct DecayFit {
    double p = 0.0;
    double q = 0.0;
    double intercept = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    double max_resid = 0.0;  // max |ln y - fit|
    double rms_resid = 0.0;
    int n_pts = 0;
};

// Window is [t_lo, t_hi]; needs >= 10 samples with positive y there.
DecayFit fit_power(const std::vector<double>& t, const std::vector<double>& y, double t_lo,
                   double t_hi);

// Two-regressor fit; throws IllConditionedError when the centered regressors are
// collinear beyond condition number 40 (short windows).
DecayFit fit_power_log(const std::vector<double>& t, const std::vector<double>& y, double t_lo,
                       double t_hi);

struct SeriesVerdict {
    std::string name;
    DecayFit power;
    DecayFit power_log;
    double target_p = 0.0;
    double band = 0.15;
    bool in_band = false;
    bool log_preferred = false;  // RMS improvement of the log model >= 5%
};

struct TheoremReport {
    PerturbationMode mode = PerturbationMode::NonzeroMass;
    bool inconclusive = false;   // ledger span too short
    bool pass = false;
    std::vector<SeriesVerdict> series;
    std::string summary;
};

// Nonzero-mass targets: p = (1/4, 3/4, 1/2) for the L2, derivative-L2 and Linf
// series with no log factor preferred; zero-mass targets: p = (1/2, 1, 3/4) with the
// ln^{1/2}(2+t) correction preferred on the L2 series.
TheoremReport verify_theorem(const EnergyLedger& ledger, PerturbationMode mode,
                             double t_lo = -1.0, double t_hi = -1.0);

}  // namespace cwsim
