#include "cwsim/gas.hpp"

#include <cmath>
#include <stdexcept>

namespace cwsim {

void GasModel::validate() const {
    if (!(R > 0.0)) throw std::invalid_argument("GasModel: R must be positive");
    if (!(gamma > 1.0)) throw std::invalid_argument("GasModel: gamma must exceed 1");
    if (!(mu > 0.0)) throw std::invalid_argument("GasModel: mu must be positive");
    if (!(kappa > 0.0)) throw std::invalid_argument("GasModel: kappa must be positive");
    if (!(A_const > 0.0)) throw std::invalid_argument("GasModel: A_const must be positive");
}

double EndStates::delta() const { return std::fabs(theta_plus - theta_minus); }

void EndStates::validate(const GasModel& gas) const {
    if (!(v_minus > 0.0) || !(v_plus > 0.0) || !(theta_minus > 0.0) || !(theta_plus > 0.0))
        throw std::invalid_argument("EndStates: volumes and temperatures must be positive");
    const double pm = p_minus(gas);
    const double pp = p_plus(gas);
    if (std::fabs(pm - pp) > 1e-12 * std::max(std::fabs(pm), std::fabs(pp)))
        throw std::invalid_argument("EndStates: end pressures do not match");
}

EndStates make_end_states(const GasModel& gas, double theta_minus, double theta_plus,
                          double p_common, double u_minus) {
    if (!(p_common > 0.0)) throw std::invalid_argument("make_end_states: pressure must be positive");
    EndStates e;
    e.theta_minus = theta_minus;
    e.theta_plus = theta_plus;
    e.v_minus = gas.R * theta_minus / p_common;
    e.v_plus = gas.R * theta_plus / p_common;
    e.u_minus = u_minus;
    e.validate(gas);
    return e;
}

}  // namespace cwsim
