#include "cwsim/tridiag.hpp"

#include <cmath>
#include <stdexcept>

namespace cwsim {

void solve_tridiag(const std::vector<double>& lower, const std::vector<double>& diag,
                   const std::vector<double>& upper, std::vector<double>& rhs,
                   std::vector<double>& scratch) {
    const size_t n = diag.size();
    scratch.resize(n);
    double piv = diag[0];
    if (piv == 0.0) throw std::runtime_error("solve_tridiag: zero pivot");
    scratch[0] = upper[0] / piv;
    rhs[0] /= piv;
    for (size_t i = 1; i < n; ++i) {
        piv = diag[i] - lower[i] * scratch[i - 1];
        if (piv == 0.0) throw std::runtime_error("solve_tridiag: zero pivot");
        scratch[i] = upper[i] / piv;
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / piv;
    }
    for (size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i] * rhs[i + 1];
}

}  // namespace cwsim
