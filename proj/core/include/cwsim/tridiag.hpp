#pragma once
#include <vector>

namespace cwsim {

// Thomas algorithm. lower[0] and upper[n-1] are ignored. No pivoting: callers pass
// diagonally dominant systems. Overwrites rhs with the solution.
void solve_tridiag(const std::vector<double>& lower, const std::vector<double>& diag,
                   const std::vector<double>& upper, std::vector<double>& rhs,
                   std::vector<double>& scratch);

}  // namespace cwsim
