#include "cwsim/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cwsim/errors.hpp"

namespace cwsim {

Grid1D make_grid_unchecked(double L, int n) {
    Grid1D g;
    g.half_width = L;
    g.n_nodes = n;
    g.dx = 2.0 * L / (n - 1);
    g.x.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) g.x[static_cast<size_t>(i)] = -L + g.dx * i;
    // force exact symmetry: midpoint of an odd grid lands on 0
    if (n % 2 == 1) g.x[static_cast<size_t>(n / 2)] = 0.0;
    g.x.back() = L;
    return g;
}

Grid1D make_grid(double L, int n) {
    if (!(L > 0.0)) throw std::invalid_argument("make_grid: L must be positive");
    if (n < 16) throw std::invalid_argument("make_grid: need at least 16 nodes, got " + std::to_string(n));
    return make_grid_unchecked(L, n);
}

bool all_finite(const Field& f) {
    for (double x : f.v)
        if (!std::isfinite(x)) return false;
    return true;
}

void ensure_finite(const Field& f, const char* what) {
    if (!all_finite(f)) throw InvalidState(std::string("non-finite values in field: ") + what);
}

}  // namespace cwsim
