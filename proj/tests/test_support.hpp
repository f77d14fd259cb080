#pragma once
// Shared oracles for the test suites: independent quadrature/differentiation helpers
// kept deliberately separate from the library implementations they check.
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace testsup {

// 5-point central first derivative, O(k^4).
inline double fd1(const std::function<double(double)>& f, double x, double k) {
    return (-f(x + 2 * k) + 8 * f(x + k) - 8 * f(x - k) + f(x - 2 * k)) / (12.0 * k);
}

// 5-point central second derivative, O(k^4).
inline double fd2(const std::function<double(double)>& f, double x, double k) {
    return (-f(x + 2 * k) + 16 * f(x + k) - 30 * f(x) + 16 * f(x - k) - f(x - 2 * k)) /
           (12.0 * k * k);
}

// 3-point central derivative, O(k^2).
inline double fd1c(const std::function<double(double)>& f, double x, double k) {
    return (f(x + k) - f(x - k)) / (2.0 * k);
}

// Adaptive-ish Simpson quadrature oracle on [a, b] with fixed fine resolution.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20001) {
    if (n % 2 == 0) ++n;
    const double h = (b - a) / (n - 1);
    double s = f(a) + f(b);
    for (int i = 1; i < n - 1; ++i) s += f(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline std::mt19937_64 rng(std::uint64_t seed = 987654321) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace testsup
