#include "cwsim/field_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace cwsim {

static void require_same_grid(const Field& a, const Field& b) {
    if (a.grid != b.grid || a.size() != b.size())
        throw std::invalid_argument("field operation on mismatched grids");
}

double trapezoid(const Field& f) {
    const int n = f.size();
    double s = 0.5 * (f[0] + f[n - 1]);
    for (int i = 1; i < n - 1; ++i) s += f[i];
    return s * f.grid->dx;
}

Field antiderivative_from_left(const Field& f) {
    Field out(*f.grid);
    const double h = f.grid->dx;
    double acc = 0.0;
    out[0] = 0.0;
    for (int i = 1; i < f.size(); ++i) {
        acc += 0.5 * h * (f[i - 1] + f[i]);
        out[i] = acc;
    }
    return out;
}

Norms norms(const Field& f) {
    Norms r;
    const int n = f.size();
    const double h = f.grid->dx;
    double s2 = 0.5 * (f[0] * f[0] + f[n - 1] * f[n - 1]);
    double s1 = 0.5 * (std::fabs(f[0]) + std::fabs(f[n - 1]));
    r.linf = std::max(std::fabs(f[0]), std::fabs(f[n - 1]));
    for (int i = 1; i < n - 1; ++i) {
        const double a = std::fabs(f[i]);
        s2 += f[i] * f[i];
        s1 += a;
        if (a > r.linf) r.linf = a;
    }
    r.l2 = std::sqrt(s2 * h);
    r.l1 = s1 * h;
    return r;
}

Field derivative(const Field& f, int order) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("derivative: order must be 1 or 2");
    const int n = f.size();
    if (n < 5) throw std::invalid_argument("derivative: need at least 5 nodes");
    const double h = f.grid->dx;
    Field out(*f.grid);
    if (order == 1) {
        out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        for (int i = 1; i < n - 1; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
        out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    } else {
        const double h2 = h * h;
        out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
        for (int i = 1; i < n - 1; ++i) out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
        out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    }
    return out;
}

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out(*a.grid);
    for (int i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out(*a.grid);
    for (int i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Field operator*(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out(*a.grid);
    for (int i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

Field operator*(double c, const Field& a) {
    Field out(*a.grid);
    for (int i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

}  // namespace cwsim
