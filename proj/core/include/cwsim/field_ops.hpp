#pragma once
#include "cwsim/grid.hpp"

namespace cwsim {

struct Norms {
    double l2 = 0.0;
    double linf = 0.0;
    double l1 = 0.0;
};

// Composite trapezoid over the whole grid.
double trapezoid(const Field& f);

// x -> integral of f from -L to x, composite trapezoid; value 0 at the left node.
Field antiderivative_from_left(const Field& f);

Norms norms(const Field& f);

// order 1 or 2; 2nd-order central stencils inside, one-sided 2nd-order at the ends.
// Requires at least 5 nodes.
Field derivative(const Field& f, int order);

// Pointwise helpers used all over the diagnostics.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);
Field operator*(double c, const Field& a);

}  // namespace cwsim
