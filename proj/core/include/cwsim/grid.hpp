#pragma once
#include <functional>
#include <vector>

namespace cwsim {

// Uniform grid on [-L, L], symmetric about 0.
struct Grid1D {
    double half_width = 0.0;  // L
    int n_nodes = 0;
    double dx = 0.0;
    std::vector<double> x;
};

// Requires L > 0 and n >= 16 (n >= 3 allowed only through tests via make_grid_unchecked).
Grid1D make_grid(double L, int n);
Grid1D make_grid_unchecked(double L, int n);

// One real value per grid node. The grid is owned elsewhere and must outlive the field.
struct Field {
    const Grid1D* grid = nullptr;
    std::vector<double> v;

    Field() = default;
    explicit Field(const Grid1D& g) : grid(&g), v(g.n_nodes, 0.0) {}
    Field(const Grid1D& g, double fill) : grid(&g), v(g.n_nodes, fill) {}

    int size() const { return static_cast<int>(v.size()); }
    double& operator[](int i) { return v[static_cast<size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<size_t>(i)]; }

    template <class Fn>
    static Field from_fn(const Grid1D& g, Fn f) {
        Field out(g);
        for (int i = 0; i < g.n_nodes; ++i) out.v[static_cast<size_t>(i)] = f(g.x[static_cast<size_t>(i)]);
        return out;
    }
};

// Throws InvalidState when the field contains a NaN or Inf.
void ensure_finite(const Field& f, const char* what);
bool all_finite(const Field& f);

}  // namespace cwsim
