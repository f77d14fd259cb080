#include <cmath>

#include "cwsim/errors.hpp"
#include "cwsim/field_ops.hpp"
#include "cwsim/gas.hpp"
#include "cwsim/grid.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cwsim;

TEST_CASE("make_grid basics") {
    // n=3 via the unchecked builder: nodes {-1, 0, 1}, dx = 1
    const Grid1D tiny = make_grid_unchecked(1.0, 3);
    CHECK(tiny.x[0] == doctest::Approx(-1.0));
    CHECK(tiny.x[1] == doctest::Approx(0.0));
    CHECK(tiny.x[2] == doctest::Approx(1.0));
    CHECK(tiny.dx == doctest::Approx(1.0));

    const Grid1D g = make_grid(200.0, 4001);
    CHECK(g.dx == doctest::Approx(0.1));
    CHECK(g.x.front() == doctest::Approx(-200.0));
    CHECK(g.x.back() == doctest::Approx(200.0));
    // strictly increasing, uniform, symmetric
    for (size_t i = 1; i < g.x.size(); ++i) CHECK(g.x[i] > g.x[i - 1]);
    CHECK(g.x[2000] == 0.0);

    CHECK_THROWS_AS(make_grid(0.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 15), std::invalid_argument);
}

TEST_CASE("antiderivative basics and oracle") {
    const Grid1D tiny = make_grid_unchecked(1.0, 3);
    Field one(tiny, 1.0);
    const Field ad = antiderivative_from_left(one);
    CHECK(ad[0] == 0.0);
    CHECK(ad[1] == doctest::Approx(1.0));
    CHECK(ad[2] == doctest::Approx(2.0));

    const Grid1D g = make_grid(200.0, 4001);
    Field zero(g);
    const Field adz = antiderivative_from_left(zero);
    for (int i = 0; i < g.n_nodes; ++i) CHECK(adz[i] == 0.0);

    // Gaussian: right-end value vs the closed form sqrt(2 pi) erf(200/sqrt(2))
    const Field gau = Field::from_fn(g, [](double x) { return std::exp(-0.5 * x * x); });
    const Field adg = antiderivative_from_left(gau);
    const double expected = std::sqrt(2.0 * M_PI);  // tails below round-off at |x|=200
    CHECK(std::fabs(adg[g.n_nodes - 1] - expected) < 1e-10);
}

TEST_CASE("norms") {
    const Grid1D g = make_grid(2.0, 33);
    Field zero(g);
    const Norms nz = norms(zero);
    CHECK(nz.l2 == 0.0);
    CHECK(nz.linf == 0.0);
    CHECK(nz.l1 == 0.0);

    Field c(g, -3.0);
    const Norms nc = norms(c);
    CHECK(nc.l2 == doctest::Approx(3.0 * std::sqrt(4.0)).epsilon(1e-12));
    CHECK(nc.linf == 3.0);
    CHECK(nc.l1 == doctest::Approx(3.0 * 4.0).epsilon(1e-12));

    const Grid1D gl = make_grid(200.0, 16385);
    const Field e2 = Field::from_fn(gl, [](double x) { return std::exp(-x * x); });
    CHECK(std::fabs(norms(e2).l2 - std::pow(M_PI / 2.0, 0.25)) < 1e-8);
}

TEST_CASE("norm homogeneity property") {
    auto g = make_grid(5.0, 257);
    auto rg = testsup::rng(7);
    Field f = Field::from_fn(g, [&](double x) { return std::sin(3 * x) + testsup::uniform(rg, -0.1, 0.1); });
    for (double c : {-2.5, 0.0, 1e-3, 17.0}) {
        const Field cf = c * f;
        CHECK(norms(cf).l2 == doctest::Approx(std::fabs(c) * norms(f).l2).epsilon(1e-12));
        CHECK(norms(cf).linf == doctest::Approx(std::fabs(c) * norms(f).linf).epsilon(1e-12));
    }
}

TEST_CASE("antiderivative linearity property") {
    auto g = make_grid(3.0, 129);
    auto rg = testsup::rng(11);
    Field a = Field::from_fn(g, [&](double) { return testsup::uniform(rg, -1, 1); });
    Field b = Field::from_fn(g, [&](double) { return testsup::uniform(rg, -1, 1); });
    const Field lhs = antiderivative_from_left(a + b);
    const Field rhs = antiderivative_from_left(a) + antiderivative_from_left(b);
    for (int i = 0; i < g.n_nodes; ++i) CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-12));
}

TEST_CASE("derivative stencils") {
    const Grid1D g = make_grid(1.0, 64);
    const Field lin = Field::from_fn(g, [](double x) { return 2.0 * x - 1.0; });
    const Field dlin = derivative(lin, 1);
    for (int i = 0; i < g.n_nodes; ++i) CHECK(std::fabs(dlin[i] - 2.0) < 1e-12);

    const Grid1D gf = make_grid(1.0, 2001);  // dx = 1e-3
    const Field s = Field::from_fn(gf, [](double x) { return std::sin(x); });
    const Field ds = derivative(s, 1);
    double err = 0.0;
    for (int i = 0; i < gf.n_nodes; ++i)
        err = std::max(err, std::fabs(ds[i] - std::cos(gf.x[static_cast<size_t>(i)])));
    CHECK(err < 1e-5);

    const Field dds = derivative(s, 2);
    double err2 = 0.0;
    for (int i = 0; i < gf.n_nodes; ++i)
        err2 = std::max(err2, std::fabs(dds[i] + std::sin(gf.x[static_cast<size_t>(i)])));
    CHECK(err2 < 1e-4);

    CHECK_THROWS_AS(derivative(s, 3), std::invalid_argument);
}

TEST_CASE("derivative of antiderivative recovers f at order >= 1.9") {
    auto f_fn = [](double x) { return std::exp(-x * x) * std::cos(2.0 * x); };
    auto interior_err = [&](int n) {
        const Grid1D g = make_grid(4.0, n);
        const Field f = Field::from_fn(g, f_fn);
        const Field rec = derivative(antiderivative_from_left(f), 1);
        double e = 0.0;
        for (int i = 1; i < g.n_nodes - 1; ++i) e = std::max(e, std::fabs(rec[i] - f[i]));
        return e;
    };
    const double e1 = interior_err(257);
    const double e2 = interior_err(513);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 1.9);
}

TEST_CASE("gas and end states") {
    GasModel gas;
    CHECK_NOTHROW(gas.validate());
    GasModel bad = gas;
    bad.gamma = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    const EndStates e = make_end_states(gas, 1.0, 1.2, 1.0);
    CHECK(e.v_minus == doctest::Approx(1.0));
    CHECK(e.v_plus == doctest::Approx(1.2));
    CHECK(e.delta() == doctest::Approx(0.2));
    CHECK_NOTHROW(e.validate(gas));

    EndStates mismatched = e;
    mismatched.v_plus = 1.3;  // breaks the pressure match
    CHECK_THROWS_AS(mismatched.validate(gas), std::invalid_argument);

    // a = kappa p+ (gamma-1) / (gamma R^2) = 0.4 at the reference constants
    CHECK(gas.diffusion_coefficient(1.0) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("finite guard") {
    const Grid1D g = make_grid(1.0, 16);
    Field f(g, 1.0);
    CHECK_NOTHROW(ensure_finite(f, "f"));
    f[3] = std::nan("");
    CHECK_THROWS_AS(ensure_finite(f, "f"), InvalidState);
}
