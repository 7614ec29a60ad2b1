#include <cmath>

#include "doctest.h"
#include "ultraslow/green.hpp"

using namespace ultraslow;

namespace {
const KernelSet flat(Weight::constant(1.0));
const KernelSet linear(Weight::power_law(1.0, 1.0));
}  // namespace

// reference values from 30-digit Talbot inversion of (1/2) sqrt(K / p) e^{-x sqrt(p K)}
TEST_CASE("Z for n = 1 against reference values") {
    CHECK(z_eval(flat, 1, 1.0, 0.5).value == doctest::Approx(0.27844688715538027185).epsilon(1e-10));
    CHECK(z_eval(flat, 1, 1.0, 2.0).value == doctest::Approx(0.083193497721358227313).epsilon(1e-10));
    CHECK(z_eval(flat, 1, 0.1, 0.5).value == doctest::Approx(0.39441243543334718044).epsilon(1e-10));
    CHECK(z_eval(flat, 1, 0.1, 2.0).value == doctest::Approx(0.022136849033141129488).epsilon(1e-10));
    CHECK(z_eval(linear, 1, 1.0, 0.5).value == doctest::Approx(0.21129596351397000849).epsilon(1e-10));
    CHECK(z_eval(linear, 1, 1.0, 2.0).value == doctest::Approx(0.10269180051968641599).epsilon(1e-10));
    CHECK(z_eval(linear, 1, 0.1, 0.5).value == doctest::Approx(0.37103928088585652273).epsilon(1e-10));
    CHECK(z_eval(linear, 1, 0.1, 2.0).value == doctest::Approx(0.040089831342654824990).epsilon(1e-10));
}

TEST_CASE("transformed Z solves the radial Helmholtz equation") {
    const cplx p(1.3, 0.8);
    const cplx pk = flat.pK(p);
    for (int n = 1; n <= 3; ++n) {
        for (double r : {0.4, 1.5}) {
            const double h = 1e-3;
            auto z = [&](double x) { return z_laplace(flat, n, p, x); };
            const cplx d2 = (z(r + h) - 2.0 * z(r) + z(r - h)) / (h * h);
            const cplx d1 = (z(r + h) - z(r - h)) / (2.0 * h);
            const cplx lap = d2 + double(n - 1) / r * d1;
            CHECK(std::abs(lap - pk * z(r)) < 1e-5 * std::abs(pk * z(r)));
        }
        // E = Z / K in the transform domain
        CHECK(std::abs(e_laplace(flat, n, p, 0.7) * flat.K(p) - z_laplace(flat, n, p, 0.7)) <
              1e-14 * std::abs(z_laplace(flat, n, p, 0.7)));
    }
}

TEST_CASE("Z is positive and integrates to one") {
    for (int n = 1; n <= 3; ++n) {
        const double t = 0.7;
        const ContourGreen cg(linear, t);
        for (double r : {0.05, 0.5, 1.0, 2.0, 3.0}) CHECK(cg.z(n, r).value > 0.0);
        const auto m = z_mass(linear, n, t);
        CHECK(m.value == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("contour and subordination paths agree") {
    for (int n = 1; n <= 3; ++n)
        for (double t : {0.2, 1.5}) {
            const ContourGreen cg(flat, t);
            const SubordinationDensity g(flat, t);
            for (double r : {0.3, 1.0, 2.5}) {
                const auto a = cg.z(n, r), b = z_subordinate(g, n, r);
                CHECK(std::abs(a.value - b.value) <= 1e-8 * a.value + 10.0 * (a.error + b.error));
            }
        }
}

TEST_CASE("subordination density: G(0, t) = k(t), unit mass, non-negative") {
    for (double t : {0.3, 2.0}) {
        const SubordinationDensity g(linear, t);
        CHECK(g(1e-12 * t).value == doctest::Approx(linear.k(t)).epsilon(1e-8));
        CHECK(g_mass(g).value == doctest::Approx(1.0).epsilon(1e-9));
        for (double u = 0.05 * t; u < g.tail(); u += 0.05 * t) CHECK(g(u).value > -1e-12);
    }
}

TEST_CASE("mean squared displacement") {
    for (int n = 1; n <= 3; ++n) {
        const double t = 1.0;
        const auto m = msd(flat, n, t);
        const auto d = msd_direct(flat, n, t);
        CHECK(m.value == doctest::Approx(d.value).epsilon(1e-8));
        CHECK(m.value == doctest::Approx(2.0 * n * flat.kappa_integral(t).value).epsilon(1e-12));
    }
    // grows more slowly than any power of t
    const double a = msd(flat, 1, 1e4).value, b = msd(flat, 1, 1e6).value;
    CHECK(b / a < std::pow(100.0, 0.2));
    CHECK(b > a);
}

TEST_CASE("E integrates to kappa") {
    const double t = 0.8;
    for (int n = 1; n <= 3; ++n)
        CHECK(e_mass(flat, n, t).value == doctest::Approx(flat.kappa(t).value).epsilon(1e-8));
}

TEST_CASE("Z at the origin is positive and decreasing in t") {
    double prev = INFINITY;
    for (double t : {1e-4, 1e-2, 1.0, 10.0}) {
        const double z = z_at_origin(flat, t).value;
        CHECK(z > 0.0);
        CHECK(z < prev);
        prev = z;
    }
    CHECK(z_at_origin(flat, 1.0).value == doctest::Approx(ContourGreen(flat, 1.0).z(1, 1e-12).value).epsilon(1e-8));
}

TEST_CASE("radial integral of a Gaussian") {
    for (int n = 1; n <= 3; ++n) {
        const auto q = radial_integral([](double r) { return std::exp(-0.5 * r * r); }, n, 0, 1e-12);
        CHECK(q.value == doctest::Approx(std::pow(2.0 * M_PI, 0.5 * n)).epsilon(1e-11));
    }
    CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI));
}
