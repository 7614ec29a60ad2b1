#include <cmath>

#include "doctest.h"
#include "ultraslow/relaxation.hpp"

using namespace ultraslow;

namespace {
const KernelSet flat(Weight::constant(1.0));
const KernelSet linear(Weight::power_law(1.0, 1.0));
}  // namespace

// reference values from 40-digit Talbot inversion of K / (p K + 1)
TEST_CASE("u_{-1} against reference values") {
    const RelaxationProblem a(flat, -1.0), b(linear, -1.0);
    CHECK(u_lambda(a, 0.5).value == doctest::Approx(0.50689475322824088619).epsilon(1e-10));
    CHECK(u_lambda(a, 5.0).value == doctest::Approx(0.26601597737870655000).epsilon(1e-10));
    CHECK(u_lambda(b, 0.5).value == doctest::Approx(0.32302040844281735833).epsilon(1e-10));
    CHECK(u_lambda(b, 5.0).value == doctest::Approx(0.087742301533858144652).epsilon(1e-10));
}

TEST_CASE("trivial cases are exact") {
    const RelaxationProblem zero(flat, 0.0), neg(flat, -2.0);
    CHECK(u_lambda(zero, 3.0).value == 1.0);
    CHECK(u_lambda(neg, 0.0).value == 1.0);
}

TEST_CASE("lambda < 0: completely monotone decay, paths agree") {
    for (const KernelSet* ks : {&flat, &linear}) {
        const RelaxationProblem p(*ks, -1.5);
        double prev = 1.0;
        for (double y = -6.0; y <= 4.0; y += 0.5) {
            const double t = std::pow(10.0, y);
            const double u = u_lambda(p, t).value;
            CHECK(u > 0.0);
            CHECK(u < prev);
            prev = u;
            if (y >= -2.0) {
                const auto s = u_lambda_spectral(p, t), c = u_lambda_contour(p, t);
                CHECK(std::abs(s.value - c.value) <= 10.0 * (s.error + c.error) + 1e-9 * s.value);
            }
        }
    }
}

TEST_CASE("stronger damping decays faster") {
    for (double t : {0.1, 1.0, 10.0}) {
        const double a = u_lambda(RelaxationProblem(flat, -0.5), t).value;
        const double b = u_lambda(RelaxationProblem(flat, -2.0), t).value;
        CHECK(b < a);
    }
}

TEST_CASE("lambda > 0 grows like the real root exponential") {
    const RelaxationProblem p(flat, 1.0);
    CHECK(p.root > 0.0);
    const cplx pk = flat.pK(p.root);
    CHECK(pk.real() == doctest::Approx(1.0).epsilon(1e-12));
    double prev = 1.0;
    for (double t : {0.1, 1.0, 5.0, 20.0}) {
        const double u = u_lambda(p, t).value;
        CHECK(u > prev);
        prev = u;
    }
    const double r = std::log(u_lambda(p, 40.0).value / u_lambda(p, 30.0).value) / 10.0;
    CHECK(r == doctest::Approx(p.root).epsilon(1e-3));
}

TEST_CASE("long-time ratio settles") {
    const RelaxationProblem p(flat, -1.0);
    const double a = u_lambda_longtime_ratio(p, 1e6), b = u_lambda_longtime_ratio(p, 1e9);
    CHECK(std::abs(a - b) < 0.1 * std::abs(b));
    CHECK_THROWS_AS(u_lambda_longtime_ratio(RelaxationProblem(flat, 1.0), 100.0), DomainError);
}
