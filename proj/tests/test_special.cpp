#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ultraslow/special.hpp"

using namespace ultraslow;
using V = McdonaldOrder::Value;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

// reference values from 40-digit arbitrary precision
TEST_CASE("gamma and its reciprocal") {
    CHECK(ultraslow::gamma(0.25) == doctest::Approx(3.6256099082219083119).epsilon(1e-14));
    CHECK(ultraslow::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(ultraslow::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(rgamma(0.0) == 0.0);
    CHECK(rgamma(0.25) * ultraslow::gamma(0.25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(ultraslow::gamma(0.0), DomainError);
    CHECK_THROWS_AS(ultraslow::gamma(-1.5), DomainError);
    for (double x = 0.1; x < 8.0; x += 0.37)
        CHECK(ultraslow::gamma(x + 1.0) == doctest::Approx(x * ultraslow::gamma(x)).epsilon(1e-13));
}

TEST_CASE("McDonald function reference values") {
    CHECK(mcdonald_k(V::Zero, 2.5).real() == doctest::Approx(0.062347553200366186).epsilon(1e-14));
    CHECK(rel(mcdonald_k(V::One, cplx(0.3, 0.4)),
              cplx(0.83077540116765613741, -1.7349694575503870028)) < 1e-13);
    CHECK(rel(mcdonald_k(V::Zero, cplx(10.0, -3.0)),
              cplx(-1.7416912585968742049e-05, -1.6957463039607931233e-08)) < 1e-12);
    CHECK(mcdonald_k(V::One, 40.0).real() == doctest::Approx(8.4971319548610386508e-19).epsilon(1e-13));
    // across the negative real axis through analytic continuation
    CHECK(rel(mcdonald_k(V::Zero, cplx(-1.5, 0.2)),
              cplx(-0.40771522297999197885, -5.0565535324292901312)) < 1e-12);
}

TEST_CASE("half-integer orders are closed form") {
    for (double x : {0.01, 0.7, 5.0, 60.0}) {
        const cplx z(x, 0.3 * x);
        const cplx ref = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z);
        CHECK(rel(mcdonald_k(V::Half, z), ref) < 1e-15);
        CHECK(rel(mcdonald_k(V::MinusHalf, z), ref) < 1e-15);
    }
}

TEST_CASE("McDonald functions are continuous across regime switches") {
    for (double r : {2.0, 25.0}) {
        for (double arg : {0.0, 0.5, 1.2}) {
            const cplx a = std::polar(r * (1.0 - 1e-13), arg), b = std::polar(r * (1.0 + 1e-13), arg);
            CHECK(rel(mcdonald_k(V::Zero, a), mcdonald_k(V::Zero, b)) < 1e-10);
            CHECK(rel(mcdonald_k(V::One, a), mcdonald_k(V::One, b)) < 1e-10);
        }
    }
}

TEST_CASE("McDonald recurrence and Wronskian") {
    // K_1'(z) relation: K_0 = -K_1' - K_1 / z checked by central differences
    for (double x : {0.4, 3.0, 12.0, 30.0}) {
        const cplx z(x, 0.5);
        const double h = 2e-5;
        const cplx d = (mcdonald_k(V::One, z + h) - mcdonald_k(V::One, z - h)) / (2.0 * h);
        CHECK(rel(-d - mcdonald_k(V::One, z) / z, mcdonald_k(V::Zero, z)) < 1e-8);
        // I_0 K_1 + I_1 K_0 = 1 / z
        const cplx w = bessel_i(0, z) * mcdonald_k(V::One, z) + bessel_i(1, z) * mcdonald_k(V::Zero, z);
        CHECK(rel(w, 1.0 / z) < 1e-11);
    }
}

TEST_CASE("McdonaldOrder validation") {
    CHECK(McdonaldOrder::for_dimension(1).value() == V::MinusHalf);
    CHECK(McdonaldOrder::for_dimension(2).value() == V::Zero);
    CHECK(McdonaldOrder::for_dimension(3).value() == V::Half);
    CHECK(McdonaldOrder(1.0).nu() == 1.0);
    CHECK_THROWS_AS(McdonaldOrder(0.3), DomainError);
    CHECK_THROWS_AS(McdonaldOrder::for_dimension(5), DomainError);
}

TEST_CASE("lower incomplete gamma") {
    CHECK(lower_incomplete_gamma(0.5, 2.0).real() == doctest::Approx(1.6918067329451983).epsilon(1e-14));
    CHECK(rel(lower_incomplete_gamma(0.3, cplx(1.0, 2.0)),
              cplx(3.1450562032310259041, 0.091766330032922177202)) < 1e-13);
    // series and continued fraction agree at the switch
    const double s = 0.7, z = s + 10.0;
    CHECK(rel(lower_incomplete_gamma(s, z * (1.0 - 1e-12)), lower_incomplete_gamma(s, z * (1.0 + 1e-12))) <
          1e-11);
    // s = 1: 1 - e^{-z}
    CHECK(rel(lower_incomplete_gamma(1.0, cplx(3.0, 1.0)), 1.0 - std::exp(-cplx(3.0, 1.0))) < 1e-14);
}
