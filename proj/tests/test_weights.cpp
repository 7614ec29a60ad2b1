#include <cmath>

#include "doctest.h"
#include "ultraslow/weight.hpp"

using namespace ultraslow;

TEST_CASE("constant and power-law weights") {
    const auto c = Weight::constant(2.5);
    CHECK(c.kind() == WeightKind::Constant);
    CHECK(c(0.3) == 2.5);
    CHECK(c.at_one() == 2.5);
    CHECK(c.derivative(0.5) == 0.0);

    const auto p = Weight::power_law(3.0, 1.5);
    CHECK(p(0.0) == 0.0);
    CHECK(p(0.25) == doctest::Approx(3.0 * std::pow(0.25, 1.5)).epsilon(1e-15));
    CHECK(p.leading_coefficient() == 3.0);
    CHECK(p.derivative(0.25) == doctest::Approx(4.5 * std::sqrt(0.25)).epsilon(1e-14));
}

TEST_CASE("product weight alpha^nu p(alpha)") {
    const auto w = Weight::product(0.5, {1.0, 2.0, -0.5});
    const double a = 0.7;
    CHECK(w(a) == doctest::Approx(std::sqrt(a) * (1.0 + 2.0 * a - 0.5 * a * a)).epsilon(1e-15));
    CHECK(w.rho() > 0.0);
    CHECK(w.leading_coefficient() == doctest::Approx(1.0));
    // int_0^1 alpha^{1/2} (1 + 2a - a^2/2) = 2/3 + 4/5 - 1/7
    CHECK(w.order_integral([](double) { return 1.0; }) ==
          doctest::Approx(2.0 / 3.0 + 0.8 - 1.0 / 7.0).epsilon(1e-13));
    CHECK_THROWS_AS(Weight::product(0.0, {1.0, -2.0}), DomainError);
    CHECK_THROWS_AS(Weight::product(-0.1, {1.0}), DomainError);
}

TEST_CASE("tabulated weight stays within neighbouring samples") {
    const std::vector<double> s{0.0, 1.0, 1.0, 3.0, 0.5};
    const auto w = Weight::tabulated(s, 0.0);
    for (int i = 0; i <= 400; ++i) {
        const double a = i / 400.0;
        const int j = std::min(3, int(a * 4));
        const double lo = std::min(s[j], s[j + 1]), hi = std::max(s[j], s[j + 1]);
        CHECK(w(a) >= lo - 1e-15);
        CHECK(w(a) <= hi + 1e-15);
    }
    CHECK(w(0.25) == doctest::Approx(1.0));
    CHECK(w(0.5) == doctest::Approx(1.0));  // flat between equal samples
    CHECK(w(0.375) == doctest::Approx(1.0));
    CHECK_THROWS_AS(Weight::tabulated({0.0, 0.0}, 0.0), DomainError);
    CHECK_THROWS_AS(Weight::tabulated({1.0, -1.0}, 0.0), DomainError);
}

TEST_CASE("evaluation outside [0, 1] throws") {
    const auto w = Weight::constant(1.0);
    CHECK_THROWS_AS(w(-1e-12), DomainError);
    CHECK_THROWS_AS(w(1.0 + 1e-12), DomainError);
    CHECK_THROWS_AS(Weight::constant(0.0), DomainError);
    CHECK_THROWS_AS(Weight::power_law(1.0, -0.5), DomainError);
}

TEST_CASE("order integral is linear in f") {
    const auto w = Weight::power_law(1.0, 1.0);
    auto f = [](double a) { return std::exp(a); };
    auto g = [](double a) { return std::cos(3.0 * a); };
    const double lhs = w.order_integral([&](double a) { return 2.0 * f(a) - 0.5 * g(a); });
    const double rhs = 2.0 * w.order_integral(f) - 0.5 * w.order_integral(g);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    // int_0^1 a e^a = 1
    CHECK(w.order_integral(f) == doctest::Approx(1.0).epsilon(1e-14));
}
