#include <cmath>

#include "doctest.h"
#include "ultraslow/transform.hpp"

using namespace ultraslow;

TEST_CASE("contour inversion of elementary transforms") {
    for (double t : {0.01, 1.0, 30.0}) {
        const auto c = Contour::for_time(t);
        auto e = invert_on_contour([](cplx p) { return 1.0 / (p + 2.0); }, c, t, 1e-12);
        CHECK(e.value.real() == doctest::Approx(std::exp(-2.0 * t)).epsilon(1e-11));
        auto s = invert_on_contour([](cplx p) { return 1.0 / std::sqrt(p); }, c, t, 1e-12);
        CHECK(s.value.real() == doctest::Approx(1.0 / std::sqrt(M_PI * t)).epsilon(1e-12));
        CHECK(s.error < 1e-10 * std::abs(s.value));
    }
}

TEST_CASE("contour inversion is linear") {
    const double t = 2.0;
    const auto c = Contour::for_time(t);
    auto F = [](cplx p) { return 1.0 / ((p + 1.0) * (p + 1.0)); };
    auto G = [](cplx p) { return std::log(p) / p; };
    const auto both = invert_on_contour([&](cplx p) { return 3.0 * F(p) - G(p); }, c, t, 1e-12);
    const auto f = invert_on_contour(F, c, t, 1e-12), g = invert_on_contour(G, c, t, 1e-12);
    CHECK(std::abs(both.value - (3.0 * f.value - g.value)) < 1e-12);
    CHECK(f.value.real() == doctest::Approx(t * std::exp(-t)).epsilon(1e-11));
    // L^{-1}[log p / p] = -gamma_E - log t
    CHECK(g.value.real() == doctest::Approx(-0.57721566490153286 - std::log(t)).epsilon(1e-11));
}

TEST_CASE("non-finite transform on the contour throws") {
    auto bad = [](cplx) { return cplx(NAN, 0.0); };
    CHECK_THROWS_AS(invert_on_contour(bad, Contour::for_time(1.0), 1.0), DomainError);
    CHECK_THROWS_AS(invert_on_contour([](cplx p) { return p; }, Contour::for_time(1.0), -1.0),
                    DomainError);
}

TEST_CASE("Bromwich inversion of a slowly decaying transform") {
    const double t = 0.5;
    auto e = invert_bromwich([](cplx p) { return 1.0 / std::sqrt(p); }, 1.0 / t, t, 1e7, 1e-10);
    CHECK(e.value.real() == doctest::Approx(1.0 / std::sqrt(M_PI * t)).epsilon(1e-9));
    auto r = invert_bromwich([](cplx p) { return 1.0 / (p + 1.0); }, 1.0, 3.0, 1e7, 1e-10);
    CHECK(r.value.real() == doctest::Approx(std::exp(-3.0)).epsilon(1e-9));
}

TEST_CASE("spectral densities are non-negative") {
    for (const auto& w : {Weight::constant(1.0), Weight::power_law(1.0, 1.0),
                          Weight::product(0.5, {1.0, 1.0})}) {
        for (double y = -30.0; y <= 30.0; y += 0.5) {
            const double r = std::exp(y);
            CHECK(real_axis_limit_density(w, SpectralMode::kappa(), r) >= 0.0);
            CHECK(real_axis_limit_density(w, SpectralMode::relaxation(-1.0), r) >= 0.0);
        }
    }
}

TEST_CASE("cut limit matches the direct power integral") {
    const auto w = Weight::power_law(1.0, 1.0);
    for (double y : {-5.0, 0.0, 2.5}) {
        const cplx p = std::polar(std::exp(y), M_PI);
        const cplx direct = w.order_integral([&](double a) { return std::pow(p, a); });
        CHECK(std::abs(cut_limit(w, y) - direct) < 1e-13 * std::abs(direct) + 1e-15);
    }
}
