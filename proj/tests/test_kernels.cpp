#include <cmath>

#include "doctest.h"
#include "ultraslow/kernels.hpp"

using namespace ultraslow;

namespace {
const KernelSet& flat() {
    static const KernelSet ks(Weight::constant(1.0));
    return ks;
}
const KernelSet& linear() {
    static const KernelSet ks(Weight::power_law(1.0, 1.0));
    return ks;
}
}  // namespace

// reference values from 40-digit arbitrary precision quadrature and Talbot inversion
TEST_CASE("k against reference values") {
    CHECK(flat().k(1e-6) == doctest::Approx(5569.4422006781082955).epsilon(1e-13));
    CHECK(flat().k(0.5) == doctest::Approx(0.69414001223264400520).epsilon(1e-13));
    CHECK(flat().k(3.0) == doctest::Approx(0.38469420550151587613).epsilon(1e-13));
    CHECK(flat().k(1e4) == doctest::Approx(0.10019296328982985847).epsilon(1e-13));
    CHECK(linear().k(1e-6) == doctest::Approx(4746.9278067264636412).epsilon(1e-13));
    CHECK(linear().k(0.5) == doctest::Approx(0.26305959460224350957).epsilon(1e-13));
    CHECK(linear().k(3.0) == doctest::Approx(0.10909526348291535494).epsilon(1e-13));
    CHECK(linear().k(1e4) == doctest::Approx(0.0098167418905417852211).epsilon(1e-13));
}

TEST_CASE("K against reference values and closed form") {
    const cplx p(2.0, 1.0);
    CHECK(std::abs(flat().K(p) - cplx(0.66728471559872854973, -0.13592939754314661001)) < 1e-14);
    CHECK(std::abs(linear().K(p) - cplx(0.38347784817475473580, -0.052029580693212273332)) < 1e-14);
    CHECK(flat().K(0.1).real() == doctest::Approx(3.9086503371292663020).epsilon(1e-14));
    CHECK(linear().K(0.1).real() == doctest::Approx(1.2632107912012735020).epsilon(1e-14));
    // mu = 1: K(p) = (p - 1) / (p log p)
    for (double x : {1e-8, 0.3, 7.0, 1e9}) {
        const cplx q(x, 0.5 * x);
        CHECK(std::abs(flat().K(q) - (q - 1.0) / (q * std::log(q))) < 1e-13 * std::abs(flat().K(q)));
    }
    CHECK_THROWS_AS(flat().K(cplx(-1.0, 0.0)), DomainError);
}

TEST_CASE("kappa against reference values") {
    CHECK(flat().kappa(0.01).value == doctest::Approx(4.0785114434564258466).epsilon(1e-10));
    CHECK(flat().kappa(1.0).value == doctest::Approx(0.59634736232319407434).epsilon(1e-10));
    CHECK(flat().kappa(10.0).value == doctest::Approx(0.091563333939788081876).epsilon(1e-10));
    CHECK(linear().kappa(0.01).value == doctest::Approx(5.3090965001007768564).epsilon(1e-10));
    CHECK(linear().kappa(1.0).value == doctest::Approx(1.5405600054108400424).epsilon(1e-10));
    CHECK(linear().kappa(10.0).value == doctest::Approx(0.48819708917189795280).epsilon(1e-10));
}

TEST_CASE("k and kappa are positive and decreasing") {
    for (const KernelSet* ks : {&flat(), &linear()}) {
        double pk = INFINITY, pkap = INFINITY;
        for (double y = -12.0; y <= 6.0; y += 0.5) {
            const double s = std::pow(10.0, y);
            const double k = ks->k(s);
            CHECK(k > 0.0);
            CHECK(k < pk);
            CHECK(ks->k_prime(s) < 0.0);
            pk = k;
            if (y >= -6.0) {
                const double kap = ks->kappa_spectral(s).value;
                CHECK(kap > 0.0);
                CHECK(kap < pkap);
                pkap = kap;
            }
        }
    }
}

TEST_CASE("Sonine identity k * kappa = 1") {
    for (const KernelSet* ks : {&flat(), &linear()})
        for (double t : {1e-4, 0.1, 1.0, 50.0}) {
            const auto e = ks->sonine(t);
            CHECK(e.value == doctest::Approx(1.0).epsilon(1e-10));
        }
}

TEST_CASE("k' is the derivative of k and k_integral its antiderivative") {
    const auto& ks = linear();
    for (double s : {1e-3, 0.2, 4.0}) {
        const double h = 1e-5 * s;
        CHECK(ks.k_prime(s) == doctest::Approx((ks.k(s + h) - ks.k(s - h)) / (2 * h)).epsilon(1e-8));
        CHECK(ks.k_integral(s, 2.0 * s) ==
              doctest::Approx(ks.k_integral_log(std::log(2.0 * s)) - ks.k_integral_log(std::log(s)))
                  .epsilon(1e-12));
        CHECK(ks.s_k(std::log(s)) == doctest::Approx(s * ks.k(s)).epsilon(1e-13));
    }
    // int_0^1 k = int mu / Gamma(2 - alpha)
    const double direct = ks.weight().order_integral([](double a) { return 1.0 / std::tgamma(2.0 - a); });
    CHECK(ks.k_integral_log(0.0) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("kappa integral against spectral kappa") {
    const auto& ks = flat();
    const double a = 0.5, b = 1.5;
    const auto [m0, m1] = ks.kappa_moments(a, b);
    CHECK(m0 == doctest::Approx(ks.kappa_integral(b).value - ks.kappa_integral(a).value).epsilon(1e-11));
    CHECK(m1 > 0.0);
    CHECK(m1 < (b - a) * m0);
}
