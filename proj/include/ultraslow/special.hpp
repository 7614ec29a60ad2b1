#pragma once

#include <complex>

#include "ultraslow/errors.hpp"

namespace ultraslow {

using cplx = std::complex<double>;

/// Gamma function for x > 0 (Lanczos, g = 7). Throws DomainError at x <= 0.
double gamma(double x);

/// 1 / Gamma(x) for x >= 0; exactly 0 at x = 0.
double rgamma(double x);

/// Order of a McDonald function K_nu restricted to nu = n/2 - 1 for n = 1..4.
class McdonaldOrder {
public:
    enum class Value { MinusHalf, Zero, Half, One };

    /// Throws DomainError unless nu is one of -1/2, 0, 1/2, 1.
    explicit McdonaldOrder(double nu);
    constexpr McdonaldOrder(Value v) : value_(v) {}
    /// Order n/2 - 1 for spatial dimension n in 1..4.
    static McdonaldOrder for_dimension(int n);

    Value value() const { return value_; }
    double nu() const;

private:
    Value value_;
};

/// McDonald (modified Bessel, second kind) function K_nu(z) on |arg z| < pi.
///
/// Half-integer orders use the closed form sqrt(pi / 2z) e^{-z}. Integer orders use
/// the ascending series for |z| < 2, Steed's continued fraction for 2 <= |z| < 25 and
/// the Hankel asymptotic expansion beyond; Re z < 0 is reached through the analytic
/// continuation K_n(w e^{+-i pi}) = (-1)^n K_n(w) -+ i pi I_n(w).
cplx mcdonald_k(McdonaldOrder order, cplx z);

/// Modified Bessel function of the first kind I_n(z), n in {0, 1}.
cplx bessel_i(int n, cplx z);

/// Lower incomplete gamma function gamma(s, z) = int_0^z t^{s-1} e^{-t} dt for
/// s in (0, 1] and Re z > 0. Series for |z| < s + 10, continued fraction otherwise.
cplx lower_incomplete_gamma(double s, cplx z);

}  // namespace ultraslow
