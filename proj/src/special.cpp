#include "ultraslow/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace ultraslow {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;

constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {
    // Valid for x >= 0.5.
    x -= 1.0;
    double a = kLanczos[0];
    const double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
    return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

bool on_cut(cplx z) { return z.imag() == 0.0 && z.real() <= 0.0; }

cplx k_half(cplx z) { return std::sqrt(kPi / (2.0 * z)) * std::exp(-z); }

// Ascending series, any |arg z| < pi.
cplx k_series(int n, cplx z) {
    const cplx q = 0.25 * z * z;
    const cplx log_half = std::log(0.5 * z);
    if (n == 0) {
        cplx term = 1.0, i0 = 1.0, rest = 0.0;
        double harmonic = 0.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / double(k * k);
            harmonic += 1.0 / k;
            i0 += term;
            rest += harmonic * term;
            if (std::abs(term) * (1.0 + harmonic) < 1e-18 * std::abs(i0)) break;
        }
        return -(log_half + kEulerGamma) * i0 + rest;
    }
    // n == 1
    cplx term = 1.0, i1 = 1.0;
    double psi_k1 = -kEulerGamma;        // psi(k + 1)
    double psi_k2 = 1.0 - kEulerGamma;   // psi(k + 2)
    cplx rest = psi_k1 + psi_k2;
    for (int k = 1; k < 200; ++k) {
        term *= q / double(k * (k + 1));
        psi_k1 += 1.0 / k;
        psi_k2 += 1.0 / (k + 1);
        i1 += term;
        rest += (psi_k1 + psi_k2) * term;
        if (std::abs(term) * (psi_k1 + psi_k2 + 1.0) < 1e-18 * std::abs(i1)) break;
    }
    return 1.0 / z + log_half * (0.5 * z) * i1 - 0.25 * z * rest;
}

// Steed's method (Temme's CF2) for K_0 and K_1, Re z > 0, |z| >= 2.
std::pair<cplx, cplx> k_steed(cplx z) {
    cplx b = 2.0 * (1.0 + z);
    cplx d = 1.0 / b;
    cplx h = d, delh = d;
    cplx q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    cplx q = a1, c = a1;
    double a = -a1;
    cplx s = 1.0 + q * delh;
    for (int i = 2; i < 20000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / double(i);
        const cplx qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const cplx dels = q * delh;
        s += dels;
        if (std::abs(dels) < 1e-17 * std::abs(s)) break;
    }
    h = a1 * h;
    const cplx k0 = std::sqrt(kPi / (2.0 * z)) * std::exp(-z) / s;
    const cplx k1 = k0 * (z + 0.5 - h) / z;
    return {k0, k1};
}

cplx k_asymptotic(int n, cplx z) {
    const double mu = 4.0 * n * n;
    cplx term = 1.0, sum = 1.0;
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * z);
        const double size = std::abs(term);
        if (k > 8 && size > last) break;
        sum += term;
        last = size;
        if (size < 1e-17 * std::abs(sum)) break;
    }
    return std::sqrt(kPi / (2.0 * z)) * std::exp(-z) * sum;
}

cplx k_integer_right(int n, cplx z) {
    const double r = std::abs(z);
    if (r < 2.0) return k_series(n, z);
    if (r < 25.0) {
        auto [k0, k1] = k_steed(z);
        return n == 0 ? k0 : k1;
    }
    return k_asymptotic(n, z);
}

}  // namespace

double gamma(double x) {
    if (!(x > 0.0)) throw DomainError("gamma: pole or non-positive argument");
    if (x < 0.5) return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
    return lanczos_gamma(x);
}

double rgamma(double x) {
    if (x < 0.0) throw DomainError("rgamma: negative argument");
    if (x == 0.0) return 0.0;
    if (x < 1.0) return x / gamma(1.0 + x);
    return 1.0 / gamma(x);
}

McdonaldOrder::McdonaldOrder(double nu) {
    if (nu == -0.5) value_ = Value::MinusHalf;
    else if (nu == 0.0) value_ = Value::Zero;
    else if (nu == 0.5) value_ = Value::Half;
    else if (nu == 1.0) value_ = Value::One;
    else throw DomainError("McDonald order must be one of -1/2, 0, 1/2, 1");
}

McdonaldOrder McdonaldOrder::for_dimension(int n) {
    if (n < 1 || n > 4) throw DomainError("dimension must be 1..4");
    return McdonaldOrder(0.5 * n - 1.0);
}

double McdonaldOrder::nu() const {
    switch (value_) {
        case Value::MinusHalf: return -0.5;
        case Value::Zero: return 0.0;
        case Value::Half: return 0.5;
        case Value::One: return 1.0;
    }
    return 0.0;
}

cplx bessel_i(int n, cplx z) {
    if (n != 0 && n != 1) throw DomainError("bessel_i: order must be 0 or 1");
    const double r = std::abs(z);
    if (r < 12.0) {
        const cplx q = 0.25 * z * z;
        cplx term = 1.0, sum = 1.0;
        for (int k = 1; k < 300; ++k) {
            term *= q / double(k * (k + n));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return n == 0 ? sum : 0.5 * z * sum;
    }
    // Periodic trapezoid rule for (1/2pi) int_0^{2pi} e^{z cos t} cos(n t) dt.
    const int m = 2 * int(std::ceil(0.5 * (r + 60.0)));
    cplx sum = 0.0;
    for (int j = 0; j < m; ++j) {
        const double t = 2.0 * kPi * j / m;
        sum += std::exp(z * std::cos(t)) * std::cos(n * t);
    }
    return sum / double(m);
}

cplx mcdonald_k(McdonaldOrder order, cplx z) {
    if (z == cplx(0.0) || on_cut(z)) throw DomainError("mcdonald_k: z on the branch cut");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("mcdonald_k: non-finite argument");
    const auto v = order.value();
    if (v == McdonaldOrder::Value::MinusHalf || v == McdonaldOrder::Value::Half) return k_half(z);
    const int n = v == McdonaldOrder::Value::Zero ? 0 : 1;
    if (z.real() > 0.0 || std::abs(z) < 2.0) return k_integer_right(n, z);
    const cplx w = -z;
    const cplx jump = cplx(0.0, kPi) * bessel_i(n, w);
    const double parity = n == 0 ? 1.0 : -1.0;
    return z.imag() > 0.0 ? parity * k_integer_right(n, w) - jump
                          : parity * k_integer_right(n, w) + jump;
}

cplx lower_incomplete_gamma(double s, cplx z) {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("lower_incomplete_gamma: s must be in (0, 1]");
    if (!(z.real() > 0.0)) throw DomainError("lower_incomplete_gamma: Re z must be positive");
    const cplx prefactor = std::exp(s * std::log(z) - z);
    if (std::abs(z) < s + 10.0) {
        cplx term = 1.0 / s, sum = term;
        for (int k = 1; k < 1000; ++k) {
            term *= z / (s + k);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return prefactor * sum;
    }
    // Modified Lentz evaluation of the continued fraction for Gamma(s, z).
    constexpr double tiny = 1e-300;
    cplx b = z + 1.0 - s;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const cplx delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return gamma(s) - prefactor * h;
}

}  // namespace ultraslow
