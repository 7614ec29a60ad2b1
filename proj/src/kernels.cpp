#include "ultraslow/kernels.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "ultraslow/quadrature.hpp"
#include "ultraslow/special.hpp"

namespace ultraslow {
namespace {

constexpr double kReach = 45.0;

// Sub-interval of [0,1] carrying the mass of an integrand of size e^{alpha c}.
std::pair<double, double> window(double c) {
    if (c < -kReach) return {0.0, kReach / -c};
    if (c > kReach) return {1.0 - kReach / c, 1.0};
    return {0.0, 1.0};
}

// -expm1(-x) / x
double phi1(double x) {
    if (x < 1e-8) return 1.0 - 0.5 * x;
    return -std::expm1(-x) / x;
}

// (1 - e^{-x}(1 + x)) / x^2
double phi2(double x) {
    if (x < 0.05) {
        double term = 1.0, sum = 0.0;
        for (int k = 2; k < 14; ++k) {
            term *= (k == 2 ? 0.5 : -x / k);
            sum += term * (k - 1);
        }
        return sum;
    }
    return (-std::expm1(-x) - x * std::exp(-x)) / (x * x);
}

}  // namespace

struct KernelSet::Cache {
    std::once_flag once;
    SpectralTable table;
};

KernelSet::KernelSet(Weight w, double rtol)
    : weight_(std::move(w)), rtol_(rtol), cache_(std::make_shared<Cache>()) {}

namespace {

// int_0^width f(beta) mu(1 - beta) d beta, split at tabulation knots.
template <class F>
double from_one(const Weight& w, F&& f, double width, double rtol) {
    auto g = [&](double b) { return f(b) * w.evaluate(1.0 - b); };
    std::vector<double> cuts{0.0};
    if (w.kind() == WeightKind::Tabulated) {
        const double h = 1.0 / double(w.samples().size() - 1);
        for (double c = h; c < width; c += h) cuts.push_back(c);
    }
    cuts.push_back(width);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto q = adaptive_gauss(g, cuts[i], cuts[i + 1], rtol, 1e-300, 80, 32);
        if (!q.converged) throw ConvergenceError("kernel integral did not converge", q.error);
        sum += q.value;
    }
    return sum;
}

}  // namespace

double KernelSet::s_k(double log_s) const {
    if (log_s < -kReach)
        return from_one(
            weight_, [&](double b) { return std::exp(b * log_s) * rgamma(b); }, kReach / -log_s,
            rtol_);
    const auto [lo, hi] = window(-log_s);
    return weight_.order_integral(
        [&](double a) { return std::exp((1.0 - a) * log_s) * rgamma(1.0 - a); }, rtol_, lo, hi);
}

double KernelSet::s2_k_prime(double log_s) const {
    if (log_s < -kReach)
        return -from_one(
            weight_, [&](double b) { return (1.0 - b) * std::exp(b * log_s) * rgamma(b); },
            kReach / -log_s, rtol_);
    const auto [lo, hi] = window(-log_s);
    return -weight_.order_integral(
        [&](double a) { return a * std::exp((1.0 - a) * log_s) * rgamma(1.0 - a); }, rtol_, lo,
        hi);
}

double KernelSet::k_integral_log(double log_b) const {
    if (log_b < -kReach)
        return from_one(
            weight_, [&](double b) { return std::exp(b * log_b) * rgamma(1.0 + b); },
            kReach / -log_b, rtol_);
    const auto [lo, hi] = window(-log_b);
    return weight_.order_integral(
        [&](double a) { return std::exp((1.0 - a) * log_b) * rgamma(2.0 - a); }, rtol_, lo, hi);
}

double KernelSet::k(double s) const {
    if (!(s >= 1e-300)) throw DomainError("k: s must be >= 1e-300");
    const double L = std::log(s);
    return std::exp(-L) * s_k(L);
}

double KernelSet::k_prime(double s) const {
    if (!(s >= 1e-150)) throw DomainError("k': s must be >= 1e-150");
    const double L = std::log(s);
    return std::exp(-2.0 * L) * s2_k_prime(L);
}

double KernelSet::k_integral(double a, double b) const {
    if (!(a >= 0.0 && b >= a)) throw DomainError("k_integral: need 0 <= a <= b");
    if (b == a) return 0.0;
    const double lb = std::log(b);
    const auto [lo, hi] = window(-lb);
    if (a == 0.0)
        return weight_.order_integral(
            [&](double al) { return std::exp((1.0 - al) * lb) * rgamma(2.0 - al); }, rtol_, lo, hi);
    const double ratio = std::log(a / b);
    return weight_.order_integral(
        [&](double al) {
            return -std::exp((1.0 - al) * lb) * std::expm1((1.0 - al) * ratio) * rgamma(2.0 - al);
        },
        rtol_, lo, hi);
}

double KernelSet::k_first_moment(double a, double b) const {
    if (!(a >= 0.0 && b >= a)) throw DomainError("k_first_moment: need 0 <= a <= b");
    const double h = b - a;
    if (h == 0.0) return 0.0;
    if (h < 0.1 * a) {
        // k is smooth on [a, b]; a short Gauss rule is exact to rounding.
        return gauss([&](double u) { return u * k(a + u); }, 0.0, h, 16);
    }
    const double lb = std::log(b);
    const auto [lo, hi] = window(-lb);
    if (a == 0.0)
        return weight_.order_integral(
            [&](double al) { return std::exp((2.0 - al) * lb) * rgamma(1.0 - al) / (2.0 - al); },
            rtol_, lo, hi);
    const double ratio = std::log(a / b);
    return weight_.order_integral(
        [&](double al) {
            const double d1 = -std::expm1((1.0 - al) * ratio);
            const double d2 = -std::expm1((2.0 - al) * ratio);
            const double b1 = std::exp((1.0 - al) * lb);
            return rgamma(1.0 - al) * b1 * b * d2 / (2.0 - al) - a * rgamma(2.0 - al) * b1 * d1;
        },
        rtol_, lo, hi);
}

namespace {

void check_cut(cplx p) {
    if (p == 0.0 || (p.imag() == 0.0 && p.real() < 0.0))
        throw DomainError("K(p): p on the branch cut (-inf, 0]");
}

}  // namespace

cplx KernelSet::K(cplx p) const {
    check_cut(p);
    const cplx L = std::log(p);
    const auto [lo, hi] = window(L.real());
    return weight_.order_integral([&](double a) { return std::exp((a - 1.0) * L); }, rtol_, lo,
                                  hi);
}

cplx KernelSet::pK(cplx p) const {
    check_cut(p);
    const cplx L = std::log(p);
    const auto [lo, hi] = window(L.real());
    return weight_.order_integral([&](double a) { return std::exp(a * L); }, rtol_, lo, hi);
}

const SpectralTable& KernelSet::spectral_table() const {
    std::call_once(cache_->once, [this] {
        auto build = [this](int order) {
            const auto& gl = gauss_legendre(order);
            std::vector<SpectralNode> nodes;
            auto panel = [&](double a, double b, auto map) {
                const double half = 0.5 * (b - a);
                for (std::size_t i = 0; i < gl.size(); ++i) {
                    const auto [y, jac] = map(a + half * (gl.nodes[i] + 1.0));
                    nodes.push_back(
                        {y, std::exp(y), half * gl.weights[i] * jac, cut_limit(weight_, y, rtol_)});
                }
            };
            // y in [-1, 50]
            for (int j = 0; j < 102; ++j)
                panel(-1.0 + 0.5 * j, -0.5 + 0.5 * j,
                      [](double y) { return std::pair{y, 1.0}; });
            // y = -e^z, z in [0, 41]
            for (int j = 0; j < 328; ++j)
                panel(0.125 * j, 0.125 * (j + 1), [](double z) {
                    const double e = std::exp(z);
                    return std::pair{-e, e};
                });
            return nodes;
        };
        cache_->table.coarse = build(16);
        cache_->table.fine = build(32);
    });
    return cache_->table;
}

Estimate<double> KernelSet::kappa_spectral(double t) const {
    if (!(t > 0.0)) throw DomainError("kappa: t must be positive");
    return spectral_sum(SpectralMode::kappa(), [t](double r) { return std::exp(-t * r); });
}

Estimate<double> KernelSet::kappa_contour(double t) const {
    if (!(t > 0.0)) throw DomainError("kappa: t must be positive");
    auto e = invert_on_contour([this](cplx p) { return 1.0 / pK(p); }, contour(t), t, 1e-9);
    return {e.value.real(), e.error};
}

Estimate<double> KernelSet::kappa(double t) const {
    const auto a = kappa_spectral(t);
    const auto b = kappa_contour(t);
    const double diff = std::abs(a.value - b.value);
    const double allowed = std::max(10.0 * (a.error + b.error), 1e-9 * std::abs(a.value));
    if (diff > allowed) throw DisagreementError("kappa: spectral and contour paths disagree", diff);
    return {a.value, std::max(a.error, diff)};
}

Estimate<double> KernelSet::kappa_integral(double t, bool estimate) const {
    if (!(t >= 0.0)) throw DomainError("kappa_integral: t must be >= 0");
    return spectral_sum(
        SpectralMode::kappa(), [t](double r) { return t * phi1(t * r); }, estimate);
}

std::pair<double, double> KernelSet::kappa_moments(double a, double b) const {
    if (!(a >= 0.0 && b >= a)) throw DomainError("kappa_moments: need 0 <= a <= b");
    const double h = b - a;
    double m0 = 0.0, m1 = 0.0;
    for (const auto& n : spectral_table().fine) {
        const double d = log_measure_density(n.cut, SpectralMode::kappa(), n.y);
        if (d == 0.0) continue;
        const double r = n.r;
        const double damp = n.weight * d * std::exp(-a * r);
        m0 += damp * h * phi1(h * r);
        m1 += damp * h * h * phi2(h * r);
    }
    return {m0, m1};
}

Estimate<double> KernelSet::sonine(double t) const {
    if (!(t > 0.0)) throw DomainError("sonine: t must be positive");
    auto kap = [this](double tau) { return kappa_spectral(tau).value; };
    const double half = 0.5 * t;
    // kappa side: tau = (t/2) e^{-v}
    auto left = integrate_to_infinity(
        [&](double v) {
            const double tau = half * std::exp(-v);
            return tau * kap(tau) * k(t - tau);
        },
        0.0, 1.0, 1e-11);
    // k side: s = e^L, L = log(t/2) - 1 ... log(t/2), then L = log(t/2) - e^w
    const double l0 = std::log(half);
    auto near = adaptive_gauss(
        [&](double L) { return s_k(L) * kap(t - std::exp(L)); }, l0 - 1.0, l0, 1e-11, 0.0, 40, 32);
    auto far = integrate_to_infinity(
        [&](double w) {
            const double e = std::exp(w);
            const double L = l0 - e;
            return s_k(L) * kap(t - std::exp(L)) * e;
        },
        0.0, 1.0, 1e-11);
    const double value = left.value + near.value + far.value;
    return {value, left.error + near.error + far.error};
}

}  // namespace ultraslow
