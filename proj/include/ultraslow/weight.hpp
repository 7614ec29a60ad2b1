#pragma once

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include "ultraslow/errors.hpp"
#include "ultraslow/quadrature.hpp"

namespace ultraslow {

enum class WeightKind { Constant, PowerLaw, Product, Tabulated };

std::string to_string(WeightKind kind);

/// Weight function mu(alpha) >= 0 on the order interval [0, 1].
///
/// Product weights are alpha^nu * p(alpha) with p given by ascending polynomial
/// coefficients and bounded below by rho > 0. Tabulated weights hold samples on a
/// uniform grid and are interpolated with a monotone (Fritsch-Carlson) cubic, so
/// the interpolant never leaves the range of neighbouring samples.
///
/// Immutable after construction.
class Weight {
public:
    /// Smoothness marker for analytic weights.
    static constexpr int kSmooth = 1000;

    static Weight constant(double c);
    static Weight power_law(double a, double nu);
    static Weight product(double nu, std::vector<double> coeffs);
    static Weight tabulated(std::vector<double> samples, double nu);

    WeightKind kind() const { return kind_; }
    double nu() const { return nu_; }
    double at_one() const { return at_one_; }
    double at_zero() const { return evaluate(0.0); }
    /// Lower bound of the regular factor mu(alpha) / alpha^nu (Product kind; other
    /// kinds report the analogous bound of their own regular factor, 0 if unknown).
    double rho() const { return rho_; }
    /// Leading coefficient a of mu(alpha) ~ a alpha^nu as alpha -> 0.
    double leading_coefficient() const;
    /// Number of continuous derivatives on [0, 1] (kSmooth when analytic).
    int smoothness() const { return smoothness_; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    const std::vector<double>& samples() const { return samples_; }

    /// mu(alpha); throws DomainError outside [0, 1].
    double evaluate(double alpha) const;
    double operator()(double alpha) const { return evaluate(alpha); }
    /// mu'(alpha), one-sided at the endpoints.
    double derivative(double alpha) const;

    /// Integral of f(alpha) mu(alpha) over [lo, hi] within [0, 1].
    ///
    /// Composite 64-node Gauss-Legendre (two 32-node halves) checked against a single
    /// 32-node panel, with bisection where they disagree; panels whose difference is
    /// below 1e-2 rtol times the integrand mass are accepted. Tabulated weights are
    /// integrated knot interval by knot interval. Throws ConvergenceError when the
    /// bisection depth is exhausted.
    template <class F>
    auto order_integral(F&& f, double rtol = 1e-12, double lo = 0.0, double hi = 1.0) const {
        auto g = [&](double a) { return f(a) * evaluate_unchecked(a); };
        using T = std::decay_t<decltype(g(0.5))>;
        Quadrature<T> total;
        // absolute floor against the integrand mass: at alpha = 0 a non-integer nu
        // leaves the relative panel error scale invariant
        double mass = 0.0;
        if (hi > lo) {
            const auto& rule = gauss_legendre(32);
            for (std::size_t i = 0; i < rule.size(); ++i)
                mass += rule.weights[i] * magnitude(g(lo + 0.5 * (hi - lo) * (1.0 + rule.nodes[i])));
            mass *= 0.5 * (hi - lo);
        }
        const double floor = std::max(1e-2 * rtol * mass, 1e-300);
        auto add = [&](double a, double b) {
            if (b <= a) return;
            auto q = adaptive_gauss(g, a, b, rtol, floor, 80, 32);
            total.value += q.value;
            total.error += q.error;
            total.evaluations += q.evaluations;
            total.converged = total.converged && q.converged;
        };
        if (kind_ == WeightKind::Tabulated) {
            const double h = 1.0 / double(samples_.size() - 1);
            for (std::size_t i = 0; i + 1 < samples_.size(); ++i)
                add(std::max(lo, i * h), std::min(hi, (i + 1) * h));
        } else {
            add(lo, hi);
        }
        if (!total.converged)
            throw ConvergenceError("order_integral did not converge", total.error);
        return total.value;
    }

private:
    Weight() = default;
    double evaluate_unchecked(double alpha) const;
    double poly(double alpha) const;
    double poly_derivative(double alpha) const;
    void finish();

    WeightKind kind_ = WeightKind::Constant;
    double nu_ = 0.0;
    double scale_ = 1.0;  // c for Constant, a for PowerLaw
    std::vector<double> coeffs_;
    std::vector<double> samples_;
    std::vector<double> slopes_;  // Fritsch-Carlson node derivatives
    double at_one_ = 0.0;
    double rho_ = 0.0;
    int smoothness_ = kSmooth;
};

}  // namespace ultraslow
