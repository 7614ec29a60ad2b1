#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>

namespace ultraslow {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
struct GaussRule {
    std::span<const double> nodes;
    std::span<const double> weights;
    std::size_t size() const { return nodes.size(); }
};

/// Cached rule for n in {4, 8, 16, 24, 32, 48, 64}; throws std::invalid_argument otherwise.
const GaussRule& gauss_legendre(int n);

template <class T>
double magnitude(const T& v) { return std::abs(v); }

template <class T>
struct Quadrature {
    T value{};
    double error = 0.0;
    bool converged = true;
    long evaluations = 0;
};

/// Fixed n-point Gauss-Legendre rule on [a, b].
template <class F>
auto gauss(F&& f, double a, double b, int n = 32) {
    using T = std::decay_t<decltype(f(a))>;
    const auto& rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    T sum{};
    for (std::size_t i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return T(sum * half);
}

namespace detail {

template <class F, class T>
void adaptive_step(F& f, double a, double b, T whole, double rtol, double floor, int depth,
                   int max_depth, int n, Quadrature<T>& out) {
    const double m = 0.5 * (a + b);
    const T left = gauss(f, a, m, n);
    const T right = gauss(f, m, b, n);
    out.evaluations += 2L * n;
    const T both = left + right;
    const double diff = magnitude(T(both - whole));
    if (diff <= rtol * magnitude(both) || diff <= floor || m == a || m == b) {
        out.value += both;
        out.error += diff;
        return;
    }
    if (depth >= max_depth) {
        out.value += both;
        out.error += diff;
        out.converged = false;
        return;
    }
    adaptive_step(f, a, m, left, rtol, floor, depth + 1, max_depth, n, out);
    adaptive_step(f, m, b, right, rtol, floor, depth + 1, max_depth, n, out);
}

}  // namespace detail

/// Recursive bisection with an n-point Gauss rule per panel.
///
/// A panel is accepted when the two-halves estimate agrees with the whole-panel
/// estimate to `rtol` relative, or to `atol` absolute. The error field is the sum
/// of the accepted panel differences, which overestimates the true error of the
/// returned (finer) value.
template <class F>
auto adaptive_gauss(F&& f, double a, double b, double rtol = 1e-12, double atol = 0.0,
                    int max_depth = 80, int n = 32) {
    using T = std::decay_t<decltype(f(a))>;
    Quadrature<T> out;
    if (a == b) return out;
    const T whole = gauss(f, a, b, n);
    out.evaluations = n;
    detail::adaptive_step(f, a, b, whole, rtol, atol, 0, max_depth, n, out);
    return out;
}

/// Integral over [a, infinity) by geometrically growing panels [a + s*2^k, a + s*2^(k+1)],
/// each integrated adaptively, stopping once two consecutive panels add less than
/// rtol relative (or atol absolute).
template <class F>
auto integrate_to_infinity(F&& f, double a, double scale, double rtol = 1e-10,
                           double atol = 0.0, int max_panels = 200) {
    using T = std::decay_t<decltype(f(a))>;
    Quadrature<T> out;
    auto first = adaptive_gauss(f, a, a + scale, rtol, atol, 60, 16);
    out.value = first.value;
    out.error = first.error;
    out.evaluations = first.evaluations;
    out.converged = first.converged;
    double lo = a + scale;
    double width = scale;
    int quiet = 0;
    for (int k = 0; k < max_panels; ++k) {
        auto piece = adaptive_gauss(f, lo, lo + width, rtol, atol, 60, 16);
        out.value += piece.value;
        out.error += piece.error;
        out.evaluations += piece.evaluations;
        out.converged = out.converged && piece.converged;
        const double size = magnitude(piece.value);
        if (size <= rtol * magnitude(out.value) || size <= atol) {
            if (++quiet >= 2) {
                out.error += size;
                return out;
            }
        } else {
            quiet = 0;
        }
        lo += width;
        width *= 2.0;
    }
    out.converged = false;
    return out;
}

}  // namespace ultraslow
