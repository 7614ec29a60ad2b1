#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "ultraslow/errors.hpp"
#include "ultraslow/special.hpp"
#include "ultraslow/weight.hpp"

namespace ultraslow {

template <class T>
struct Estimate {
    T value{};
    double error = 0.0;
};

/// Whether F(conj p) = conj F(p), i.e. F is the transform of a real function.
enum class Symmetry { Conjugate, None };

/// Quadrature for (1/2 pi i) int e^{pt} F(p) dp along a fixed path, e^{pt} folded into
/// the weights. With Symmetry::Conjugate only the upper half of the path is stored and
/// apply() returns 2 Re of the upper-half integral.
struct InversionRule {
    std::vector<cplx> nodes;
    std::vector<cplx> weights;
    Symmetry symmetry = Symmetry::Conjugate;

    std::size_t size() const { return nodes.size(); }

    /// Combine precomputed F(nodes[j]).
    cplx apply(const std::vector<cplx>& values) const;
    /// Sum of |w_j F_j|: the scale against which cancellation noise is measured.
    double mass(const std::vector<cplx>& values) const;
};

/// The contour S_{gamma,omega}: arc |p| = gamma, |arg p| <= omega pi, and the rays
/// arg p = +-omega pi, |p| >= gamma, oriented by increasing arg p.
///
/// Rays are truncated where e^{t (r - gamma) cos(omega pi)} drops below e^{-reach}.
/// Ray panels use r = gamma + e^s beyond 2 gamma.
struct Contour {
    double gamma = 1.0;
    double omega = 0.9;
    double reach = 45.0;
    int arc_panels = 4;
    double ray_panel_width = 0.5;  // in s = log(r - gamma)

    Contour() = default;
    Contour(double gamma_, double omega_ = 0.9);

    /// Contour with gamma = max(1 / t, floor), omega = 0.9.
    static Contour for_time(double t, double floor = 0.0, double omega = 0.9);

    /// Nodes of the order-n Gauss rule on every panel, weights for time t.
    InversionRule rule(double t, int order, Symmetry symmetry = Symmetry::Conjugate) const;

    /// Largest ray radius used for time t.
    double r_max(double t) const;
};

/// Coarse (16-node panels) and fine (32-node panels) rules for one (contour, t).
struct RulePair {
    InversionRule coarse;
    InversionRule fine;
    RulePair(const Contour& c, double t, Symmetry symmetry = Symmetry::Conjugate)
        : coarse(c.rule(t, 16, symmetry)), fine(c.rule(t, 32, symmetry)) {}
};

namespace detail {
void check_finite_on_contour(const std::vector<cplx>& values);
}

/// Combines F sampled on both rules into a value with a node-doubling error estimate.
inline Estimate<cplx> combine(const RulePair& rules, const std::vector<cplx>& coarse_values,
                              const std::vector<cplx>& fine_values) {
    const cplx fine = rules.fine.apply(fine_values);
    const cplx coarse = rules.coarse.apply(coarse_values);
    const double noise = 64.0 * 2.2e-16 * rules.fine.mass(fine_values);
    return {fine, std::abs(fine - coarse) + noise};
}

/// (1/2 pi i) int_{S} e^{pt} F(p) dp with a node-doubling error estimate.
///
/// Throws DomainError if F is non-finite on the contour and ConvergenceError if the
/// estimate exceeds rtol relative to the value (or 1e-12 of the integrand mass).
template <class F>
Estimate<cplx> invert_on_contour(F&& f, const Contour& contour, double t, double rtol = 1e-8,
                                 Symmetry symmetry = Symmetry::Conjugate) {
    if (!(t > 0.0)) throw DomainError("invert_on_contour: t must be positive");
    const RulePair rules(contour, t, symmetry);
    std::vector<cplx> cv(rules.coarse.size()), fv(rules.fine.size());
    for (std::size_t j = 0; j < cv.size(); ++j) cv[j] = f(rules.coarse.nodes[j]);
    for (std::size_t j = 0; j < fv.size(); ++j) fv[j] = f(rules.fine.nodes[j]);
    detail::check_finite_on_contour(cv);
    detail::check_finite_on_contour(fv);
    auto est = combine(rules, cv, fv);
    const double allowed = std::max(rtol * std::abs(est.value), 1e-12 * rules.fine.mass(fv));
    if (est.error > allowed)
        throw ConvergenceError("contour inversion above tolerance", est.error);
    return est;
}

/// Vertical-line (Bromwich) inversion (1/2 pi i) int_{gamma - i inf}^{gamma + i inf}.
///
/// The line is cut into half periods pi/t of e^{i tau t}; on each panel F is
/// interpolated at 16 Gauss points and integrated against the oscillatory factor with
/// precomputed moments (Filon), refining panels by bisection where F varies quickly.
/// Panel partial sums are accelerated with Wynn's epsilon algorithm, so slowly
/// decaying transforms (F ~ p^{-1/2}) converge. Throws ConvergenceError when the
/// accelerated sums stall before tau_max.
class BromwichInverter {
public:
    BromwichInverter(double gamma, double t, double tau_max, double rtol = 1e-8);

    template <class F>
    Estimate<cplx> operator()(F&& f, Symmetry symmetry = Symmetry::Conjugate) const {
        auto upper = integrate_half(
            [&](double tau) { return cplx(f(cplx(gamma_, tau))); }, +1.0);
        if (symmetry == Symmetry::Conjugate) {
            const double scale = std::exp(gamma_ * t_) / std::numbers::pi;
            return {cplx(scale * upper.value.real(), 0.0), scale * upper.error};
        }
        auto lower = integrate_half(
            [&](double tau) { return cplx(f(cplx(gamma_, -tau))); }, -1.0);
        const double scale = std::exp(gamma_ * t_) / (2.0 * std::numbers::pi);
        return {scale * (upper.value + lower.value), scale * (upper.error + lower.error)};
    }

private:
    template <class G>
    Estimate<cplx> integrate_half(G&& g, double direction) const;
    /// Filon value of one half-period panel starting at `start`, bisected until the
    /// halves agree with the whole to rtol relative to max(|panel|, scale).
    Estimate<cplx> refined_panel(const std::function<cplx(double)>& g, double start,
                                 double direction, double scale) const;
    cplx filon(const std::function<cplx(double)>& g, double start, int level,
               double direction) const;
    const std::vector<cplx>& filon_weights(int level, double direction) const;

    double gamma_, t_, tau_max_, rtol_;
    mutable std::vector<std::vector<cplx>> weights_plus_, weights_minus_;
};

template <class F>
Estimate<cplx> invert_bromwich(F&& f, double gamma, double t, double tau_max,
                               double rtol = 1e-8, Symmetry symmetry = Symmetry::Conjugate) {
    return BromwichInverter(gamma, t, tau_max, rtol)(std::forward<F>(f), symmetry);
}

/// Cut limit of p K(p) from above: int_0^1 r^alpha e^{i alpha pi} mu(alpha) d alpha,
/// r = e^{log_r}, computed without forming r^alpha directly.
cplx cut_limit(const Weight& w, double log_r, double rtol = 1e-12);

/// Which spectral density real_axis_limit_density returns.
struct SpectralMode {
    enum class Kind { Kappa, Relaxation } kind = Kind::Kappa;
    double lambda = 0.0;  // Relaxation only, must be < 0
    static SpectralMode kappa() { return {}; }
    static SpectralMode relaxation(double lambda) { return {Kind::Relaxation, lambda}; }
};

/// Non-negative density rho(r) with f(t) = int_0^inf e^{-tr} rho(r) dr, for the
/// kernel kappa or the relaxation function u_lambda (lambda < 0).
double real_axis_limit_density(const Weight& w, SpectralMode mode, double r);

/// r * rho(r), the density with respect to d(log r), from a precomputed cut limit
/// P = cut_limit(w, log r). Finite for every log r, including far below log(DBL_MIN).
double log_measure_density(cplx cut, SpectralMode mode, double log_r);

}  // namespace ultraslow

#include "ultraslow/bits/bromwich_impl.hpp"
