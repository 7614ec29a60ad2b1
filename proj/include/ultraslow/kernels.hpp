#pragma once

#include <memory>
#include <vector>

#include "ultraslow/transform.hpp"
#include "ultraslow/weight.hpp"

namespace ultraslow {

/// One node of the log-spectral quadrature: y = log r, weight in dy, and the cut
/// limit P(y) = int r^alpha e^{i alpha pi} mu d alpha.
struct SpectralNode {
    double y;
    double r;  // e^y
    double weight;
    cplx cut;
};

/// Quadrature in y over the whole real line: uniform panels for y >= -1, and
/// y = -e^z below, so the slowly decaying tails of relaxation densities are reached.
struct SpectralTable {
    std::vector<SpectralNode> coarse;
    std::vector<SpectralNode> fine;
};

/// The kernels k, K(p) = Laplace transform of k, and kappa for one weight.
///
/// Immutable after construction. The spectral table behind the real-axis
/// representations is built on first use and shared by copies; concurrent first
/// calls are safe.
class KernelSet {
public:
    explicit KernelSet(Weight w, double rtol = 1e-12);

    const Weight& weight() const { return weight_; }
    double rtol() const { return rtol_; }
    /// Contour used for kappa at time t.
    Contour contour(double t) const { return Contour::for_time(t); }

    /// k(s) = int s^{-alpha} / Gamma(1 - alpha) mu d alpha, s >= 1e-300.
    double k(double s) const;
    /// k'(s) = -int alpha s^{-alpha-1} / Gamma(1 - alpha) mu d alpha.
    double k_prime(double s) const;
    /// s k(s) at s = e^{log_s}; finite for any log_s.
    double s_k(double log_s) const;
    /// s^2 k'(s) at s = e^{log_s}.
    double s2_k_prime(double log_s) const;

    /// int_0^b k(s) ds at b = e^{log_b}; finite for any log_b.
    double k_integral_log(double log_b) const;
    /// int_a^b k(s) ds, 0 <= a <= b.
    double k_integral(double a, double b) const;
    /// int_a^b (s - a) k(s) ds, 0 <= a <= b.
    double k_first_moment(double a, double b) const;

    /// K(p) = int p^{alpha - 1} mu d alpha, principal branch; throws on the cut.
    cplx K(cplx p) const;
    /// p K(p) = int p^alpha mu d alpha.
    cplx pK(cplx p) const;

    /// kappa(t) by the real spectral density, checked against contour inversion of
    /// 1 / (p K(p)); throws DisagreementError when the paths differ by more than
    /// ten times their combined estimates (floored at 1e-9 relative).
    Estimate<double> kappa(double t) const;
    /// Real-axis path only, with node-doubling estimate.
    Estimate<double> kappa_spectral(double t) const;
    /// Contour path only.
    Estimate<double> kappa_contour(double t) const;
    /// int_0^t kappa; without `estimate` only the fine rule is summed.
    Estimate<double> kappa_integral(double t, bool estimate = true) const;
    /// int_a^b kappa(s) ds and int_a^b (s - a) kappa(s) ds, fine table only.
    std::pair<double, double> kappa_moments(double a, double b) const;

    /// (k * kappa)(t) by direct quadrature, splitting at t/2 and using
    /// double-exponential substitutions toward both endpoint singularities.
    Estimate<double> sonine(double t) const;

    const SpectralTable& spectral_table() const;

    /// sum over the table of w * (r rho(r)) * g(r), fine value with coarse-fine
    /// estimate (or fine value alone when `estimate` is false).
    template <class G>
    Estimate<double> spectral_sum(SpectralMode mode, G&& g, bool estimate = true) const {
        const auto& table = spectral_table();
        auto run = [&](const std::vector<SpectralNode>& nodes) {
            double sum = 0.0;
            for (const auto& n : nodes) {
                const double d = log_measure_density(n.cut, mode, n.y);
                if (d != 0.0) sum += n.weight * d * g(n.r);
            }
            return sum;
        };
        const double fine = run(table.fine);
        if (!estimate) return {fine, 0.0};
        const double coarse = run(table.coarse);
        return {fine, std::abs(fine - coarse) + 1e-15 * std::abs(fine)};
    }

private:
    struct Cache;

    Weight weight_;
    double rtol_;
    std::shared_ptr<Cache> cache_;
};

}  // namespace ultraslow
