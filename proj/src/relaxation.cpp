#include "ultraslow/relaxation.hpp"

#include <cmath>

namespace ultraslow {

double pk_root(const KernelSet& ks, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("pk_root: lambda must be positive");
    auto f = [&](double p) { return ks.pK(cplx(p, 0.0)).real() - lambda; };
    double lo = 1.0, hi = 1.0;
    while (f(lo) > 0.0) lo *= 0.5;
    while (f(hi) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

RelaxationProblem::RelaxationProblem(KernelSet ks, double lam)
    : kernels(std::move(ks)), lambda(lam) {
    if (!std::isfinite(lam)) throw DomainError("relaxation: lambda must be finite");
    if (lam > 0.0) {
        root = pk_root(kernels, lam);
        gamma_min = 1.5 * root;
    }
}

Estimate<double> u_lambda_contour(const RelaxationProblem& prob, double t) {
    if (!(t > 0.0)) throw DomainError("u_lambda: t must be positive");
    const double lam = prob.lambda;
    const bool split = lam > 0.0 && prob.root * t > 10.0;
    const auto contour =
        split ? Contour(std::min(1.0 / t, 0.5 * prob.root)) : Contour::for_time(t, prob.gamma_min);
    double residue = 0.0;
    if (split) {
        // e^{p t} K(p) / (p K)'(p) at the root
        const double p = prob.root;
        const auto& w = prob.kernels.weight();
        const double lp = std::log(p);
        const double slope = w.order_integral([&](double a) { return a * std::exp((a - 1.0) * lp); });
        residue = std::exp(p * t) * (lam / p) / slope;
    }
    auto e = invert_on_contour(
        [&](cplx p) {
            const cplx pk = prob.kernels.pK(p);
            if (lam != 0.0 && std::abs(pk - lam) < 1e-8 * std::abs(lam))
                throw DomainError("u_lambda: contour node too close to the pole");
            return pk / (p * (pk - lam));
        },
        contour, t, 1e-9);
    return {residue + e.value.real(), e.error};
}

Estimate<double> u_lambda_spectral(const RelaxationProblem& prob, double t) {
    if (!(prob.lambda < 0.0)) throw DomainError("u_lambda: spectral path needs lambda < 0");
    if (!(t >= 0.0)) throw DomainError("u_lambda: t must be >= 0");
    return prob.kernels.spectral_sum(SpectralMode::relaxation(prob.lambda),
                                     [t](double r) { return std::exp(-t * r); });
}

Estimate<double> u_lambda(const RelaxationProblem& prob, double t) {
    if (!(t >= 0.0)) throw DomainError("u_lambda: t must be >= 0");
    if (prob.lambda == 0.0 || t == 0.0) return {1.0, 0.0};
    if (prob.lambda > 0.0) return u_lambda_contour(prob, t);
    const auto a = u_lambda_spectral(prob, t);
    const auto b = u_lambda_contour(prob, t);
    const double diff = std::abs(a.value - b.value);
    const double allowed = std::max(10.0 * (a.error + b.error), 1e-8 * std::abs(a.value));
    if (diff > allowed)
        throw DisagreementError("u_lambda: spectral and contour paths disagree", diff);
    return {a.value, std::max(a.error, diff)};
}

double u_lambda_longtime_ratio(const RelaxationProblem& prob, double t) {
    if (!(prob.lambda < 0.0)) throw DomainError("longtime ratio needs lambda < 0");
    if (!(t >= 10.0)) throw DomainError("longtime ratio needs t >= 10");
    const auto& w = prob.kernels.weight();
    const double nu_eff = w.at_zero() != 0.0 ? 0.0 : w.nu();
    return u_lambda(prob, t).value * std::pow(std::log(t), 1.0 + nu_eff);
}

}  // namespace ultraslow
