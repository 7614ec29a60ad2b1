#pragma once

#include "ultraslow/kernels.hpp"

namespace ultraslow {

/// Positive root of p K(p) = lambda on (0, inf) for lambda > 0, by bisection.
double pk_root(const KernelSet& ks, double lambda);

/// The equation D^(mu) u = lambda u, u(0) = 1.
struct RelaxationProblem {
    KernelSet kernels;
    double lambda = 0.0;
    /// Lower bound for the contour radius: 1.5 times the real root for lambda > 0, else 0.
    double gamma_min = 0.0;
    /// The real root of p K(p) = lambda (lambda > 0), else 0.
    double root = 0.0;

    RelaxationProblem(KernelSet ks, double lambda);
};

/// u_lambda(t). lambda = 0 and t = 0 return exactly 1. For lambda < 0 the value comes
/// from the real spectral density and is checked against contour inversion; for
/// lambda > 0 only the contour is used, with the real root kept inside.
Estimate<double> u_lambda(const RelaxationProblem& prob, double t);

/// Contour path alone, any lambda; throws DomainError if a node comes within
/// 1e-8 |lambda| of the pole p K(p) = lambda. For lambda > 0 and root * t > 10 the
/// pole is taken out as a residue and the contour passes left of it, which avoids
/// the cancellation of an e^{gamma t} sized integrand.
Estimate<double> u_lambda_contour(const RelaxationProblem& prob, double t);

/// Spectral path alone, lambda < 0.
Estimate<double> u_lambda_spectral(const RelaxationProblem& prob, double t);

/// u_lambda(t) (log t)^{1 + nu_eff}, nu_eff = 0 if mu(0) != 0, else nu. Needs lambda < 0, t >= 10.
double u_lambda_longtime_ratio(const RelaxationProblem& prob, double t);

}  // namespace ultraslow
