#pragma once

#include <functional>

#include <Eigen/Core>

#include "ultraslow/green.hpp"

namespace ultraslow {

using Point = Eigen::VectorXd;

/// |phi(x)| <= constant * e^{rate |x|}.
struct GrowthBound {
    double constant = 1.0;
    double rate = 0.0;
};

/// D^(mu) u = Laplacian u + f on (0, T] x R^n, u(0, x) = phi(x).
///
/// The Hoelder data are declared, not checked.
struct CauchyProblem {
    KernelSet kernels;
    int n = 1;
    std::function<double(const Point&)> phi;
    GrowthBound growth;
    double holder_exponent = 1.0;
    double holder_constant = 1.0;
    std::function<double(double, const Point&)> f;  // empty: no source
    double T = 1.0;

    CauchyProblem(KernelSet ks, int dim, std::function<double(const Point&)> initial,
                  double horizon = 1.0);

    /// Exponent of the bound |D^(mu) u| <= C t^{-1 + eps}; eps = holder_exponent / 2.
    double derivative_bound_exponent() const { return 0.5 * holder_exponent; }
};

/// u(t, x) = int Z(t, x - xi) phi(xi) d xi, computed as
/// int Z(t, x - xi) [phi(xi) - phi(x)] d xi + phi(x) in polar coordinates about x.
/// Throws DomainError if the declared growth rate is not below the fitted decay rate of Z.
Estimate<double> solve_homogeneous(const CauchyProblem& prob, double t, const Point& x);
/// Same for several points at one t; the contour samples are shared.
std::vector<Estimate<double>> solve_homogeneous(const CauchyProblem& prob, double t,
                                                const std::vector<Point>& xs);

/// Heat potential with zero initial data:
/// int_0^t int E(t - tau, x - y) [f(tau, y) - f(tau, x)] dy d tau + (I^(mu) f(., x))(t).
Estimate<double> solve_inhomogeneous(const CauchyProblem& prob, double t, const Point& x);
std::vector<Estimate<double>> solve_inhomogeneous(const CauchyProblem& prob, double t,
                                                  const std::vector<Point>& xs);

/// Fitted exponential decay rate of Z(t, .) over [2 sigma, 6 sigma], sigma^2 = m(t) / n.
double fitted_decay_rate(const KernelSet& ks, int n, double t);

/// Uniform space-time grid for the finite-difference scheme on [-L, L].
struct FdGrid {
    double L = 10.0;
    int nx = 257;
    double T = 1.0;
    int nt = 400;
};

/// u(t_i, x_j) with rows indexed by time (row 0 is phi).
struct Field {
    Eigen::VectorXd t;
    Eigen::VectorXd x;
    Eigen::MatrixXd u;

    /// Linear interpolation in x at row i.
    double at(Eigen::Index i, double xq) const;
};

/// Implicit finite differences for n = 1: L1-type product integration in time with
/// exact weights int k over each step, three-point Laplacian, boundary values held
/// at phi(+-L).
Field solve_fd(const CauchyProblem& prob, const FdGrid& grid);

}  // namespace ultraslow
