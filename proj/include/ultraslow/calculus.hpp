#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>

#include "ultraslow/kernels.hpp"

namespace ultraslow {

/// Samples u(t_i) on nodes 0 = t_0 < t_1 < ... < t_N.
struct Grid1D {
    Eigen::VectorXd nodes;
    Eigen::VectorXd values;

    Grid1D() = default;
    /// Throws DomainError unless nodes start at 0, increase strictly and match values in size.
    Grid1D(Eigen::VectorXd nodes, Eigen::VectorXd values);

    /// N + 1 uniform nodes on [0, T] with values f(t).
    static Grid1D uniform(double T, int N, const std::function<double(double)>& f);
    /// Nodes T (i / N)^grading, clustered at 0.
    static Grid1D graded(double T, int N, double grading, const std::function<double(double)>& f);

    Eigen::Index size() const { return nodes.size(); }
    /// True when all steps agree to 1e-12 relative.
    bool is_uniform() const;
};

/// Interpolant on [0, t_1]. Linear, or u(0) + (u(t_1) - u(0)) U(t) / U(t_1) with
/// U = int_0^t kappa, the shape of I^(mu) f and of relaxation functions near 0.
enum class StartPanel { Linear, KernelAdapted };

/// Caputo form int_0^t k(t - tau) u'(tau) d tau at node i >= 1, u' taken from the
/// interpolant (piecewise linear past t_1), with k integrated exactly on each panel.
double d_mu_caputo(const KernelSet& ks, const Grid1D& g, Eigen::Index i,
                   StartPanel start = StartPanel::KernelAdapted);
/// All nodes; entry 0 is NaN.
Eigen::VectorXd d_mu_caputo(const KernelSet& ks, const Grid1D& g,
                            StartPanel start = StartPanel::KernelAdapted);

/// General form d/dt int_0^t k(t - tau) u(tau) d tau - k(t) u(0) at node i >= 1.
/// The convolution of k with the interpolant is formed by exact panel moments and
/// differentiated by one-sided differences on the last four nodes; node 1 uses the
/// three-point difference through nodes 0, 1, 2.
double d_mu_general(const KernelSet& ks, const Grid1D& g, Eigen::Index i,
                    StartPanel start = StartPanel::KernelAdapted);
/// All nodes; entry 0 is NaN.
Eigen::VectorXd d_mu_general(const KernelSet& ks, const Grid1D& g,
                             StartPanel start = StartPanel::KernelAdapted);

/// Marchaud form k(t) u(t) + int_0^t k'(tau) [u(t - tau) - u(t)] d tau at node i.
///
/// The integral is truncated at eps_j = eps exp(1 - 2^j) and the truncated values,
/// exact for the interpolant, are followed until successive increments drop below
/// `tol`. Requires u(0) = 0 (u in the range of I^(mu)); throws DomainError otherwise
/// and ConvergenceError if the sequence does not settle. eps <= 0 means the first step.
double d_mu_marchaud(const KernelSet& ks, const Grid1D& g, Eigen::Index i, double eps = 0.0,
                     double tol = 1e-12);
/// All nodes; entry 0 is NaN.
Eigen::VectorXd d_mu_marchaud(const KernelSet& ks, const Grid1D& g);

/// (I^(mu) f)(t_i) = int_0^{t_i} kappa(t_i - s) f(s) ds with f piecewise linear and
/// exact kappa moments per panel.
Grid1D i_mu(const KernelSet& ks, const Grid1D& f);

/// Two-column CSV "t,value".
std::string to_csv(const Grid1D& g);
Grid1D grid_from_csv(const std::string& text);

}  // namespace ultraslow
