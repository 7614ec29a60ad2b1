#include "ultraslow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "ultraslow/quadrature.hpp"

namespace ultraslow {

namespace {

void check_problem(const CauchyProblem& prob, double t, const Point& x) {
    if (!(t > 0.0) || t > prob.T) throw DomainError("solver: t must lie in (0, T]");
    if (x.size() != prob.n) throw DomainError("solver: point dimension does not match n");
}

/// Mean over the unit sphere of g(x + rho theta) - g(x).
template <class G>
double sphere_mean_increment(const G& g, const Point& x, double rho, int n) {
    const double center = g(x);
    if (n == 1) {
        Point a = x, b = x;
        a[0] += rho;
        b[0] -= rho;
        return 0.5 * ((g(a) - center) + (g(b) - center));
    }
    if (n == 2) {
        constexpr int m = 64;
        double sum = 0.0;
        Point y = x;
        for (int i = 0; i < m; ++i) {
            const double phi = 2.0 * std::numbers::pi * i / m;
            y[0] = x[0] + rho * std::cos(phi);
            y[1] = x[1] + rho * std::sin(phi);
            sum += g(y) - center;
        }
        return sum / m;
    }
    constexpr int m = 32;
    const auto& rule = gauss_legendre(16);
    double sum = 0.0;
    Point y = x;
    for (std::size_t a = 0; a < rule.size(); ++a) {
        const double c = rule.nodes[a], s = std::sqrt(1.0 - c * c);
        double ring = 0.0;
        for (int i = 0; i < m; ++i) {
            const double phi = 2.0 * std::numbers::pi * i / m;
            y[0] = x[0] + rho * s * std::cos(phi);
            y[1] = x[1] + rho * s * std::sin(phi);
            y[2] = x[2] + rho * c;
            ring += g(y) - center;
        }
        sum += 0.5 * rule.weights[a] * ring / m;
    }
    return sum;
}

double sigma(const KernelSet& ks, int n, double t) {
    return std::sqrt(msd(ks, n, t).value / n);
}

void check_growth(const CauchyProblem& prob, double t) {
    if (prob.growth.rate <= 0.0) return;
    const double a = fitted_decay_rate(prob.kernels, prob.n, t);
    if (prob.growth.rate >= a)
        throw DomainError("solver: growth rate of phi is not below the decay rate of Z (" +
                          std::to_string(prob.growth.rate) + " >= " + std::to_string(a) + ")");
}

}  // namespace

CauchyProblem::CauchyProblem(KernelSet ks, int dim, std::function<double(const Point&)> initial,
                             double horizon)
    : kernels(std::move(ks)), n(dim), phi(std::move(initial)), T(horizon) {
    if (n < 1 || n > 3) throw DomainError("CauchyProblem: n must be 1, 2 or 3");
    if (!(T > 0.0)) throw DomainError("CauchyProblem: T must be positive");
}

double fitted_decay_rate(const KernelSet& ks, int n, double t) {
    const ContourGreen cg(ks, t);
    const double s = sigma(ks, n, t);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int i = 0; i <= 8; ++i) {
        const double r = s * (2.0 + 0.5 * i);
        const auto z = cg.z(n, r);
        if (!(z.value > 10.0 * z.error)) break;
        const double y = std::log(z.value);
        sx += r;
        sy += y;
        sxx += r * r;
        sxy += r * y;
        ++m;
    }
    if (m < 2) throw ConvergenceError("fitted_decay_rate: Z not resolved", 0.0);
    return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<Estimate<double>> solve_homogeneous(const CauchyProblem& prob, double t,
                                                const std::vector<Point>& xs) {
    if (!prob.phi) throw DomainError("solve_homogeneous: phi is missing");
    for (const auto& x : xs) check_problem(prob, t, x);
    check_growth(prob, t);
    const ContourGreen cg(prob.kernels, t);
    const double scale = 0.5 * sigma(prob.kernels, prob.n, t);
    std::vector<Estimate<double>> out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        const double center = prob.phi(x);
        const double floor = 1e-14 * std::max(1.0, std::abs(center));
        auto q = radial_integral(
            [&](double rho) {
                return cg.z(prob.n, rho).value * sphere_mean_increment(prob.phi, x, rho, prob.n);
            },
            prob.n, 0, 1e-10, scale, floor);
        out.push_back({q.value + center, q.error + floor});
    }
    return out;
}

Estimate<double> solve_homogeneous(const CauchyProblem& prob, double t, const Point& x) {
    return solve_homogeneous(prob, t, std::vector<Point>{x})[0];
}

std::vector<Estimate<double>> solve_inhomogeneous(const CauchyProblem& prob, double t,
                                                  const std::vector<Point>& xs) {
    for (const auto& x : xs) check_problem(prob, t, x);
    std::vector<Estimate<double>> out(xs.size());
    if (!prob.f) return out;
    const auto& ks = prob.kernels;

    // s = t - tau on geometric panels [t 2^{-k-1}, t 2^{-k}]; [0, s_min] analytically
    constexpr int panels = 36;
    const double s_min = std::ldexp(t, -panels);
    const auto& rule = gauss_legendre(8);
    const double remainder = ks.kappa_integral(s_min).value;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i].value = prob.f(t, xs[i]) * remainder;
        // the spatial part over [0, s_min] is bounded by remainder times the increment of
        // f over the width of E(s_min, .)
        const double width = std::sqrt(2.0 * prob.n * remainder);
        auto at_t = [&](const Point& y) { return prob.f(t, y); };
        out[i].error = remainder * std::abs(sphere_mean_increment(at_t, xs[i], width, prob.n));
    }
    for (int k = 0; k < panels; ++k) {
        const double hi = std::ldexp(t, -k), lo = 0.5 * hi;
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double s = mid + half * rule.nodes[q];
            const double w = half * rule.weights[q];
            const double tau = t - s;
            const double kap = ks.kappa_spectral(s).value;
            const ContourGreen cg(ks, s);
            const double scale = 0.5 * sigma(ks, prob.n, s);
            auto f_tau = [&](const Point& y) { return prob.f(tau, y); };
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const double fx = prob.f(tau, xs[i]);
                const double floor = 1e-14 * std::max(1.0, std::abs(fx)) * std::max(kap, 1.0);
                auto inner = radial_integral(
                    [&](double rho) {
                        return cg.e(prob.n, rho).value *
                               sphere_mean_increment(f_tau, xs[i], rho, prob.n);
                    },
                    prob.n, 0, 1e-10, scale, floor);
                out[i].value += w * (inner.value + kap * fx);
                out[i].error += w * inner.error;
            }
        }
    }
    return out;
}

Estimate<double> solve_inhomogeneous(const CauchyProblem& prob, double t, const Point& x) {
    return solve_inhomogeneous(prob, t, std::vector<Point>{x})[0];
}

double Field::at(Eigen::Index i, double xq) const {
    if (i < 0 || i >= u.rows()) throw DomainError("Field: time index out of range");
    const Eigen::Index m = x.size();
    if (xq <= x[0]) return u(i, 0);
    if (xq >= x[m - 1]) return u(i, m - 1);
    const double h = (x[m - 1] - x[0]) / double(m - 1);
    const auto j = std::min<Eigen::Index>(Eigen::Index((xq - x[0]) / h), m - 2);
    const double a = (xq - x[j]) / h;
    return (1.0 - a) * u(i, j) + a * u(i, j + 1);
}

Field solve_fd(const CauchyProblem& prob, const FdGrid& grid) {
    if (prob.n != 1) throw DomainError("solve_fd: only n = 1");
    if (!prob.phi) throw DomainError("solve_fd: phi is missing");
    if (grid.nx < 3 || grid.nt < 1 || !(grid.L > 0.0) || !(grid.T > 0.0))
        throw DomainError("solve_fd: grid needs nx >= 3, nt >= 1, L > 0, T > 0");
    const Eigen::Index nx = grid.nx, nt = grid.nt;
    const double dx = 2.0 * grid.L / double(nx - 1);
    const double dt = grid.T / double(nt);
    if (!(dx < grid.L)) throw DomainError("solve_fd: spatial step too coarse");

    Field out;
    out.x = Eigen::VectorXd::LinSpaced(nx, -grid.L, grid.L);
    out.t = Eigen::VectorXd::LinSpaced(nt + 1, 0.0, grid.T);
    out.u.resize(nt + 1, nx);
    Point p(1);
    for (Eigen::Index j = 0; j < nx; ++j) {
        p[0] = out.x[j];
        out.u(0, j) = prob.phi(p);
    }

    // b_l = (1 / dt) int_{l dt}^{(l+1) dt} k
    Eigen::VectorXd b(nt);
    const auto& ks = prob.kernels;
    for (Eigen::Index l = 0; l < nt; ++l)
        b[l] = (l == 0 ? ks.k_integral_log(std::log(dt)) : ks.k_integral(l * dt, (l + 1) * dt)) / dt;

    const Eigen::Index m = nx - 2;
    const double c = 1.0 / (dx * dx);
    Eigen::SparseMatrix<double> A(m, m);
    std::vector<Eigen::Triplet<double>> entries;
    for (Eigen::Index j = 0; j < m; ++j) {
        entries.emplace_back(j, j, b[0] + 2.0 * c);
        if (j > 0) entries.emplace_back(j, j - 1, -c);
        if (j + 1 < m) entries.emplace_back(j, j + 1, -c);
    }
    A.setFromTriplets(entries.begin(), entries.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
    if (solver.info() != Eigen::Success) throw ConvergenceError("solve_fd: factorization failed", 0.0);

    Eigen::MatrixXd diff(nt, m);  // row j: u^{j+1} - u^j on interior nodes
    const double left = out.u(0, 0), right = out.u(0, nx - 1);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index step = 1; step <= nt; ++step) {
        rhs = b[0] * out.u.row(step - 1).segment(1, m).transpose();
        for (Eigen::Index l = 1; l < step; ++l) rhs -= b[l] * diff.row(step - 1 - l).transpose();
        if (prob.f) {
            for (Eigen::Index j = 0; j < m; ++j) {
                p[0] = out.x[j + 1];
                rhs[j] += prob.f(out.t[step], p);
            }
        }
        rhs[0] += c * left;
        rhs[m - 1] += c * right;
        Eigen::VectorXd next = solver.solve(rhs);
        if (solver.info() != Eigen::Success) throw ConvergenceError("solve_fd: solve failed", 0.0);
        out.u(step, 0) = left;
        out.u(step, nx - 1) = right;
        out.u.row(step).segment(1, m) = next.transpose();
        diff.row(step - 1) = (out.u.row(step) - out.u.row(step - 1)).segment(1, m);
    }
    return out;
}

}  // namespace ultraslow
