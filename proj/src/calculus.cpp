#include "ultraslow/calculus.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/QR>

#include "ultraslow/quadrature.hpp"

namespace ultraslow {

Grid1D::Grid1D(Eigen::VectorXd n, Eigen::VectorXd v) : nodes(std::move(n)), values(std::move(v)) {
    if (nodes.size() < 2) throw DomainError("Grid1D: need at least two nodes");
    if (nodes.size() != values.size()) throw DomainError("Grid1D: nodes and values differ in size");
    if (nodes[0] != 0.0) throw DomainError("Grid1D: first node must be 0");
    for (Eigen::Index i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1])) throw DomainError("Grid1D: nodes must increase strictly");
}

Grid1D Grid1D::uniform(double T, int N, const std::function<double(double)>& f) {
    if (!(T > 0.0) || N < 1) throw DomainError("Grid1D::uniform: need T > 0, N >= 1");
    Eigen::VectorXd t(N + 1), u(N + 1);
    for (int i = 0; i <= N; ++i) {
        t[i] = T * i / N;
        u[i] = f(t[i]);
    }
    return {t, u};
}

Grid1D Grid1D::graded(double T, int N, double grading, const std::function<double(double)>& f) {
    if (!(T > 0.0) || N < 1 || !(grading >= 1.0))
        throw DomainError("Grid1D::graded: need T > 0, N >= 1, grading >= 1");
    Eigen::VectorXd t(N + 1), u(N + 1);
    for (int i = 0; i <= N; ++i) {
        t[i] = T * std::pow(double(i) / N, grading);
        u[i] = f(t[i]);
    }
    return {t, u};
}

bool Grid1D::is_uniform() const {
    const double h = nodes[1] - nodes[0];
    for (Eigen::Index i = 1; i < nodes.size(); ++i)
        if (std::abs((nodes[i] - nodes[i - 1]) - h) > 1e-12 * h) return false;
    return true;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Kernel moments of panel j = [t_j, t_{j+1}] seen from node i, i.e. over
// sigma in [a, b] = [t_i - t_{j+1}, t_i - t_j]. On uniform grids they depend only on
// the offset i - j - 1 and are cached.
class PanelMoments {
public:
    PanelMoments(const KernelSet& ks, const Grid1D& g)
        : ks_(ks), g_(g), uniform_(g.is_uniform()), h_(g.nodes[1] - g.nodes[0]) {}

    double a(Eigen::Index i, Eigen::Index j) const {
        return uniform_ ? double(i - j - 1) * h_ : g_.nodes[i] - g_.nodes[j + 1];
    }
    double b(Eigen::Index i, Eigen::Index j) const {
        return uniform_ ? double(i - j) * h_ : g_.nodes[i] - g_.nodes[j];
    }
    double k1(Eigen::Index i, Eigen::Index j) const {
        return cached(k1_, i, j, [&] { return ks_.k_integral(a(i, j), b(i, j)); });
    }
    double k2(Eigen::Index i, Eigen::Index j) const {
        return cached(k2_, i, j, [&] { return ks_.k_first_moment(a(i, j), b(i, j)); });
    }
    // k at the far end b of the panel
    double kb(Eigen::Index i, Eigen::Index j) const {
        return cached(kb_, i, j, [&] { return ks_.k(b(i, j)); });
    }
    std::pair<double, double> kappa(Eigen::Index i, Eigen::Index j) const {
        if (!uniform_) return ks_.kappa_moments(a(i, j), b(i, j));
        const auto m = std::size_t(i - j - 1);
        if (m >= kap_.size()) kap_.resize(m + 1, {kNaN, kNaN});
        if (std::isnan(kap_[m].first)) kap_[m] = ks_.kappa_moments(a(i, j), b(i, j));
        return kap_[m];
    }

    // Kernel-adapted panels. With U = int_0^t kappa, the interpolant on panel j is
    // u_j + (u_{j+1} - u_j) (U - U_j) / (U_{j+1} - U_j).
    double U(Eigen::Index j) const {
        prepare();
        return u_nodes_[std::size_t(j)];
    }
    // int_0^{t_1} k(t_i - tau) kappa(tau) d tau; 1 at i = 1 since k * kappa = 1
    double caputo_start(Eigen::Index i) const {
        prepare();
        if (i == 1) return 1.0;
        double sum = 0.0;
        const auto& p = panels_[0];
        for (std::size_t q = 0; q < p.tau.size(); ++q)
            sum += p.w[q] * k_at(i, 0, q) * p.kap[q];
        return sum;
    }
    // int over panel j of k(t_m - tau) U(tau) d tau, j < m
    double v(Eigen::Index m, Eigen::Index j) const {
        prepare();
        const auto& p = panels_[std::size_t(j)];
        if (m == j + 1) {
            // k singular at the right end: product rule in s = t_{j+1} - tau,
            // or k * U = t on the first panel
            if (j == 0) return g_.nodes[1];
            double sum = 0.0;
            for (std::size_t q = 0; q < p.near_w.size(); ++q) sum += p.near_w[q] * p.near_u[q];
            return sum;
        }
        double sum = 0.0;
        for (std::size_t q = 0; q < p.tau.size(); ++q) sum += p.w[q] * k_at(m, j, q) * p.u[q];
        return sum;
    }

private:
    static constexpr Eigen::Index kEarly = 32;
    static constexpr int kNear = 9;

    struct Panel {
        std::vector<double> tau, w, u, kap;  // far rule
        std::vector<double> near_w, near_u;  // adjacent rule in s = t_{j+1} - tau
    };

    // k(t_m - tau_q) for a node of panel j, cached by m - j on uniform grids
    double k_at(Eigen::Index m, Eigen::Index j, std::size_t q) const {
        const auto& p = panels_[std::size_t(j)];
        if (!uniform_) return ks_.k(g_.nodes[m] - p.tau[q]);
        auto& row = j == 0 ? k_first_ : (j < kEarly ? k_rest_ : k_late_);
        const std::size_t d = std::size_t(m - j), n = p.tau.size();
        if ((d + 1) * n > row.size()) row.resize((d + 1) * n, kNaN);
        double& slot = row[d * n + q];
        if (std::isnan(slot)) slot = ks_.k(double(d) * h_ - (p.tau[q] - g_.nodes[j]));
        return slot;
    }

    void prepare() const {
        if (!panels_.empty()) return;
        const Eigen::Index N = g_.size() - 1;
        auto U_of = [&](double t) { return ks_.kappa_integral(t, false).value; };
        u_nodes_.resize(std::size_t(N) + 1);
        u_nodes_[0] = 0.0;
        for (Eigen::Index j = 1; j <= N; ++j) u_nodes_[j] = U_of(g_.nodes[j]);

        // Lagrange weights int_0^h L_q(s) k(s) ds, s = h x, from monomial moments
        auto near_weights = [&](double h, const std::vector<double>& x) {
            const int n_pts = int(x.size());
            Eigen::MatrixXd V(n_pts, n_pts);
            Eigen::VectorXd mom(n_pts);
            const double lh = std::log(h);
            for (int n = 0; n < n_pts; ++n) {
                for (int q = 0; q < n_pts; ++q) V(n, q) = std::pow(x[q], n);
                mom[n] = ks_.weight().order_integral([&](double al) {
                    return rgamma(1.0 - al) * std::exp((1.0 - al) * lh) / (n + 1.0 - al);
                });
            }
            Eigen::VectorXd w = V.colPivHouseholderQr().solve(mom);
            return std::vector<double>(w.data(), w.data() + n_pts);
        };
        const auto& first = gauss_legendre(48);
        std::vector<double> x_near;  // fractions of the panel width, measured from its right end
        for (double x : gauss_legendre(kNear - 1).nodes) x_near.push_back(0.5 * (x + 1.0));
        x_near.push_back(0.0);

        panels_.resize(std::size_t(N));
        for (Eigen::Index j = 0; j < N; ++j) {
            auto& p = panels_[std::size_t(j)];
            const double t0 = g_.nodes[j], h = g_.nodes[j + 1] - t0;
            if (j == 0) {
                // tau = h x^3 absorbs the logarithmic singularity of kappa at 0
                for (std::size_t q = 0; q < first.size(); ++q) {
                    const double x = 0.5 * (first.nodes[q] + 1.0);
                    const double tau = h * x * x * x;
                    p.tau.push_back(tau);
                    p.w.push_back(0.5 * first.weights[q] * 3.0 * h * x * x);
                    p.u.push_back(U_of(tau));
                    p.kap.push_back(ks_.kappa_spectral(tau).value);
                }
                continue;
            }
            // U is smooth on panels away from 0: fewer nodes suffice there
            const bool early = j < kEarly;
            const auto& far = gauss_legendre(early ? 32 : 8);
            for (std::size_t q = 0; q < far.size(); ++q) {
                const double tau = t0 + 0.5 * h * (far.nodes[q] + 1.0);
                p.tau.push_back(tau);
                p.w.push_back(0.5 * h * far.weights[q]);
                p.u.push_back(U_of(tau));
            }
            if (early) {
                p.near_w = near_weights(h, x_near);
                for (double x : x_near) p.near_u.push_back(U_of(t0 + h - h * x));
            } else {
                // the far nodes mirrored about the panel centre
                std::vector<double> x;
                for (double tau : p.tau) x.push_back((t0 + h - tau) / h);
                p.near_w = near_weights(h, x);
                p.near_u = p.u;
            }
        }
    }

    template <class F>
    double cached(std::vector<double>& store, Eigen::Index i, Eigen::Index j, F&& compute) const {
        if (!uniform_) return compute();
        const auto m = std::size_t(i - j - 1);
        if (m >= store.size()) store.resize(m + 1, kNaN);
        if (std::isnan(store[m])) store[m] = compute();
        return store[m];
    }

    const KernelSet& ks_;
    const Grid1D& g_;
    bool uniform_;
    double h_;
    mutable std::vector<double> k1_, k2_, kb_;
    mutable std::vector<std::pair<double, double>> kap_;
    mutable std::vector<double> u_nodes_, k_first_, k_rest_, k_late_;
    mutable std::vector<Panel> panels_;
};

double slope(const Grid1D& g, Eigen::Index j) {
    return (g.values[j + 1] - g.values[j]) / (g.nodes[j + 1] - g.nodes[j]);
}

void check_index(const Grid1D& g, Eigen::Index i, Eigen::Index min) {
    if (i < min || i >= g.size()) throw DomainError("node index out of range");
}

double caputo_at(const PanelMoments& pm, const Grid1D& g, Eigen::Index i, StartPanel start) {
    double sum = 0.0;
    Eigen::Index j = 0;
    if (start == StartPanel::KernelAdapted) {
        sum += (g.values[1] - g.values[0]) / pm.U(1) * pm.caputo_start(i);
        j = 1;
    }
    for (; j < i; ++j) sum += slope(g, j) * pm.k1(i, j);
    return sum;
}

// int_0^{t_m} k(t_m - tau) (u(tau) - u(0)) d tau for the interpolant
double convolution_at(const PanelMoments& pm, const Grid1D& g, Eigen::Index m,
                      StartPanel start) {
    double sum = 0.0;
    Eigen::Index j = 0;
    if (start == StartPanel::KernelAdapted) {
        for (; j < m; ++j) {
            const double beta = (g.values[j + 1] - g.values[j]) / (pm.U(j + 1) - pm.U(j));
            sum += (g.values[j] - g.values[0] - beta * pm.U(j)) * pm.k1(m, j) + beta * pm.v(m, j);
        }
        return sum;
    }
    for (; j < m; ++j)
        sum += (g.values[j + 1] - g.values[0]) * pm.k1(m, j) - slope(g, j) * pm.k2(m, j);
    return sum;
}

// Weight of node k in the derivative at x_i of the interpolant through nodes first..last.
double derivative_weight(const Grid1D& g, Eigen::Index first, Eigen::Index last, Eigen::Index i,
                         Eigen::Index k) {
    const double xi = g.nodes[i];
    double w;
    if (k == i) {
        w = 0.0;
        for (Eigen::Index m = first; m <= last; ++m)
            if (m != i) w += 1.0 / (xi - g.nodes[m]);
        return w;
    }
    w = 1.0;
    for (Eigen::Index m = first; m <= last; ++m) {
        if (m == k) continue;
        if (m != i) w *= (xi - g.nodes[m]);
        w /= (g.nodes[k] - g.nodes[m]);
    }
    return w;
}

// Four-point one-sided difference; at node 1 the three points 0, 1, 2 when available.
template <class Conv>
double general_from(const Grid1D& g, Eigen::Index i, Conv&& conv) {
    Eigen::Index first = std::max<Eigen::Index>(0, i - 3), last = i;
    if (i == 1 && g.size() > 2) last = 2;
    double sum = 0.0;
    for (Eigen::Index k = std::max<Eigen::Index>(first, 1); k <= last; ++k)
        sum += derivative_weight(g, first, last, i, k) * conv(k);
    return sum;
}

double marchaud_at(const KernelSet& ks, const PanelMoments& pm, const Grid1D& g, Eigen::Index i,
                   double eps, double tol) {
    if (std::abs(g.values[0]) > 1e-14 * (1.0 + g.values.cwiseAbs().maxCoeff()))
        throw DomainError("Marchaud form needs u(0) = 0, i.e. u in the range of I^(mu)");
    const double ti = g.nodes[i];
    const double ui = g.values[i];
    const double h_last = ti - g.nodes[i - 1];
    if (eps <= 0.0) eps = h_last;
    if (eps > ti) throw DomainError("Marchaud form needs eps <= t");

    // Full panel j, tau in [a, b]: u(t - tau) - u(t) = A + B (tau - a)
    auto full = [&](Eigen::Index j) {
        const double a = pm.a(i, j), b = pm.b(i, j);
        const double A = g.values[j + 1] - ui, B = -slope(g, j);
        const double ka = ks.k(a);
        return A * (pm.kb(i, j) - ka) + B * ((b - a) * pm.kb(i, j) - pm.k1(i, j));
    };
    // Panel j clipped to [e, b], a < e <= b, e = exp(log_e)
    auto clipped = [&](Eigen::Index j, double log_e) {
        const double a = pm.a(i, j), b = pm.b(i, j);
        const double B = -slope(g, j);
        if (j == i - 1) {
            // a = 0, A = 0: B (b k(b) - e k(e) - int_e^b k)
            const double tail = ks.k_integral(0.0, b) - ks.k_integral_log(log_e);
            return B * (b * pm.kb(i, j) - ks.s_k(log_e) - tail);
        }
        const double e = std::exp(log_e);
        const double A = g.values[j + 1] - ui;
        const double ke = ks.k(e);
        return A * (pm.kb(i, j) - ke) + B * ((b - a) * pm.kb(i, j) - (e - a) * ke -
                                             ks.k_integral(e, b));
    };
    auto truncated = [&](double log_e) {
        const double e = std::exp(log_e);
        double sum = 0.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double a = pm.a(i, j), b = pm.b(i, j);
            if (b <= e) continue;
            sum += (a >= e && j != i - 1) ? full(j) : clipped(j, log_e);
        }
        return sum;
    };

    const double base = ks.k(ti) * ui;
    const double log_eps = std::log(eps);
    double prev = truncated(log_eps);
    for (int j = 1; j < 62; ++j) {
        const double cur = truncated(log_eps + 1.0 - std::ldexp(1.0, j));
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return base + cur;
        prev = cur;
    }
    throw ConvergenceError("Marchaud form: truncation sequence did not settle", std::abs(prev));
}

}  // namespace

double d_mu_caputo(const KernelSet& ks, const Grid1D& g, Eigen::Index i, StartPanel start) {
    check_index(g, i, 1);
    return caputo_at(PanelMoments(ks, g), g, i, start);
}

Eigen::VectorXd d_mu_caputo(const KernelSet& ks, const Grid1D& g, StartPanel start) {
    PanelMoments pm(ks, g);
    Eigen::VectorXd out(g.size());
    out[0] = kNaN;
    for (Eigen::Index i = 1; i < g.size(); ++i) out[i] = caputo_at(pm, g, i, start);
    return out;
}

double d_mu_general(const KernelSet& ks, const Grid1D& g, Eigen::Index i, StartPanel start) {
    check_index(g, i, 1);
    PanelMoments pm(ks, g);
    return general_from(g, i, [&](Eigen::Index m) { return convolution_at(pm, g, m, start); });
}

Eigen::VectorXd d_mu_general(const KernelSet& ks, const Grid1D& g, StartPanel start) {
    PanelMoments pm(ks, g);
    Eigen::VectorXd conv(g.size());
    conv[0] = 0.0;
    for (Eigen::Index m = 1; m < g.size(); ++m) conv[m] = convolution_at(pm, g, m, start);
    Eigen::VectorXd out(g.size());
    out[0] = kNaN;
    for (Eigen::Index i = 1; i < g.size(); ++i)
        out[i] = general_from(g, i, [&](Eigen::Index m) { return conv[m]; });
    return out;
}

double d_mu_marchaud(const KernelSet& ks, const Grid1D& g, Eigen::Index i, double eps,
                     double tol) {
    check_index(g, i, 1);
    return marchaud_at(ks, PanelMoments(ks, g), g, i, eps, tol);
}

Eigen::VectorXd d_mu_marchaud(const KernelSet& ks, const Grid1D& g) {
    PanelMoments pm(ks, g);
    Eigen::VectorXd out(g.size());
    out[0] = kNaN;
    for (Eigen::Index i = 1; i < g.size(); ++i) out[i] = marchaud_at(ks, pm, g, i, 0.0, 1e-12);
    return out;
}

Grid1D i_mu(const KernelSet& ks, const Grid1D& f) {
    PanelMoments pm(ks, f);
    Eigen::VectorXd out(f.size());
    out[0] = 0.0;
    for (Eigen::Index i = 1; i < f.size(); ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            const auto [m0, m1] = pm.kappa(i, j);
            sum += f.values[j + 1] * m0 - slope(f, j) * m1;
        }
        out[i] = sum;
    }
    return {f.nodes, out};
}

std::string to_csv(const Grid1D& g) {
    std::string out = "t,value\n";
    char line[64];
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", g.nodes[i], g.values[i]);
        out += line;
    }
    return out;
}

Grid1D grid_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> t, u;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double a, b;
        if (std::sscanf(line.c_str(), "%lf,%lf", &a, &b) != 2) {
            if (header) {
                header = false;
                continue;
            }
            throw DomainError("grid CSV: malformed line '" + line + "'");
        }
        header = false;
        t.push_back(a);
        u.push_back(b);
    }
    return {Eigen::Map<Eigen::VectorXd>(t.data(), Eigen::Index(t.size())),
            Eigen::Map<Eigen::VectorXd>(u.data(), Eigen::Index(u.size()))};
}

}  // namespace ultraslow
