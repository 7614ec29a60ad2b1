#include "ultraslow/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ultraslow/quadrature.hpp"

namespace ultraslow {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dimension(int n) {
    if (n < 1 || n > 3) throw DomainError("Green functions are implemented for n = 1, 2, 3");
}

void check_radius(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("Green functions need |x| > 0");
}

std::vector<cplx> sample_k(const KernelSet& ks, const InversionRule& rule) {
    std::vector<cplx> out(rule.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = ks.K(rule.nodes[j]);
    return out;
}

}  // namespace

std::string to_string(GreenPath path) {
    switch (path) {
        case GreenPath::ContourDirect: return "contour";
        case GreenPath::Subordination: return "subordination";
        case GreenPath::ClosedFormN1: return "closed-form-n1";
        case GreenPath::Bromwich: return "bromwich";
    }
    return "unknown";
}

cplx z_laplace(int n, cplx K, cplx pK, double r) {
    check_dimension(n);
    check_radius(r);
    const cplx s = std::sqrt(pK);
    if (!(s.real() > 0.0)) throw DomainError("z_laplace: Re sqrt(p K(p)) <= 0");
    if (n == 1) return 0.5 * K / s * std::exp(-r * s);
    // (2 pi)^{-n/2} r^{1-n/2} K s^{n/2-1} K_{n/2-1}(r s)
    const double half = 0.5 * n - 1.0;
    const cplx bessel = mcdonald_k(McdonaldOrder::for_dimension(n), r * s);
    return std::pow(2.0 * kPi, -0.5 * n) * std::pow(r, -half) * K * std::pow(s, half) * bessel;
}

cplx z_laplace(const KernelSet& ks, int n, cplx p, double r) {
    const cplx K = ks.K(p);
    return z_laplace(n, K, p * K, r);
}

cplx e_laplace(const KernelSet& ks, int n, cplx p, double r) {
    const cplx K = ks.K(p);
    return z_laplace(n, K, p * K, r) / K;
}

ContourGreen::ContourGreen(const KernelSet& ks, double t)
    : t_(t), rules_(Contour::for_time(t), t > 0.0 ? t : 1.0) {
    if (!(t > 0.0)) throw DomainError("Green functions need t > 0");
    k_coarse_ = sample_k(ks, rules_.coarse);
    k_fine_ = sample_k(ks, rules_.fine);
}

GreenEval ContourGreen::apply(int n, double r, bool potential) const {
    auto run = [&](const InversionRule& rule, const std::vector<cplx>& ks) {
        std::vector<cplx> out(rule.size());
        for (std::size_t j = 0; j < out.size(); ++j) {
            const cplx z = z_laplace(n, ks[j], rule.nodes[j] * ks[j], r);
            out[j] = potential ? z / ks[j] : z;
        }
        detail::check_finite_on_contour(out);
        return out;
    };
    const auto est = combine(rules_, run(rules_.coarse, k_coarse_), run(rules_.fine, k_fine_));
    return {est.value.real(), est.error, n == 1 ? GreenPath::ClosedFormN1 : GreenPath::ContourDirect};
}

GreenEval ContourGreen::z(int n, double r) const { return apply(n, r, false); }
GreenEval ContourGreen::e(int n, double r) const { return apply(n, r, true); }

GreenEval z_eval(const KernelSet& ks, int n, double t, double r) {
    check_dimension(n);
    check_radius(r);
    return ContourGreen(ks, t).z(n, r);
}

GreenEval e_eval(const KernelSet& ks, int n, double t, double r) {
    check_dimension(n);
    check_radius(r);
    return ContourGreen(ks, t).e(n, r);
}

SubordinationDensity::SubordinationDensity(const KernelSet& ks, double t)
    : ks_(&ks), t_(t) {
    if (!(t > 0.0)) throw DomainError("G(u, t) needs t > 0");
    for (double omega : {0.9, 0.6}) {
        Sampled s{RulePair(Contour::for_time(t, 0.0, omega), t), {}, {}, {}, {}};
        s.k_coarse = sample_k(ks, s.rules.coarse);
        s.k_fine = sample_k(ks, s.rules.fine);
        for (std::size_t j = 0; j < s.k_coarse.size(); ++j)
            s.pk_coarse.push_back(s.rules.coarse.nodes[j] * s.k_coarse[j]);
        for (std::size_t j = 0; j < s.k_fine.size(); ++j)
            s.pk_fine.push_back(s.rules.fine.nodes[j] * s.k_fine[j]);
        contours_.push_back(std::move(s));
    }
}

bool SubordinationDensity::Sampled::usable(double u, double t) const {
    const double arc = 1.0;  // gamma t for gamma = 1/t
    double worst = -1e300, far = -1e300, far_radius = 0.0;
    for (std::size_t j = 0; j < pk_fine.size(); ++j) {
        const cplx p = rules.fine.nodes[j];
        const double e = p.real() * t - u * pk_fine[j].real();
        worst = std::max(worst, e);
        if (std::abs(p) > far_radius) {
            far_radius = std::abs(p);
            far = e;
        }
    }
    return worst <= arc + 10.0 && far <= arc - 30.0;
}

Estimate<cplx> SubordinationDensity::Sampled::eval(double u) const {
    auto run = [&](const std::vector<cplx>& k, const std::vector<cplx>& pk) {
        std::vector<cplx> v(k.size());
        for (std::size_t j = 0; j < k.size(); ++j) v[j] = k[j] * std::exp(-u * pk[j]);
        return v;
    };
    return combine(rules, run(k_coarse, pk_coarse), run(k_fine, pk_fine));
}

GreenEval SubordinationDensity::operator()(double u) const {
    if (!(u > 0.0)) throw DomainError("G(u, t) needs u > 0");
    if (auto it = memo_.find(u); it != memo_.end()) return it->second;
    GreenEval out;
    bool done = false;
    for (const auto& c : contours_) {
        if (!c.usable(u, t_)) continue;
        const auto est = c.eval(u);
        out = {est.value.real(), est.error, GreenPath::ContourDirect};
        done = true;
        break;
    }
    if (!done) {
        const auto est = invert_bromwich(
            [&](cplx p) {
                const cplx K = ks_->K(p);
                return K * std::exp(-u * p * K);
            },
            1.0 / t_, t_, 1e7, 1e-10);
        out = {est.value.real(), est.error, GreenPath::Bromwich};
    }
    memo_.emplace(u, out);
    return out;
}

double SubordinationDensity::tail(double tol) const {
    if (tail_ > 0.0) return tail_;
    double peak = 0.0;
    double u = t_ / 16.0;
    for (int k = 0; k < 60; ++k, u *= 2.0) {
        const double g = std::abs((*this)(u).value);
        peak = std::max(peak, g);
        if (u > t_ && g < tol * peak) {
            // G decays monotonically past its bulk: bisect for the crossing
            double lo = 0.5 * u, hi = u;
            for (int i = 0; i < 6; ++i) {
                const double mid = 0.5 * (lo + hi);
                (std::abs((*this)(mid).value) < tol * peak ? hi : lo) = mid;
            }
            tail_ = hi;
            return tail_;
        }
    }
    throw ConvergenceError("G(u, t): no tail found", u);
}

GreenEval g_density(const KernelSet& ks, double u, double t) {
    return SubordinationDensity(ks, t)(u);
}

GreenEval g_mass(const SubordinationDensity& g) {
    const double hi = g.tail();
    // G is smooth with a steep shoulder; panels of width ~t/4 keep the rule local
    const int panels = std::max(8, int(std::ceil(4.0 * hi / g.t())));
    double value = 0.0, error = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = hi * i / panels, b = hi * (i + 1) / panels;
        auto q = adaptive_gauss([&](double u) { return g(u).value; }, a, b, 1e-10, 1e-15, 30, 16);
        value += q.value;
        error += q.error;
    }
    return {value, error, GreenPath::Subordination};
}

GreenEval z_subordinate(const SubordinationDensity& g, int n, double r) {
    check_dimension(n);
    check_radius(r);
    const double hi = g.tail();
    const double lo = std::min(r * r / (4.0 * 700.0), 0.5 * hi);
    auto f = [&](double u) {
        return g(u).value * std::pow(4.0 * kPi * u, -0.5 * n) * std::exp(-r * r / (4.0 * u));
    };
    const int panels = std::max(8, int(std::ceil(4.0 * hi / g.t())));
    double value = 0.0, error = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = lo + (hi - lo) * i / panels, b = lo + (hi - lo) * (i + 1) / panels;
        auto q = adaptive_gauss(f, a, b, 1e-10, 1e-16, 30, 16);
        value += q.value;
        error += q.error;
    }
    return {value, error, GreenPath::Subordination};
}

GreenEval z_subordinate(const KernelSet& ks, int n, double t, double r) {
    return z_subordinate(SubordinationDensity(ks, t), n, r);
}

double sphere_area(int n) {
    check_dimension(n);
    return n == 1 ? 2.0 : (n == 2 ? 2.0 * kPi : 4.0 * kPi);
}

GreenEval radial_integral(const std::function<double(double)>& f, int n, int power,
                          double rtol, double scale, double atol) {
    check_dimension(n);
    if (!(scale > 0.0)) throw DomainError("radial_integral: scale must be positive");
    const double area = sphere_area(n);
    const int exponent = n - 1 + power;
    auto h = [&](double r) { return area * std::pow(r, exponent) * f(r); };
    double total = 0.0, error = 0.0, prev = 0.0;
    int quiet = 0;
    for (int k = 0; k < 400; ++k) {
        const double a = k * scale, b = (k + 1) * scale;
        auto q = adaptive_gauss(h, a, b, rtol, std::max(atol, 1e-3 * rtol * std::abs(total)), 40, 16);
        total += q.value;
        error += q.error;
        const double size = std::abs(q.value);
        if (k > 0 && size <= std::max(rtol * std::abs(total), atol)) {
            // exponential tail fitted from the last two panels
            const double ratio = prev > 0.0 ? size / prev : 0.0;
            if (++quiet >= 2 && ratio < 1.0) {
                error += size * ratio / (1.0 - ratio);
                return {total, error, GreenPath::ContourDirect};
            }
        } else {
            quiet = 0;
        }
        prev = size;
    }
    throw ConvergenceError("radial_integral: integrand does not decay", std::abs(prev));
}

namespace {

double spatial_scale(const KernelSet& ks, int n, double t) {
    return std::max(1e-3, 0.5 * std::sqrt(msd(ks, n, t).value / n));
}

}  // namespace

GreenEval z_mass(const KernelSet& ks, int n, double t) {
    const ContourGreen cg(ks, t);
    return radial_integral([&](double r) { return cg.z(n, r).value; }, n, 0, 1e-9,
                           spatial_scale(ks, n, t));
}

GreenEval e_mass(const KernelSet& ks, int n, double t) {
    const ContourGreen cg(ks, t);
    return radial_integral([&](double r) { return cg.e(n, r).value; }, n, 0, 1e-9,
                           spatial_scale(ks, n, t));
}

GreenEval msd_direct(const KernelSet& ks, int n, double t) {
    const ContourGreen cg(ks, t);
    return radial_integral([&](double r) { return cg.z(n, r).value; }, n, 2, 1e-9,
                           spatial_scale(ks, n, t));
}

Estimate<double> msd(const KernelSet& ks, int n, double t) {
    check_dimension(n);
    if (!(t > 0.0)) throw DomainError("msd: t must be positive");
    const auto e = ks.kappa_integral(t);
    return {2.0 * n * e.value, 2.0 * n * e.error};
}

GreenEval z_at_origin(const KernelSet& ks, double t) {
    if (!(t > 0.0)) throw DomainError("z_at_origin: t must be positive");
    auto f = [&](cplx p) {
        const cplx K = ks.K(p);
        return 0.5 * K / std::sqrt(p * K);
    };
    const auto a = invert_bromwich(f, 1.0 / t, t, 1e7 / t, 1e-10);
    const auto b = invert_on_contour(f, Contour::for_time(t), t, 1e-9);
    const double diff = std::abs(a.value.real() - b.value.real());
    const double allowed =
        std::max(10.0 * (a.error + b.error), 1e-8 * std::abs(a.value.real()));
    if (diff > allowed) throw DisagreementError("Z(t, 0): Bromwich and contour disagree", diff);
    return {a.value.real(), std::max(a.error, diff), GreenPath::Bromwich};
}

double decay_slope(const KernelSet& ks, double t, const std::vector<double>& radii) {
    if (radii.size() < 2) throw DomainError("decay_slope needs at least two radii");
    const ContourGreen cg(ks, t);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double r : radii) {
        const auto z = cg.z(1, r);
        if (!(z.value > z.error)) throw ConvergenceError("decay_slope: Z below its error", z.error);
        const double y = std::log(z.value);
        sx += r;
        sy += y;
        sxx += r * r;
        sxy += r * y;
    }
    const double m = double(radii.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace ultraslow
