#include "ultraslow/transform.hpp"

#include <cmath>
#include <numbers>

#include "ultraslow/quadrature.hpp"

namespace ultraslow {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

}  // namespace

cplx InversionRule::apply(const std::vector<cplx>& values) const {
    cplx sum = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) sum += weights[j] * values[j];
    return symmetry == Symmetry::Conjugate ? cplx(sum.real(), 0.0) : sum;
}

double InversionRule::mass(const std::vector<cplx>& values) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) sum += std::abs(weights[j] * values[j]);
    return sum;
}

Contour::Contour(double gamma_, double omega_) : gamma(gamma_), omega(omega_) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("contour radius must be > 0");
    if (!(omega > 0.5 && omega < 1.0)) throw DomainError("contour angle omega must be in (1/2, 1)");
}

Contour Contour::for_time(double t, double floor, double omega) {
    if (!(t > 0.0)) throw DomainError("contour time must be positive");
    return Contour(std::max(1.0 / t, floor), omega);
}

double Contour::r_max(double t) const {
    return gamma + reach / (t * std::abs(std::cos(omega * kPi)));
}

InversionRule Contour::rule(double t, int order, Symmetry symmetry) const {
    if (!(t > 0.0)) throw DomainError("contour time must be positive");
    const auto& gl = gauss_legendre(order);
    InversionRule out;
    out.symmetry = symmetry;
    const double factor = symmetry == Symmetry::Conjugate ? 2.0 : 1.0;
    const cplx prefactor = factor / (2.0 * kPi * kI);

    auto push = [&](cplx p, cplx dp) {
        out.nodes.push_back(p);
        out.weights.push_back(prefactor * std::exp(p * t) * dp);
    };

    // Arc, upper half: phi in [0, omega pi] (and [-omega pi, 0] without symmetry).
    const double phi_max = omega * kPi;
    auto arc = [&](double phi_lo, double phi_hi) {
        const double width = (phi_hi - phi_lo) / arc_panels;
        for (int k = 0; k < arc_panels; ++k) {
            const double a = phi_lo + k * width;
            for (std::size_t i = 0; i < gl.size(); ++i) {
                const double phi = a + 0.5 * width * (gl.nodes[i] + 1.0);
                const cplx p = std::polar(gamma, phi);
                push(p, kI * p * (0.5 * width * gl.weights[i]));
            }
        }
    };
    // Ray at angle sign * omega pi; sign = -1 runs inward, hence the negated weight.
    const double top = r_max(t);
    auto ray = [&](double sign) {
        const cplx dir = std::polar(1.0, sign * phi_max);
        const double orient = sign;
        const double near_end = std::min(2.0 * gamma, top);
        const int near_panels = 2;
        const double near_width = (near_end - gamma) / near_panels;
        for (int k = 0; k < near_panels; ++k) {
            const double a = gamma + k * near_width;
            for (std::size_t i = 0; i < gl.size(); ++i) {
                const double r = a + 0.5 * near_width * (gl.nodes[i] + 1.0);
                push(r * dir, orient * dir * (0.5 * near_width * gl.weights[i]));
            }
        }
        if (top <= 2.0 * gamma) return;
        const double s_lo = std::log(gamma), s_hi = std::log(top - gamma);
        const int panels = std::max(1, int(std::ceil((s_hi - s_lo) / ray_panel_width)));
        const double width = (s_hi - s_lo) / panels;
        for (int k = 0; k < panels; ++k) {
            const double a = s_lo + k * width;
            for (std::size_t i = 0; i < gl.size(); ++i) {
                const double s = a + 0.5 * width * (gl.nodes[i] + 1.0);
                const double e = std::exp(s);
                push((gamma + e) * dir, orient * dir * (e * 0.5 * width * gl.weights[i]));
            }
        }
    };

    arc(0.0, phi_max);
    ray(+1.0);
    if (symmetry == Symmetry::None) {
        arc(-phi_max, 0.0);
        ray(-1.0);
    }
    return out;
}

namespace detail {

void check_finite_on_contour(const std::vector<cplx>& values) {
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DomainError("transform is singular or non-finite on the inversion contour");
}

cplx wynn_epsilon(const std::deque<cplx>& sums) {
    // Column-by-column epsilon table; even columns hold limit estimates.
    std::vector<cplx> prev(sums.size(), 0.0);  // eps_{-1}
    std::vector<cplx> cur(sums.begin(), sums.end());  // eps_0
    cplx best = cur.back();
    for (int col = 1; cur.size() > 1; ++col) {
        std::vector<cplx> next(cur.size() - 1);
        for (std::size_t n = 0; n + 1 < cur.size(); ++n) {
            const cplx diff = cur[n + 1] - cur[n];
            if (std::abs(diff) <= 1e-300 * (1.0 + std::abs(cur[n]))) return best;
            next[n] = prev[n + 1] + 1.0 / diff;
        }
        prev = cur;
        cur = std::move(next);
        if (col % 2 == 0) best = cur.back();
    }
    return best;
}

}  // namespace detail

BromwichInverter::BromwichInverter(double gamma, double t, double tau_max, double rtol)
    : gamma_(gamma), t_(t), tau_max_(tau_max), rtol_(rtol) {
    if (!(t > 0.0)) throw DomainError("Bromwich inversion: t must be positive");
    if (!(tau_max > 0.0)) throw DomainError("Bromwich inversion: tau_max must be positive");
}

const std::vector<cplx>& BromwichInverter::filon_weights(int level, double direction) const {
    auto& table = direction > 0 ? weights_plus_ : weights_minus_;
    if (int(table.size()) > level && !table[level].empty()) return table[level];
    if (int(table.size()) <= level) table.resize(level + 1);

    const auto& gl = gauss_legendre(16);
    const auto& fine = gauss_legendre(64);
    const int n = int(gl.size());
    std::vector<double> bary(n, 1.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (k != j) bary[j] /= (gl.nodes[j] - gl.nodes[k]);

    const double length = (kPi / t_) / std::ldexp(1.0, level);
    std::vector<cplx> w(n, 0.0);
    for (std::size_t m = 0; m < fine.size(); ++m) {
        const double x = fine.nodes[m];
        const double s = 0.5 * length * (x + 1.0);
        const cplx osc = std::exp(kI * (direction * t_ * s)) * (0.5 * length * fine.weights[m]);
        // Lagrange basis at x via the barycentric form.
        double denom = 0.0;
        std::vector<double> terms(n);
        for (int j = 0; j < n; ++j) {
            terms[j] = bary[j] / (x - gl.nodes[j]);
            denom += terms[j];
        }
        for (int j = 0; j < n; ++j) w[j] += osc * (terms[j] / denom);
    }
    table[level] = std::move(w);
    return table[level];
}

cplx BromwichInverter::filon(const std::function<cplx(double)>& g, double start, int level,
                             double direction) const {
    const auto& gl = gauss_legendre(16);
    const auto& w = filon_weights(level, direction);
    const double length = (kPi / t_) / std::ldexp(1.0, level);
    cplx sum = 0.0;
    for (std::size_t j = 0; j < gl.size(); ++j)
        sum += w[j] * g(start + 0.5 * length * (gl.nodes[j] + 1.0));
    return std::exp(kI * (direction * t_ * start)) * sum;
}

Estimate<cplx> BromwichInverter::refined_panel(const std::function<cplx(double)>& g,
                                               double start, double direction,
                                               double scale) const {
    Estimate<cplx> out;
    std::function<void(double, int, cplx)> bisect = [&](double a, int level, cplx whole) {
        const double half = (kPi / t_) / std::ldexp(1.0, level + 1);
        const cplx left = filon(g, a, level + 1, direction);
        const cplx right = filon(g, a + half, level + 1, direction);
        const cplx both = left + right;
        const double diff = std::abs(both - whole);
        if (diff <= 0.1 * rtol_ * std::max(std::abs(both), scale) || level >= 12) {
            out.value += both;
            out.error += diff;
            return;
        }
        bisect(a, level + 1, left);
        bisect(a + half, level + 1, right);
    };
    bisect(start, 0, filon(g, start, 0, direction));
    return out;
}

cplx cut_limit(const Weight& w, double log_r, double rtol) {
    if (log_r > 700.0) throw DomainError("cut_limit: r^alpha overflows");
    double lo = 0.0, hi = 1.0;
    if (log_r < -45.0) hi = 45.0 / -log_r;
    if (log_r > 45.0) lo = 1.0 - 45.0 / log_r;
    return w.order_integral(
        [log_r](double a) { return std::exp(cplx(a * log_r, a * kPi)); }, rtol, lo, hi);
}

double log_measure_density(cplx cut, SpectralMode mode, double log_r) {
    const double c = cut.real(), s = cut.imag();
    if (mode.kind == SpectralMode::Kind::Kappa) {
        const double denom = c * c + s * s;
        return std::exp(log_r) * s / (kPi * denom);
    }
    if (!(mode.lambda < 0.0)) throw DomainError("relaxation density needs lambda < 0");
    const double shifted = c - mode.lambda;
    return -mode.lambda * s / (kPi * (shifted * shifted + s * s));
}

double real_axis_limit_density(const Weight& w, SpectralMode mode, double r) {
    if (!(r > 0.0)) throw DomainError("spectral density needs r > 0");
    const double y = std::log(r);
    return log_measure_density(cut_limit(w, y), mode, y) / r;
}

}  // namespace ultraslow
