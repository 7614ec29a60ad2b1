#include "ultraslow/weight.hpp"

#include <algorithm>
#include <cmath>

namespace ultraslow {

std::string to_string(WeightKind kind) {
    switch (kind) {
        case WeightKind::Constant: return "constant";
        case WeightKind::PowerLaw: return "power_law";
        case WeightKind::Product: return "product";
        case WeightKind::Tabulated: return "tabulated";
    }
    return "unknown";
}

namespace {

bool is_integer(double v) { return v == std::floor(v); }

int sign(double v) { return (v > 0) - (v < 0); }

}  // namespace

Weight Weight::constant(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("constant weight must be positive");
    Weight w;
    w.kind_ = WeightKind::Constant;
    w.scale_ = c;
    w.finish();
    return w;
}

Weight Weight::power_law(double a, double nu) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("power-law amplitude must be positive");
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("vanishing order nu must be >= 0");
    Weight w;
    w.kind_ = WeightKind::PowerLaw;
    w.scale_ = a;
    w.nu_ = nu;
    w.finish();
    return w;
}

Weight Weight::product(double nu, std::vector<double> coeffs) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("vanishing order nu must be >= 0");
    if (coeffs.empty()) throw DomainError("product weight needs polynomial coefficients");
    Weight w;
    w.kind_ = WeightKind::Product;
    w.nu_ = nu;
    w.coeffs_ = std::move(coeffs);
    w.finish();
    return w;
}

Weight Weight::tabulated(std::vector<double> samples, double nu) {
    if (samples.size() < 2) throw DomainError("tabulated weight needs at least two samples");
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("vanishing order nu must be >= 0");
    bool any_positive = false;
    for (double s : samples) {
        if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("tabulated samples must be >= 0");
        any_positive = any_positive || s > 0.0;
    }
    if (!any_positive) throw DomainError("weight must not vanish identically");
    Weight w;
    w.kind_ = WeightKind::Tabulated;
    w.nu_ = nu;
    w.samples_ = std::move(samples);

    const std::size_t n = w.samples_.size();
    const double h = 1.0 / double(n - 1);
    std::vector<double> d(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) d[k] = (w.samples_[k + 1] - w.samples_[k]) / h;
    w.slopes_.assign(n, 0.0);
    if (n == 2) {
        w.slopes_[0] = w.slopes_[1] = d[0];
    } else {
        for (std::size_t k = 1; k + 1 < n; ++k) {
            if (d[k - 1] * d[k] > 0.0) w.slopes_[k] = 2.0 / (1.0 / d[k - 1] + 1.0 / d[k]);
        }
        auto end_slope = [](double d0, double d1) {
            double m = 0.5 * (3.0 * d0 - d1);
            if (sign(m) != sign(d0)) m = 0.0;
            else if (sign(d0) != sign(d1) && std::abs(m) > std::abs(3.0 * d0)) m = 3.0 * d0;
            return m;
        };
        w.slopes_[0] = end_slope(d[0], d[1]);
        w.slopes_[n - 1] = end_slope(d[n - 2], d[n - 3]);
    }
    w.finish();
    return w;
}

void Weight::finish() {
    switch (kind_) {
        case WeightKind::Constant:
            rho_ = scale_;
            smoothness_ = kSmooth;
            break;
        case WeightKind::PowerLaw:
            rho_ = scale_;
            smoothness_ = is_integer(nu_) ? kSmooth : int(std::floor(nu_));
            break;
        case WeightKind::Product: {
            double lowest = poly(0.0);
            for (int i = 1; i <= 4000; ++i) lowest = std::min(lowest, poly(i / 4000.0));
            if (!(lowest > 0.0))
                throw DomainError("product weight factor must be bounded below by rho > 0");
            rho_ = lowest;
            smoothness_ = is_integer(nu_) ? kSmooth : int(std::floor(nu_));
            break;
        }
        case WeightKind::Tabulated:
            rho_ = 0.0;
            smoothness_ = 1;
            break;
    }
    at_one_ = evaluate_unchecked(1.0);
}

double Weight::poly(double alpha) const {
    double v = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * alpha + *it;
    return v;
}

double Weight::poly_derivative(double alpha) const {
    double v = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) v = v * alpha + double(k) * coeffs_[k];
    return v;
}

double Weight::evaluate(double alpha) const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("weight evaluated outside [0, 1]");
    return evaluate_unchecked(alpha);
}

double Weight::evaluate_unchecked(double alpha) const {
    switch (kind_) {
        case WeightKind::Constant: return scale_;
        case WeightKind::PowerLaw: return nu_ == 0.0 ? scale_ : scale_ * std::pow(alpha, nu_);
        case WeightKind::Product:
            return (nu_ == 0.0 ? 1.0 : std::pow(alpha, nu_)) * poly(alpha);
        case WeightKind::Tabulated: {
            const std::size_t n = samples_.size();
            const double h = 1.0 / double(n - 1);
            std::size_t k = std::min(n - 2, std::size_t(alpha / h));
            const double s = (alpha - k * h) / h;
            const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
            const double h10 = s * (1 - s) * (1 - s);
            const double h01 = s * s * (3 - 2 * s);
            const double h11 = s * s * (s - 1);
            const double v = h00 * samples_[k] + h10 * h * slopes_[k] + h01 * samples_[k + 1] +
                             h11 * h * slopes_[k + 1];
            return std::max(0.0, v);
        }
    }
    return 0.0;
}

double Weight::derivative(double alpha) const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("weight evaluated outside [0, 1]");
    switch (kind_) {
        case WeightKind::Constant: return 0.0;
        case WeightKind::PowerLaw:
            if (nu_ == 0.0) return 0.0;
            return scale_ * nu_ * std::pow(alpha, nu_ - 1.0);
        case WeightKind::Product: {
            const double p = poly(alpha), dp = poly_derivative(alpha);
            if (nu_ == 0.0) return dp;
            return nu_ * std::pow(alpha, nu_ - 1.0) * p + std::pow(alpha, nu_) * dp;
        }
        case WeightKind::Tabulated: {
            const std::size_t n = samples_.size();
            const double h = 1.0 / double(n - 1);
            std::size_t k = std::min(n - 2, std::size_t(alpha / h));
            const double s = (alpha - k * h) / h;
            const double d00 = 6 * s * s - 6 * s;
            const double d10 = 3 * s * s - 4 * s + 1;
            const double d01 = -d00;
            const double d11 = 3 * s * s - 2 * s;
            return (d00 * samples_[k] + d01 * samples_[k + 1]) / h + d10 * slopes_[k] +
                   d11 * slopes_[k + 1];
        }
    }
    return 0.0;
}

double Weight::leading_coefficient() const {
    switch (kind_) {
        case WeightKind::Constant: return scale_;
        case WeightKind::PowerLaw: return scale_;
        case WeightKind::Product: return poly(0.0);
        case WeightKind::Tabulated: {
            if (nu_ == 0.0) return samples_[0];
            const double h = 1.0 / double(samples_.size() - 1);
            return samples_[1] / std::pow(h, nu_);
        }
    }
    return 0.0;
}

}  // namespace ultraslow
