#include "ultraslow/quadrature.hpp"

#include <array>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ultraslow {
namespace {

struct StoredRule {
    std::vector<double> x;
    std::vector<double> w;
    GaussRule view;
};

StoredRule make_rule(int n) {
    StoredRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    r.view = GaussRule{r.x, r.w};
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static const std::array<int, 7> sizes{4, 8, 16, 24, 32, 48, 64};
    static const std::array<StoredRule, 7> rules = [] {
        std::array<StoredRule, 7> out;
        for (std::size_t i = 0; i < sizes.size(); ++i) out[i] = make_rule(sizes[i]);
        for (auto& r : out) r.view = GaussRule{r.x, r.w};
        return out;
    }();
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (sizes[i] == n) return rules[i].view;
    throw std::invalid_argument("gauss_legendre: unsupported rule size");
}

}  // namespace ultraslow
