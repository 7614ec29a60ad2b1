#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ultraslow/kernels.hpp"

namespace ultraslow {

enum class GreenPath { ContourDirect, Subordination, ClosedFormN1, Bromwich };
std::string to_string(GreenPath path);

/// A point value with its error estimate and the route that produced it.
struct GreenEval {
    double value = 0.0;
    double error = 0.0;
    GreenPath path = GreenPath::ContourDirect;
};

/// Laplace transform in t of Z(t, x) at |x| = r > 0, dimension n in {1, 2, 3}.
/// Throws DomainError if Re sqrt(p K(p)) <= 0.
cplx z_laplace(const KernelSet& ks, int n, cplx p, double r);
/// Same with the precomputed values K(p) and p K(p).
cplx z_laplace(int n, cplx K, cplx pK, double r);
/// Laplace transform of E(t, x): z_laplace / K(p).
cplx e_laplace(const KernelSet& ks, int n, cplx p, double r);

/// Z(t, x) at |x| = r by contour inversion (n = 1 uses the pure exponential form).
GreenEval z_eval(const KernelSet& ks, int n, double t, double r);
/// E(t, x) at |x| = r by contour inversion.
GreenEval e_eval(const KernelSet& ks, int n, double t, double r);

/// K(p) sampled once on the contour for time t, so Z(t, .) and E(t, .) cost only
/// the spatial factor per radius.
class ContourGreen {
public:
    ContourGreen(const KernelSet& ks, double t);

    double t() const { return t_; }
    /// Z(t, x) at |x| = r > 0.
    GreenEval z(int n, double r) const;
    /// E(t, x) at |x| = r > 0.
    GreenEval e(int n, double r) const;

private:
    GreenEval apply(int n, double r, bool potential) const;

    double t_;
    RulePair rules_;
    std::vector<cplx> k_coarse_, k_fine_;
};

/// The subordination density G(u, t), inverse transform of K(p) e^{-u p K(p)}, for
/// one t. K is sampled once on two contours (omega = 0.9 and 0.6); a contour is used
/// while |e^{pt - u p K}| stays within e^{10} of its arc value along the whole path,
/// otherwise the vertical line Re p = 1/t. Values are memoized by u, so an instance
/// is not safe for concurrent use.
class SubordinationDensity {
public:
    SubordinationDensity(const KernelSet& ks, double t);

    double t() const { return t_; }
    GreenEval operator()(double u) const;
    /// A u beyond which |G(u, t)| < tol * max G.
    double tail(double tol = 1e-14) const;

private:
    struct Sampled {
        RulePair rules;
        std::vector<cplx> k_coarse, k_fine, pk_coarse, pk_fine;
        bool usable(double u, double t) const;
        Estimate<cplx> eval(double u) const;
    };

    const KernelSet* ks_;
    double t_;
    std::vector<Sampled> contours_;
    mutable std::map<double, GreenEval> memo_;
    mutable double tail_ = -1.0;
};

/// G(u, t), one-off evaluation.
GreenEval g_density(const KernelSet& ks, double u, double t);

/// Z(t, x) at |x| = r from the mixture int_0^inf G(u, t) (4 pi u)^{-n/2} e^{-r^2 / 4u} du.
GreenEval z_subordinate(const KernelSet& ks, int n, double t, double r);
GreenEval z_subordinate(const SubordinationDensity& g, int n, double r);

/// int_0^inf G(u, t) du.
GreenEval g_mass(const SubordinationDensity& g);

/// Surface area of the unit sphere in R^n, n = 1, 2, 3 (2, 2 pi, 4 pi).
double sphere_area(int n);

/// int_{R^n} |x|^power f(|x|) dx in radial form over panels of width `scale`, with an
/// exponential tail bound fitted from the last two panels added to the error. Panels
/// are added until two in a row fall below max(rtol |total|, atol).
GreenEval radial_integral(const std::function<double(double)>& f, int n, int power = 0,
                          double rtol = 1e-9, double scale = 1.0, double atol = 0.0);

/// int_{R^n} Z(t, x) dx.
GreenEval z_mass(const KernelSet& ks, int n, double t);
/// int_{R^n} E(t, x) dx.
GreenEval e_mass(const KernelSet& ks, int n, double t);
/// int_{R^n} |x|^2 Z(t, x) dx by quadrature.
GreenEval msd_direct(const KernelSet& ks, int n, double t);

/// Mean square displacement m(t) = 2 n int_0^t kappa.
Estimate<double> msd(const KernelSet& ks, int n, double t);

/// Z(t, 0) for n = 1 from the transform (1/2) sqrt(K(p) / p): Bromwich inversion,
/// checked against the contour.
GreenEval z_at_origin(const KernelSet& ks, double t);

/// Least-squares slope of log Z(t, r) against r over the given radii (n = 1).
double decay_slope(const KernelSet& ks, double t, const std::vector<double>& radii);

}  // namespace ultraslow
