#include <cmath>

#include "doctest.h"
#include "ultraslow/relaxation.hpp"
#include "ultraslow/solver.hpp"

using namespace ultraslow;

namespace {
const KernelSet flat(Weight::constant(1.0));
const KernelSet linear(Weight::power_law(1.0, 1.0));

Point pt(std::initializer_list<double> v) {
    Point p(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) p[i++] = x;
    return p;
}
}  // namespace

TEST_CASE("constant initial data is preserved exactly") {
    for (int n = 1; n <= 3; ++n) {
        CauchyProblem prob(flat, n, [](const Point&) { return 1.0; });
        const auto u = solve_homogeneous(prob, 0.5, Point::Zero(n));
        CHECK(u.value == 1.0);
    }
}

TEST_CASE("cos x evolves by the relaxation function") {
    // Laplacian cos x_1 = -cos x_1, so u = u_{-1}(t) cos x_1
    const double t = 0.5;
    const double decay = u_lambda(RelaxationProblem(linear, -1.0), t).value;
    for (int n = 1; n <= 3; ++n) {
        CauchyProblem prob(linear, n, [](const Point& x) { return std::cos(x[0]); });
        Point x = Point::Zero(n);
        x[0] = 0.4;
        const auto u = solve_homogeneous(prob, t, x);
        CHECK(u.value == doctest::Approx(decay * std::cos(0.4)).epsilon(1e-7));
    }
}

TEST_CASE("homogeneous solve is linear and symmetric") {
    auto a = [](const Point& x) { return std::exp(-x.squaredNorm()); };
    auto b = [](const Point& x) { return 1.0 / (1.0 + x.squaredNorm()); };
    CauchyProblem pa(flat, 2, a), pb(flat, 2, b),
        pc(flat, 2, [&](const Point& x) { return 2.0 * a(x) - b(x); });
    const std::vector<Point> xs{pt({0.3, -0.2}), pt({-0.3, 0.2}), pt({0.2, 0.3})};
    const auto ua = solve_homogeneous(pa, 0.4, xs), ub = solve_homogeneous(pb, 0.4, xs),
               uc = solve_homogeneous(pc, 0.4, xs);
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(uc[i].value == doctest::Approx(2.0 * ua[i].value - ub[i].value).epsilon(1e-9));
    // radial data: equal at points with equal |x|
    CHECK(ua[0].value == doctest::Approx(ua[1].value).epsilon(1e-10));
    CHECK(ua[0].value == doctest::Approx(ua[2].value).epsilon(1e-10));
}

TEST_CASE("non-negative data gives non-negative solutions") {
    CauchyProblem prob(flat, 1, [](const Point& x) { return std::abs(x[0]) < 1.0 ? 1.0 : 0.0; });
    for (double x : {0.0, 0.9, 1.1, 3.0}) CHECK(solve_homogeneous(prob, 0.3, pt({x})).value >= -1e-10);
}

TEST_CASE("growth faster than the decay of Z is rejected") {
    CauchyProblem prob(flat, 1, [](const Point& x) { return std::exp(x[0]); });
    prob.growth = {1.0, 50.0};
    CHECK_THROWS_AS(solve_homogeneous(prob, 1.0, pt({0.0})), DomainError);
    CHECK_THROWS_AS(solve_homogeneous(prob, 2.0, pt({0.0})), DomainError);  // t > T
}

TEST_CASE("constant-in-time source cos y") {
    // 1 / (p (p K + 1)) = 1 / p - K / (p K + 1): u = (1 - u_{-1}(t)) cos x
    const double t = 0.5;
    CauchyProblem prob(flat, 1, nullptr);
    prob.f = [](double, const Point& y) { return std::cos(y[0]); };
    const auto u = solve_inhomogeneous(prob, t, pt({0.7}));
    const double expect = (1.0 - u_lambda(RelaxationProblem(flat, -1.0), t).value) * std::cos(0.7);
    CHECK(u.value == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("finite differences converge to the Green representation") {
    CauchyProblem prob(flat, 1, [](const Point& x) { return std::exp(-0.5 * x[0] * x[0]); }, 0.5);
    const auto exact = solve_homogeneous(prob, 0.5, pt({0.5})).value;
    double prev = INFINITY;
    for (int level = 0; level < 3; ++level) {
        const FdGrid grid{10.0, 80 * (1 << level) + 1, 0.5, 50 * (1 << (2 * level))};
        const auto field = solve_fd(prob, grid);
        const double err = std::abs(field.at(grid.nt, 0.5) - exact);
        CHECK(err < 0.75 * prev);
        prev = err;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("finite differences: constant and zero data") {
    CauchyProblem one(flat, 1, [](const Point&) { return 1.0; }, 0.5);
    const auto f = solve_fd(one, FdGrid{5.0, 65, 0.5, 40});
    CHECK((f.u.array() - 1.0).abs().maxCoeff() < 1e-13);
    CauchyProblem zero(flat, 1, [](const Point&) { return 0.0; }, 0.5);
    CHECK(solve_fd(zero, FdGrid{5.0, 65, 0.5, 40}).u.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(solve_fd(CauchyProblem(flat, 2, [](const Point&) { return 0.0; }), FdGrid{}),
                    DomainError);
}
