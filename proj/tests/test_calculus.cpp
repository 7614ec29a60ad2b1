#include <cmath>

#include "doctest.h"
#include "ultraslow/calculus.hpp"
#include "ultraslow/relaxation.hpp"

using namespace ultraslow;

namespace {
const KernelSet flat(Weight::constant(1.0));
const KernelSet linear(Weight::power_law(1.0, 1.0));
}  // namespace

TEST_CASE("grid validation and CSV round trip") {
    Eigen::VectorXd n(3), v(3);
    n << 0.0, 0.5, 1.5;
    v << 1.0, 2.0, -3.25;
    const Grid1D g(n, v);
    CHECK_FALSE(g.is_uniform());
    const auto back = grid_from_csv(to_csv(g));
    CHECK(back.nodes == g.nodes);
    CHECK(back.values == g.values);
    Eigen::VectorXd bad(3);
    bad << 0.1, 0.5, 1.5;
    CHECK_THROWS_AS(Grid1D(bad, v), DomainError);
    bad << 0.0, 0.5, 0.5;
    CHECK_THROWS_AS(Grid1D(bad, v), DomainError);
    CHECK(Grid1D::uniform(2.0, 8, [](double t) { return t; }).is_uniform());
}

TEST_CASE("derivative of a constant vanishes") {
    const auto g = Grid1D::uniform(2.0, 64, [](double) { return 3.0; });
    const auto d = d_mu_general(flat, g);
    const auto c = d_mu_caputo(flat, g);
    for (Eigen::Index i = 1; i < g.size(); ++i) {
        CHECK(std::abs(d[i]) < 1e-12);
        CHECK(c[i] == 0.0);
    }
}

TEST_CASE("D I f = f") {
    for (const KernelSet* ks : {&flat, &linear}) {
        const auto f = Grid1D::uniform(2.0, 256, [](double t) { return std::sin(t) + 0.5; });
        const auto d = d_mu_general(*ks, i_mu(*ks, f));
        for (Eigen::Index i = 1; i < f.size(); ++i)
            CHECK(d[i] == doctest::Approx(f.values[i]).epsilon(1e-3));
    }
}

TEST_CASE("I is linear and positive") {
    const auto f = Grid1D::uniform(1.0, 64, [](double t) { return t * t; });
    const auto g = Grid1D::uniform(1.0, 64, [](double t) { return std::exp(-t); });
    const auto h = Grid1D::uniform(1.0, 64, [](double t) { return 2.0 * t * t - 3.0 * std::exp(-t); });
    const auto If = i_mu(linear, f), Ig = i_mu(linear, g), Ih = i_mu(linear, h);
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        CHECK(Ih.values[i] == doctest::Approx(2.0 * If.values[i] - 3.0 * Ig.values[i]).epsilon(1e-12));
        CHECK(Ig.values[i] >= 0.0);
    }
    // I 1 = int_0^t kappa
    const auto one = i_mu(flat, Grid1D::uniform(1.0, 16, [](double) { return 1.0; }));
    CHECK(one.values[16] == doctest::Approx(flat.kappa_integral(1.0).value).epsilon(1e-12));
}

TEST_CASE("Marchaud and Caputo forms agree when u(0) = 0") {
    const auto g = Grid1D::uniform(1.0, 128, [](double t) { return t * std::exp(-t); });
    const auto m = d_mu_marchaud(flat, g);
    const auto c = d_mu_caputo(flat, g, StartPanel::Linear);
    for (Eigen::Index i = 8; i < g.size(); i += 8)
        CHECK(m[i] == doctest::Approx(c[i]).epsilon(1e-9));
    const auto shifted = Grid1D::uniform(1.0, 16, [](double) { return 1.0; });
    CHECK_THROWS_AS(d_mu_marchaud(flat, shifted, 4), DomainError);
}

TEST_CASE("relaxation function solves D u = lambda u") {
    const RelaxationProblem p(linear, -1.0);
    const auto g = Grid1D::uniform(2.0, 512, [&](double t) { return u_lambda(p, t).value; });
    const auto d = d_mu_general(linear, g);
    for (Eigen::Index i = 32; i < g.size(); i += 32)
        CHECK(d[i] == doctest::Approx(-g.values[i]).epsilon(1e-4));
}
