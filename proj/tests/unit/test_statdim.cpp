#include "idphase/errors.hpp"
#include "idphase/rng.hpp"
#include "idphase/statdim.hpp"
#include "idphase/theory.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

using namespace idphase;

namespace {

std::vector<Eigen::Index> first(Eigen::Index m) {
    std::vector<Eigen::Index> v(static_cast<std::size_t>(m));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Bisection on the decreasing multiplier equation, written out independently.
double mu_by_bisection(const std::vector<double>& g, std::size_t m) {
    auto lhs = [&](double mu) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) s += i < m ? std::max(g[i] - mu, 0.0) : g[i] - mu;
        return s;
    };
    double lo = -1e3, hi = 1e3;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (lhs(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("statdim") {

TEST_CASE("lagrange_mu examples") {
    const auto i1 = first(1), i2 = first(2);
    CHECK(lagrange_mu(std::vector<double>{1, -1}, i1).mu == doctest::Approx(0.0));
    CHECK(lagrange_mu(std::vector<double>{-1, 1}, i1).mu == doctest::Approx(1.0));
    CHECK(lagrange_mu(std::vector<double>{2, 0, 0}, i2).mu == doctest::Approx(1.0));
}

TEST_CASE("projection examples") {
    const auto i1 = first(1), i2 = first(2);
    const auto p0 = project_onto_D(std::vector<double>{1, -1}, i1);
    CHECK(p0.mu == doctest::Approx(0.0));
    CHECK(p0.x(0) == doctest::Approx(1.0));
    CHECK(p0.x(1) == doctest::Approx(-1.0));

    const auto p1 = project_onto_D(std::vector<double>{-1, 1}, i1);
    CHECK(p1.x.norm() == doctest::Approx(0.0));

    const auto p2 = project_onto_D(std::vector<double>{2, 0, 0}, i2);
    CHECK(p2.x(0) == doctest::Approx(1.0));
    CHECK(p2.x(1) == doctest::Approx(0.0));
    CHECK(p2.x(2) == doctest::Approx(-1.0));
    CHECK(p2.squared_norm_over_n == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("K = 0 is degenerate") {
    const auto i3 = first(3);
    const auto sol = lagrange_mu(std::vector<double>{-1, -2, -0.5}, i3);
    CHECK(sol.degenerate);
    CHECK(sol.mu == 0.0);
    const auto pos = lagrange_mu(std::vector<double>{1, 3, -2}, i3);
    CHECK(pos.degenerate);
    CHECK(pos.mu == 3.0);
    CHECK(project_onto_D(std::vector<double>{1, 3, -2}, i3).x.norm() == 0.0);
}

TEST_CASE("random projections satisfy the cone certificate") {
    Rng rng(8);
    for (int t = 0; t < 300; ++t) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.below(60));
        const Eigen::Index m = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n + 1)));
        std::vector<double> g(static_cast<std::size_t>(n));
        for (auto& v : g) v = 3.0 * rng.normal();
        const auto idx = first(m);
        const auto p = project_onto_D(g, idx);
        const Eigen::Map<const Eigen::VectorXd> gv(g.data(), n);
        const double g1 = gv.lpNorm<1>();

        CHECK(std::abs(multiplier_equation(g, idx, p.mu)) <= 1e-12 * (1.0 + g1));
        if (m < n) {
            CHECK(std::abs(p.mu - mu_by_bisection(g, static_cast<std::size_t>(m))) <= 1e-9 * (1.0 + std::abs(p.mu)));
            CHECK(multiplier_equation(g, idx, p.mu - 0.1) > 0.0);
            CHECK(multiplier_equation(g, idx, p.mu + 0.1) < 0.0);
        }
        CHECK(std::abs(p.x.sum()) <= 1e-9 * (1.0 + g1));
        for (auto i : idx) CHECK(p.x(i) >= 0.0);
        CHECK((gv - p.x).dot(p.x) <= 1e-9 * gv.squaredNorm());
        CHECK(p.x.squaredNorm() <= gv.squaredNorm() * (1.0 + 1e-12));
        CHECK(p.squared_norm_over_n == doctest::Approx(p.x.squaredNorm() / n));

        const std::vector<double> xv(p.x.data(), p.x.data() + n);
        const auto again = project_onto_D(xv, idx);
        CHECK((again.x - p.x).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + p.x.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("statdim_mc edge cases") {
    const Eigen::Index n = 50;
    const auto hyper = statdim_mc(n, n, 400, 3);
    CHECK(std::abs(hyper.mean - (n - 1.0) / n) <= 4.0 * hyper.stderr_ + 1e-12);
    const auto pointed = statdim_mc(n, 0, 20, 3);
    CHECK(pointed.mean == 0.0);
    CHECK(pointed.stderr_ == 0.0);
    CHECK_THROWS_AS(statdim_mc(n, n + 1, 10, 1), InvalidArgument);
    CHECK_THROWS_AS(statdim_mc(n, 5, 1, 1), InvalidArgument);
}

TEST_CASE("statdim_mc does not depend on the worker count") {
    const auto a = statdim_mc(300, 90, 40, 11, 1);
    const auto b = statdim_mc(300, 90, 40, 11, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("statdim_mc tracks delta_star at moderate N") {
    const auto est = statdim_mc(1000, 300, 60, 5, 2);
    CHECK(std::abs(est.mean - delta_star(0.3)) <= std::max(3.0 * est.stderr_, 0.02));
}

TEST_CASE("population objective") {
    CHECK(population_objective(0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(population_objective(0.7, 1.0) == doctest::Approx(1.49));
    const auto m1 = minimize_population_objective(1.0);
    CHECK(std::abs(m1.argmin) <= 1e-6);
    CHECK(std::abs(m1.value - 1.0) <= 1e-9);
    for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const auto m = minimize_population_objective(eps);
        CHECK(std::abs(m.value - delta_star(eps)) <= 1e-9);
        CHECK(std::abs(m.argmin - mu_star(eps)) <= 1e-5);
    }
}

TEST_CASE("statdim csv") {
    const std::vector<StatDimEstimate> rows{{100, 30, 10, 0.5, 0.01, 7}};
    std::ostringstream os;
    write_statdim_csv(os, rows);
    CHECK(os.str().rfind("N,K,epsilon,samples,mean,stderr,seed\n100,30,0.29999999999999999,10,0.5,0.01,7\n", 0) == 0);
}

}
