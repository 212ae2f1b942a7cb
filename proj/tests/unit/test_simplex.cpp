#include "idphase/errors.hpp"
#include "idphase/simplex.hpp"

#include <doctest.h>

using namespace idphase;

namespace {

// max x1 s.t. x1 + s = 1
StandardFormLp unit_box() {
    StandardFormLp lp;
    lp.a = Eigen::MatrixXd(1, 2);
    lp.a << 1, 1;
    lp.b = Eigen::VectorXd::Ones(1);
    lp.c = Eigen::VectorXd(2);
    lp.c << 1, 0;
    lp.start_basis = {1};
    return lp;
}

// The certifier LP for A = [1 1 -1], I = {0, 1}, free = {2}:
// columns x0, x1, p, q, s; rows [1 1 -1 1 0 | 0], [1 1 0 0 1 | 1].
StandardFormLp cone_lp() {
    StandardFormLp lp;
    lp.a = Eigen::MatrixXd(2, 5);
    lp.a << 1, 1, -1, 1, 0,
            1, 1, 0, 0, 1;
    lp.b = Eigen::Vector2d(0, 1);
    lp.c = Eigen::VectorXd::Zero(5);
    lp.c.head(2).setOnes();
    lp.start_basis = {-1, 4};
    return lp;
}

}  // namespace

TEST_SUITE("simplex") {

TEST_CASE("maximize x subject to x <= 1") {
    for (auto pricing : {Pricing::Dantzig, Pricing::Bland}) {
        SimplexOptions opts;
        opts.pricing = pricing;
        const auto r = simplex_solve(unit_box(), opts);
        CHECK(r.optimum == doctest::Approx(1.0));
        CHECK(r.x(0) == doctest::Approx(1.0));
        CHECK(r.restored);
    }
}

TEST_CASE("zero objective stays at the origin") {
    auto lp = unit_box();
    lp.c.setZero();
    const auto r = simplex_solve(lp);
    CHECK(r.optimum == 0.0);
    CHECK(r.x(0) == 0.0);
    CHECK(r.iterations == 0);
}

TEST_CASE("certifier LP of a feasible cone reaches 1") {
    for (double perturbation : {1e-7, 0.0}) {
        SimplexOptions opts;
        opts.perturbation = perturbation;
        const auto r = simplex_solve(cone_lp(), opts);
        CHECK(r.optimum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.restored);
        CHECK(r.x(0) + r.x(1) == doctest::Approx(1.0));
        CHECK(r.x(3) - r.x(2) == doctest::Approx(-1.0));
        CHECK((r.x.array() >= 0.0).all());
    }
}

TEST_CASE("bland pricing from the first pivot agrees with dantzig") {
    SimplexOptions bland;
    bland.pricing = Pricing::Bland;
    bland.perturbation = 0.0;
    CHECK(simplex_solve(cone_lp(), bland).optimum == doctest::Approx(simplex_solve(cone_lp()).optimum));
}

TEST_CASE("unbounded LP and iteration cap throw") {
    StandardFormLp lp;
    lp.a = Eigen::MatrixXd(1, 2);
    lp.a << 1, -1;
    lp.b = Eigen::VectorXd::Zero(1);
    lp.c = Eigen::Vector2d(1, 0);
    lp.start_basis = {-1};
    CHECK_THROWS_AS(simplex_solve(lp), NumericalFailure);

    SimplexOptions capped;
    capped.max_iterations = 1;
    auto two = unit_box();
    two.a = Eigen::MatrixXd(2, 4);
    two.a << 1, 0, 1, 0,
             0, 1, 0, 1;
    two.b = Eigen::Vector2d(1, 1);
    two.c = Eigen::Vector4d(1, 1, 0, 0);
    two.start_basis = {2, 3};
    CHECK_THROWS_AS(simplex_solve(two, capped), NumericalFailure);
    CHECK(simplex_solve(two).optimum == doctest::Approx(2.0));
}

TEST_CASE("dependent zero-rhs rows are reported") {
    StandardFormLp lp;
    lp.a = Eigen::MatrixXd(3, 3);
    lp.a << 1, -1, 0,
            2, -2, 0,
            1, 1, 1;
    lp.b = Eigen::Vector3d(0, 0, 1);
    lp.c = Eigen::Vector3d(1, 0, 0);
    lp.start_basis = {-1, -1, 2};
    CHECK_THROWS_AS(simplex_solve(lp), NumericalFailure);
}

TEST_CASE("malformed start basis is rejected") {
    auto lp = unit_box();
    lp.start_basis = {0};
    lp.a << 2, 1;
    CHECK_THROWS_AS(simplex_solve(lp), InvalidArgument);
    lp = unit_box();
    lp.b(0) = -1.0;
    CHECK_THROWS_AS(simplex_solve(lp), InvalidArgument);
}

}
