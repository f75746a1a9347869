#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "robincap/eigensolver.hpp"
#include "robincap/errors.hpp"
#include "robincap/radial_ode.hpp"

using namespace robincap;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const SpaceForm kSph = SpaceForm::spherical();
const SpaceForm kFlat = SpaceForm::flat();
const SpaceForm kHyp = SpaceForm::hyperbolic();

double lowest(SpaceForm form, double theta, int m, double alpha) {
    return eigenvaluesForRobin(form, theta, m, alpha, 1).front().lambda;
}
}  // namespace

TEST_SUITE("eigensolver") {

TEST_CASE("hemisphere Neumann eigenvalue is 2") {
    CHECK(std::abs(lowest(kSph, kPi / 2, 1, 0.0) - 2.0) <= 1e-8);
}

TEST_CASE("Steklov apertures give eigenvalue 0") {
    CHECK(std::abs(lowest(kSph, 0.8, 1, -1.0 / std::sin(0.8))) <= 1e-8);
    CHECK(std::abs(lowest(kHyp, 1.3, 1, -1.0 / std::sinh(1.3))) <= 1e-8);
}

TEST_CASE("Neumann unit disk against the Bessel oracle") {
    const double z = oracle::besselJ1PrimeFirstZero();
    const double lambda = lowest(kFlat, 1.0, 1, 0.0);
    CHECK(std::abs(lambda - z * z) <= 1e-6);
    CHECK(lambda == Approx(3.389957716673).epsilon(1e-11));
}

TEST_CASE("Neumann disk spectrum for m = 0, 1, 2 against Bessel derivative zeros") {
    for (int m : {0, 1, 2}) {
        const auto results = eigenvaluesForRobin(kFlat, 1.0, m, 0.0, 3);
        REQUIRE(results.size() == 3);
        for (const auto& r : results) {
            const double k = std::sqrt(std::max(r.lambda, 0.0));
            if (k > 0.0) CHECK(std::abs(oracle::besselJPrime(m, k)) <= 1e-7);
            CHECK(r.m == m);
            CHECK(r.residual <= 1e-8);
        }
        CHECK(results[0].k == 1);
        CHECK(results[2].k == 3);
        CHECK(results[0].lambda < results[1].lambda);
        CHECK(results[1].lambda < results[2].lambda);
    }
}

TEST_CASE("eigenfunction satisfies the Robin condition per the RK4 oracle") {
    const double alpha = -2.0;
    const double theta = 0.97 * kPi;
    const double lambda = lowest(kSph, theta, 1, alpha);
    CHECK(lambda == Approx(1.980324013791).epsilon(1e-10));
    const auto ref = oracle::sphereRadialRK4(lambda, theta, 40000);
    CHECK(std::abs(ref.dg + alpha * ref.g) <= 1e-6 * std::hypot(ref.g, ref.dg));
}

TEST_CASE("count below agrees with the returned spectrum") {
    const auto results = eigenvaluesForRobin(kHyp, 1.4, 1, 0.7, 4);
    for (std::size_t i = 0; i < results.size(); ++i) {
        CHECK(countEigenvaluesBelow(kHyp, 1.4, 1, 0.7, results[i].lambda - 1e-6) == static_cast<int>(i));
        CHECK(countEigenvaluesBelow(kHyp, 1.4, 1, 0.7, results[i].lambda + 1e-6) == static_cast<int>(i + 1));
    }
}

TEST_CASE("invalid requests") {
    CHECK_THROWS_AS(eigenvaluesForRobin(kSph, 1.0, 1, 0.0, 0), DomainError);
    CHECK_THROWS_AS(eigenvaluesForRobin(kSph, 4.0, 1, 0.0, 1), DomainError);
    CHECK_THROWS_AS(eigenvaluesForRobin(kSph, 1.0, 1, std::nan(""), 1), DomainError);
}

TEST_CASE("robinAlphaForLambda examples") {
    for (double th : {0.5, 1.2, 2.9}) {
        CHECK(robinAlphaForLambda(kSph, th, 1, 0.0) == Approx(-1.0 / std::sin(th)).epsilon(1e-9));
        CHECK(robinAlphaForLambda(kHyp, th, 1, 0.0) == Approx(-1.0 / std::sinh(th)).epsilon(1e-9));
    }
    CHECK(std::abs(robinAlphaForLambda(kSph, kPi / 2, 1, 2.0)) <= 1e-9);
}

TEST_CASE("robinAlphaForLambda inverts the eigenvalue problem") {
    const double alpha = robinAlphaForLambda(kSph, 2.2, 1, 1.4);
    const auto results = eigenvaluesForRobin(kSph, 2.2, 1, alpha, 3);
    bool found = false;
    for (const auto& r : results) found = found || std::abs(r.lambda - 1.4) <= 1e-8;
    CHECK(found);
}

TEST_CASE("Dirichlet crossing is signalled") {
    const double j11 = 3.8317059702075125;
    try {
        robinAlphaForLambda(kFlat, 1.0, 1, j11 * j11);
        FAIL("expected a Dirichlet crossing");
    } catch (const SolverError& e) {
        CHECK(e.kind() == SolverFailure::DirichletCrossing);
    }
}

TEST_CASE("mode classification examples") {
    const auto a = secondEigenWithMode(kSph, 0.6 * kPi, -0.5);
    CHECK(a.mode == Mode::Angular);
    CHECK(a.lambda2 == a.lambdaAngular);
    CHECK(a.m2Dominates);

    const auto b = secondEigenWithMode(kHyp, 1.2, 3.0);
    CHECK(b.mode == Mode::Angular);
    CHECK(b.m2Dominates);

    const auto c = secondEigenWithMode(kSph, 0.97 * kPi, -2.0);
    CHECK(c.mode == Mode::Radial);
    CHECK(c.lambda2 == c.lambdaRadial2);
    CHECK(c.lambdaAngular == Approx(1.980324013791).epsilon(1e-10));
    CHECK(c.lambdaRadial2 == Approx(1.60756098245).epsilon(1e-9));
    CHECK(c.gap == Approx(c.lambdaAngular - c.lambdaRadial2));
    CHECK(c.lambdaM2 > c.lambdaAngular);
}

TEST_CASE("contour at lambda = 0 is the Steklov line") {
    const std::vector<double> grid{0.3, 1.0, 2.0, 3.0};
    for (auto form : {kSph, kHyp}) {
        const auto c = contourCurve(form, 0.0, grid);
        REQUIRE(c.points.size() == grid.size());
        for (const auto& p : c.points) CHECK(std::abs(p.beta + 2 * kPi) <= 1e-8);
    }
}

TEST_CASE("contour at lambda = 2 crosses (2 pi, 0)") {
    const std::vector<double> grid{kPi / 2};
    const auto c = contourCurve(kSph, 2.0, grid);
    REQUIRE(c.points.size() == 1);
    CHECK(c.points[0].t == Approx(2 * kPi));
    CHECK(std::abs(c.points[0].beta) <= 1e-8);
}

TEST_CASE("contour omits Dirichlet crossings and higher branches") {
    const double j11 = 3.8317059702075125;
    const std::vector<double> grid{1.0};
    const auto flat = contourCurve(kFlat, j11 * j11, grid);
    CHECK(flat.points.empty());
    REQUIRE(flat.omitted.size() == 1);
    CHECK(flat.omitted[0].reason == "Dirichlet crossing");

    const std::vector<double> sphGrid{2.5, 1.0};
    const auto high = contourCurve(kSph, 20.0, sphGrid);
    CHECK(high.points.empty());
    CHECK(high.omitted.size() == 2);
}

}
