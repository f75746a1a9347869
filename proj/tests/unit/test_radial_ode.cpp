#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "robincap/eigensolver.hpp"
#include "robincap/errors.hpp"
#include "robincap/radial_ode.hpp"
#include "robincap/regions.hpp"

using namespace robincap;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const SpaceForm kSph = SpaceForm::spherical();
const SpaceForm kFlat = SpaceForm::flat();
const SpaceForm kHyp = SpaceForm::hyperbolic();

double maxAbsG(const RadialSolution& s) {
    double m = 0.0;
    for (const auto& v : s.samples()) m = std::max(m, std::abs(v.g));
    return m;
}

RadialSolution robinProfile(SpaceForm form, double theta, double alpha) {
    const double lambda = eigenvaluesForRobin(form, theta, 1, alpha, 1).front().lambda;
    return integrateRadial({form, 1, lambda, theta});
}
}  // namespace

TEST_SUITE("radial_ode") {

TEST_CASE("lambda = 2 on the sphere gives sin") {
    const auto sol = integrateRadial({kSph, 1, 2.0, kPi / 2});
    for (double th : {0.1, 0.5, 1.0, 1.5}) {
        CHECK(sol.value(th) == Approx(std::sin(th)).epsilon(1e-9));
    }
    CHECK(std::abs(sol.end().dg) <= 1e-9);
    CHECK(sol.thetaEnd() == Approx(kPi / 2));
}

TEST_CASE("lambda = 0 on the sphere gives 2 tan(theta/2)") {
    const auto sol = integrateRadial({kSph, 1, 0.0, 1.0});
    for (double th : {0.2, 0.6, 1.0}) {
        CHECK(sol.value(th) == Approx(2 * std::tan(th / 2)).epsilon(1e-9));
        CHECK(sol.derivative(th) == Approx(1.0 / std::pow(std::cos(th / 2), 2)).epsilon(1e-9));
    }
}

TEST_CASE("flat profile matches the Bessel series oracle") {
    const double k = 2.3;
    const auto sol = integrateRadial({kFlat, 1, k * k, 1.0});
    for (double th : {0.1, 0.4, 0.8, 1.0}) {
        CHECK(sol.value(th) == Approx(2 * oracle::besselJ(1, k * th) / k).epsilon(1e-9));
        CHECK(sol.derivative(th) == Approx(2 * oracle::besselJPrime(1, k * th)).epsilon(1e-9));
    }
}

TEST_CASE("m = 0 and m = 2 normalizations") {
    const auto s0 = integrateRadial({kFlat, 0, 4.0, 1.0});
    CHECK(s0.value(0.5) == Approx(oracle::besselJ(0, 1.0)).epsilon(1e-9));
    const auto s2 = integrateRadial({kFlat, 2, 4.0, 1.0});
    CHECK(s2.value(0.5) == Approx(8 * oracle::besselJ(2, 1.0) / 4.0).epsilon(1e-9));
}

TEST_CASE("Frobenius coefficient matches the solution near the origin") {
    for (auto form : {kSph, kFlat, kHyp}) {
        for (int m : {0, 1, 2}) {
            const double lambda = 3.1;
            const double c = frobeniusCoefficient(form, m, lambda);
            const auto sol = integrateRadial({form, m, lambda, 0.5});
            const double th = 0.01;
            const double measured = (sol.value(th) / std::pow(th, m) - 1.0) / (th * th);
            CHECK(measured == Approx(c).epsilon(1e-3));
        }
    }
}

TEST_CASE("fixed-step RK4 oracle") {
    for (double lambda : {-1.5, 0.7, 4.0}) {
        const auto ref = oracle::sphereRadialRK4(lambda, 2.4, 20000);
        const auto sol = integrateRadial({kSph, 1, lambda, 2.4});
        CHECK(sol.end().g == Approx(ref.g).epsilon(1e-8));
        CHECK(sol.end().dg == Approx(ref.dg).epsilon(1e-7));
    }
}

TEST_CASE("legendreRadial examples") {
    for (double th : {0.3, 1.2, 2.5}) {
        const auto p1 = legendreRadial(1.0, 1, kSph, th);
        CHECK(p1.g == Approx(std::sin(th) / 2).epsilon(1e-12));
        CHECK(p1.dg == Approx(std::cos(th) / 2).epsilon(1e-10));
        CHECK(legendreRadial(0.0, 1, kSph, th).g == Approx(std::tan(th / 2)).epsilon(1e-12));
        CHECK(legendreRadial(0.0, 1, kHyp, th).g == Approx(std::tanh(th / 2)).epsilon(1e-12));
    }
}

TEST_CASE("legendreRadial against the integer-degree recurrence") {
    for (int l = 1; l <= 5; ++l) {
        for (double th : {0.4, 1.3, 2.6}) {
            const double expected = -oracle::ferrersP1(l, std::cos(th)) / (l * (l + 1.0));
            CHECK(legendreRadial(l, 1, kSph, th).g == Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("legendreRadial is consistent with integrateRadial") {
    for (double n : {0.3, 0.85, 1.7}) {
        const auto sph = integrateRadial({kSph, 1, n * (n + 1), 2.8});
        const auto hyp = integrateRadial({kHyp, 1, -n * (n + 1), 2.8});
        for (double th : {0.5, 1.5, 2.8}) {
            CHECK(sph.value(th) == Approx(2 * legendreRadial(n, 1, kSph, th).g).epsilon(1e-9));
            CHECK(hyp.value(th) == Approx(2 * legendreRadial(n, 1, kHyp, th).g).epsilon(1e-9));
            CHECK(sph.value(th) == Approx(2 * oracle::legendreMinusOne(n, th)).epsilon(1e-9));
        }
    }
}

TEST_CASE("hypergeometric closed form") {
    for (double z : {0.0, 0.3, 0.8}) {
        const auto v = hypergeometric2F1(1.0, 1.0, 2.0, z);
        const double expected = z == 0.0 ? 1.0 : -std::log1p(-z) / z;
        CHECK(v.f == Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("logDerivativeAt examples") {
    const auto hemi = integrateRadial({kSph, 1, 2.0, kPi / 2});
    CHECK(std::abs(logDerivativeAt(hemi, kPi / 2)) <= 1e-9);
    const auto steklov = integrateRadial({kHyp, 1, 0.0, 1.7});
    CHECK(logDerivativeAt(steklov, 1.7) == Approx(1.0 / std::sinh(1.7)).epsilon(1e-9));
}

TEST_CASE("logDerivativeAt at a zero of g") {
    const double j11 = 3.8317059702075125;
    const auto sol = integrateRadial({kFlat, 1, j11 * j11, 1.0});
    CHECK_THROWS_AS(logDerivativeAt(sol, 1.0), SolverError);
    try {
        logDerivativeAt(sol, 1.0);
    } catch (const SolverError& e) {
        CHECK(e.kind() == SolverFailure::ZeroOfProfile);
    }
}

TEST_CASE("residual of the radial equation by central differences") {
    const double h = 1e-4;
    for (auto form : {kSph, kFlat, kHyp}) {
        for (int m : {0, 1, 2}) {
            const auto sol = integrateRadial({form, m, 3.7, 2.5});
            const double scale = maxAbsG(sol);
            double worst = 0.0;
            for (int j = 0; j <= 40; ++j) {
                const double th = 0.3 + 2.1 * j / 40.0;
                auto flux = [&](double x) { return sn(form, x) * sol.derivative(x); };
                const double d = (flux(th + h) - flux(th - h)) / (2 * h);
                const double s = sn(form, th);
                const double res = -d / s + m * m / (s * s) * sol.value(th) - 3.7 * sol.value(th);
                worst = std::max(worst, std::abs(res) / scale);
            }
            CHECK(worst <= 1e-6);
        }
    }
}

TEST_CASE("secondDerivative matches differences of g'") {
    const auto sol = integrateRadial({kSph, 1, 1.3, 2.0});
    const double h = 1e-5;
    for (double th : {0.4, 1.0, 1.9}) {
        const double fd = (sol.derivative(th + h) - sol.derivative(th - h)) / (2 * h);
        CHECK(sol.secondDerivative(th) == Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("continuation and scaling") {
    const RadialProblem p{kHyp, 1, 2.0, 2.0};
    const auto full = integrateRadial(p);
    const auto cont = continueRadial(p, full.at(0.7));
    CHECK(cont.end().g == Approx(full.end().g).epsilon(1e-9));
    CHECK(cont.end().dg == Approx(full.end().dg).epsilon(1e-9));
    const auto twice = full.scaled(2.0);
    CHECK(twice.value(1.3) == Approx(2 * full.value(1.3)));
    const auto grid = scanGrid(full);
    CHECK(std::is_sorted(grid.begin(), grid.end()));
    CHECK(grid.back() == Approx(2.0));
}

TEST_CASE("Prufer phase is increasing in lambda") {
    double prev = -1e300;
    for (double lambda = -5.0; lambda <= 40.0; lambda += 2.5) {
        const double phi = pruferPhase(kSph, 1, lambda, 2.0);
        CHECK(phi > prev);
        prev = phi;
    }
}

TEST_CASE("invalid problems") {
    CHECK_THROWS_AS(integrateRadial({kSph, 3, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(integrateRadial({kSph, 1, 1.0, kPi}), DomainError);
    CHECK_THROWS_AS(integrateRadial({kSph, 1, std::nan(""), 1.0}), DomainError);
}

TEST_CASE("extreme hyperbolic lambda overflows") {
    try {
        integrateRadial({kHyp, 1, -1e6, 1.0});
        FAIL("expected an overflow");
    } catch (const SolverError& e) {
        CHECK(e.kind() == SolverFailure::Overflow);
        CHECK(e.where() > 0.0);
        CHECK(e.where() < 1.0);
    }
}

TEST_CASE("shape: n2 profile is Up with a tangency at Theta2") {
    const auto& c = RegionModel::shared().constants();
    const auto profile = shapeProfile(legendreProfile(c.n2, 0.9 * kPi));
    CHECK(profile.shape == ShapeClass::Up);
    CHECK(std::abs(profile.minDerivative) <= 1e-6);
    CHECK(profile.minDerivativeAt == Approx(c.theta2).epsilon(1e-3));
}

TEST_CASE("shape: Neumann below Theta2 is Up") {
    const auto profile = shapeProfile(robinProfile(kSph, 0.6 * kPi, 0.0));
    CHECK(profile.shape == ShapeClass::Up);
    CHECK_FALSE(profile.thetaMax.has_value());
}

TEST_CASE("shape: Robin between alpha2 and 0 at 0.85 pi is UpDownUp") {
    const double theta = 0.85 * kPi;
    const double t = capCoordinates(kSph, theta).t;
    const double alpha2 = RegionModel::shared().beta2(t) / (2 * kPi * std::sin(theta));
    REQUIRE(alpha2 < 0.0);
    const auto profile = shapeProfile(robinProfile(kSph, theta, 0.5 * alpha2));
    CHECK(profile.shape == ShapeClass::UpDownUp);
    REQUIRE(profile.thetaMax.has_value());
    REQUIRE(profile.thetaMin.has_value());
    CHECK(*profile.thetaMax < *profile.thetaMin);
    CHECK(*profile.thetaMin < theta);
}

TEST_CASE("shape: positive alpha gives UpDown") {
    for (auto form : {kSph, kFlat, kHyp}) {
        const auto profile = shapeProfile(robinProfile(form, 1.5, 2.0));
        CHECK(profile.shape == ShapeClass::UpDown);
        REQUIRE(profile.thetaMax.has_value());
        const auto sol = robinProfile(form, 1.5, 2.0);
        CHECK(std::abs(sol.derivative(*profile.thetaMax)) <= 1e-6 * maxAbsG(sol));
    }
}

TEST_CASE("shape: a sign change of g is reported as Other") {
    const auto profile = shapeProfile(integrateRadial({kSph, 1, 20.0, 2.5}));
    CHECK(profile.shape == ShapeClass::Other);
    CHECK_FALSE(profile.diagnostics.empty());
}

}
