#include <doctest.h>

#include <cmath>
#include <numbers>

#include "robincap/errors.hpp"
#include "robincap/geometry.hpp"

using namespace robincap;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const SpaceForm kSph = SpaceForm::spherical();
const SpaceForm kFlat = SpaceForm::flat();
const SpaceForm kHyp = SpaceForm::hyperbolic();
}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("sn examples") {
    CHECK(sn(kSph, kPi / 2) == Approx(1.0).epsilon(1e-15));
    CHECK(sn(kFlat, 2.5) == 2.5);
    CHECK(sn(kHyp, std::log(3.0)) == Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("ct and derivatives agree with sn") {
    for (auto form : {kSph, kFlat, kHyp}) {
        for (double th : {0.3, 1.0, 2.2}) {
            CHECK(ct(form, th) == Approx(snPrime(form, th) / sn(form, th)).epsilon(1e-14));
            const double h = 1e-5;
            const double fd = (sn(form, th + h) - sn(form, th - h)) / (2 * h);
            CHECK(fd == Approx(snPrime(form, th)).epsilon(1e-9));
            CHECK(snSecond(form, th) == Approx(-form.curvature() * sn(form, th)));
        }
    }
}

TEST_CASE("weight examples") {
    CHECK(weight(kSph, 0.0) == 4.0);
    CHECK(weight(kFlat, 0.7) == 1.0);
    CHECK(weight(kSph, 1.0) == Approx(1.0).epsilon(1e-15));
    CHECK(weight(kHyp, 0.5) == Approx(4.0 / 0.5625));
}

TEST_CASE("weight rejects radii outside the model") {
    CHECK_THROWS_AS(weight(kHyp, 1.0), DomainError);
    CHECK_THROWS_AS(weight(kHyp, 1.5), DomainError);
    CHECK_THROWS_AS(weight(kSph, -0.1), DomainError);
    CHECK_THROWS_AS(weight(kFlat, std::nan("")), DomainError);
}

TEST_CASE("areaA examples") {
    CHECK(areaA(kSph, 1.0) == Approx(2 * kPi).epsilon(1e-15));
    CHECK(areaA(kFlat, 2.0) == Approx(4 * kPi).epsilon(1e-15));
    CHECK(areaA(kSph, std::tan(3 * kPi / 8)) == Approx((2 + std::numbers::sqrt2) * kPi).epsilon(1e-14));
    CHECK(areaA(kSph, std::tan(3 * kPi / 8)) == Approx(10.7261).epsilon(1e-5));
}

TEST_CASE("areaA is the integral of the weight") {
    for (auto form : {kSph, kFlat, kHyp}) {
        const double R = 0.8;
        const int n = 2000;
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double a = R * i / n, b = R * (i + 1) / n, m = 0.5 * (a + b);
            s += (b - a) / 6.0 * (weight(form, a) * a + 4 * weight(form, m) * m + weight(form, b) * b);
        }
        CHECK(2 * kPi * s == Approx(areaA(form, R)).epsilon(1e-12));
    }
}

TEST_CASE("capCoordinates examples") {
    const auto hemi = capCoordinates(kSph, kPi / 2);
    CHECK(hemi.t == Approx(2 * kPi).epsilon(1e-15));
    CHECK(hemi.boundaryLength == Approx(2 * kPi).epsilon(1e-15));
    CHECK(hemi.area == Approx(2 * kPi).epsilon(1e-15));

    const auto h = capCoordinates(kHyp, 1.0);
    CHECK(h.t == Approx(-4 * kPi * std::sinh(0.5) * std::sinh(0.5)).epsilon(1e-15));
    CHECK(h.area == Approx(-h.t));

    CHECK(capCoordinates(kSph, 0.70660853 * kPi).t == Approx(10.081).epsilon(5e-3 / 10.081));
    CHECK(capCoordinates(kFlat, 1.0).t == 0.0);
    CHECK(capCoordinates(kFlat, 1.0).area == Approx(kPi));
}

TEST_CASE("capCoordinates rejects inadmissible radii") {
    CHECK_THROWS_AS(capCoordinates(kSph, kPi), DomainError);
    CHECK_THROWS_AS(capCoordinates(kSph, 0.0), DomainError);
    CHECK_NOTHROW(capCoordinates(kSph, kMaxSphericalTheta));
    CHECK_NOTHROW(capCoordinates(kHyp, 20.0));
}

TEST_CASE("thetaFromT inverts capCoordinates") {
    for (double th : {0.1, 1.0, 2.0, 3.0, 3.14}) {
        CHECK(thetaFromT(kSph, capCoordinates(kSph, th).t) == Approx(th).epsilon(1e-13));
    }
    for (double th : {0.1, 1.0, 4.0}) {
        CHECK(thetaFromT(kHyp, capCoordinates(kHyp, th).t) == Approx(th).epsilon(1e-13));
    }
    CHECK_THROWS_AS(thetaFromT(kFlat, 0.0), DomainError);
    CHECK_THROWS_AS(thetaFromT(kSph, -1.0), DomainError);
    CHECK_THROWS_AS(thetaFromT(kSph, 4 * kPi), DomainError);
    CHECK_THROWS_AS(thetaFromT(kHyp, 1.0), DomainError);
    CHECK(formForT(3.0) == kSph);
    CHECK(formForT(-3.0) == kHyp);
    CHECK(formForT(0.0) == kFlat);
}

TEST_CASE("radiusFromArea examples") {
    CHECK(radiusFromArea(kSph, 2 * kPi) == Approx(1.0).epsilon(1e-14));
    CHECK(radiusFromArea(kFlat, 4 * kPi) == Approx(2.0).epsilon(1e-14));
    CHECK(radiusFromArea(kHyp, 4 * kPi * std::sinh(0.5) * std::sinh(0.5)) == Approx(std::tanh(0.5)).epsilon(1e-14));
    CHECK_THROWS_AS(radiusFromArea(kSph, 0.0), DomainError);
    CHECK_THROWS_AS(radiusFromArea(kSph, 4 * kPi), DomainError);
}

TEST_CASE("conformal radius round trip") {
    for (auto form : {kSph, kFlat, kHyp}) {
        for (double th : {0.2, 1.1, 2.7}) {
            const double r = conformalRadius(form, th);
            CHECK(thetaFromConformal(form, r) == Approx(th).epsilon(1e-14));
            CHECK(areaA(form, r) == Approx(capCoordinates(form, th).area).epsilon(1e-13));
            const double h = 1e-6;
            const double fd = (thetaFromConformal(form, r + h) - thetaFromConformal(form, r - h)) / (2 * h);
            CHECK(fd == Approx(dThetaDr(form, r)).epsilon(1e-8));
        }
    }
}

TEST_CASE("fromCurvature") {
    CHECK(SpaceForm::fromCurvature(1) == kSph);
    CHECK(SpaceForm::fromCurvature(-1) == kHyp);
    CHECK_THROWS_AS(SpaceForm::fromCurvature(2), DomainError);
    CHECK(kSph.maxTheta() == kMaxSphericalTheta);
    CHECK(std::isinf(kHyp.maxTheta()));
    CHECK(kT3 == Approx(4 * kPi * std::pow(std::sin(3 * kPi / 8), 2)).epsilon(1e-15));
}

}
