#include "robincap/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "robincap/errors.hpp"

namespace robincap {

namespace {
constexpr double kPi = std::numbers::pi;

void requireRadius(SpaceForm form, double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw DomainError("conformal radius must be finite and nonnegative, got " + std::to_string(r));
    }
    if (form.isHyperbolic() && r >= 1.0) {
        throw DomainError("hyperbolic conformal radius must be < 1, got " + std::to_string(r));
    }
}
}  // namespace

SpaceForm SpaceForm::fromCurvature(int k) {
    if (k < -1 || k > 1) throw DomainError("curvature label must be -1, 0 or +1, got " + std::to_string(k));
    return SpaceForm(k);
}

bool SpaceForm::validTheta(double theta) const {
    if (!std::isfinite(theta) || !(theta > 0.0)) return false;
    return !isSpherical() || theta <= kMaxSphericalTheta;
}

void SpaceForm::requireTheta(double theta, const char* what) const {
    if (!validTheta(theta)) {
        throw DomainError(std::string(what) + ": geodesic radius " + std::to_string(theta) +
                          " is outside the admissible range for " + name());
    }
}

double SpaceForm::maxTheta() const {
    return isSpherical() ? kMaxSphericalTheta : std::numeric_limits<double>::infinity();
}

const char* SpaceForm::name() const {
    switch (k_) {
        case 1: return "sphere";
        case 0: return "plane";
        default: return "hyperbolic plane";
    }
}

double sn(SpaceForm form, double theta) {
    switch (form.curvature()) {
        case 1: return std::sin(theta);
        case 0: return theta;
        default: return std::sinh(theta);
    }
}

double snPrime(SpaceForm form, double theta) {
    switch (form.curvature()) {
        case 1: return std::cos(theta);
        case 0: return 1.0;
        default: return std::cosh(theta);
    }
}

double snSecond(SpaceForm form, double theta) {
    return -form.curvature() * sn(form, theta);
}

double ct(SpaceForm form, double theta) {
    switch (form.curvature()) {
        case 1: return 1.0 / std::tan(theta);
        case 0: return 1.0 / theta;
        default: return 1.0 / std::tanh(theta);
    }
}

double weight(SpaceForm form, double r) {
    requireRadius(form, r);
    const double r2 = r * r;
    switch (form.curvature()) {
        case 1: return 4.0 / ((1.0 + r2) * (1.0 + r2));
        case 0: return 1.0;
        default: return 4.0 / ((1.0 - r2) * (1.0 - r2));
    }
}

double areaA(SpaceForm form, double r) {
    requireRadius(form, r);
    const double r2 = r * r;
    switch (form.curvature()) {
        case 1: return 4.0 * kPi * r2 / (1.0 + r2);
        case 0: return kPi * r2;
        default: return 4.0 * kPi * r2 / (1.0 - r2);
    }
}

double conformalRadius(SpaceForm form, double theta) {
    switch (form.curvature()) {
        case 1: return std::tan(0.5 * theta);
        case 0: return theta;
        default: return std::tanh(0.5 * theta);
    }
}

double thetaFromConformal(SpaceForm form, double r) {
    requireRadius(form, r);
    switch (form.curvature()) {
        case 1: return 2.0 * std::atan(r);
        case 0: return r;
        default: return 2.0 * std::atanh(r);
    }
}

double dThetaDr(SpaceForm form, double r) {
    requireRadius(form, r);
    switch (form.curvature()) {
        case 1: return 2.0 / (1.0 + r * r);
        case 0: return 1.0;
        default: return 2.0 / (1.0 - r * r);
    }
}

CapCoordinates capCoordinates(SpaceForm form, double theta) {
    form.requireTheta(theta, "capCoordinates");
    CapCoordinates c;
    c.theta = theta;
    const double half = sn(form, 0.5 * theta);
    c.area = 4.0 * kPi * half * half;
    c.t = form.curvature() * c.area;
    c.boundaryLength = 2.0 * kPi * sn(form, theta);
    return c;
}

double thetaFromT(SpaceForm form, double t) {
    switch (form.curvature()) {
        case 1: {
            if (!(t > 0.0 && t < 4.0 * kPi)) {
                throw DomainError("spherical t must lie in (0, 4π), got " + std::to_string(t));
            }
            const double s = t / (4.0 * kPi);
            const double c = (4.0 * kPi - t) / (4.0 * kPi);
            const double theta = 2.0 * std::atan2(std::sqrt(s), std::sqrt(c));
            if (theta > kMaxSphericalTheta) {
                throw DomainError("t = " + std::to_string(t) + " exceeds the spherical aperture cap");
            }
            return theta;
        }
        case 0:
            throw DomainError("the Euclidean coordinate t = 0 does not determine a radius");
        default:
            if (!(t < 0.0) || !std::isfinite(t)) {
                throw DomainError("hyperbolic t must be negative, got " + std::to_string(t));
            }
            return 2.0 * std::asinh(std::sqrt(-t / (4.0 * kPi)));
    }
}

SpaceForm formForT(double t) {
    if (t > 0.0) return SpaceForm::spherical();
    if (t < 0.0) return SpaceForm::hyperbolic();
    return SpaceForm::flat();
}

double radiusFromArea(SpaceForm form, double targetArea) {
    if (!(targetArea > 0.0) || !std::isfinite(targetArea)) {
        throw DomainError("target area must be positive and finite");
    }
    switch (form.curvature()) {
        case 1:
            if (targetArea >= 4.0 * kPi) {
                throw DomainError("spherical area " + std::to_string(targetArea) + " is not below 4π");
            }
            return std::sqrt(targetArea / (4.0 * kPi - targetArea));
        case 0:
            return std::sqrt(targetArea / kPi);
        default:
            return std::sqrt(targetArea / (4.0 * kPi + targetArea));
    }
}

}  // namespace robincap
