#pragma once

#include <numbers>

namespace robincap {

/// Largest spherical geodesic radius accepted anywhere in the library.
inline constexpr double kMaxSphericalTheta = std::numbers::pi * (1.0 - 1e-4);

/// t₃ = 4π sin²(3π/8) = (2+√2)π.
inline constexpr double kT3 = (2.0 + std::numbers::sqrt2) * std::numbers::pi;

/**
 * @brief One of the three simply connected space forms, labelled by curvature.
 */
class SpaceForm {
public:
    static constexpr SpaceForm hyperbolic() { return SpaceForm(-1); }
    static constexpr SpaceForm flat() { return SpaceForm(0); }
    static constexpr SpaceForm spherical() { return SpaceForm(1); }
    /// Throws DomainError unless k ∈ {−1, 0, +1}.
    static SpaceForm fromCurvature(int k);

    constexpr int curvature() const { return k_; }
    constexpr bool isSpherical() const { return k_ > 0; }
    constexpr bool isFlat() const { return k_ == 0; }
    constexpr bool isHyperbolic() const { return k_ < 0; }

    /// True when θ is an admissible geodesic radius (0 < θ, and θ ≤ kMaxSphericalTheta for K = +1).
    bool validTheta(double theta) const;
    /// Throws DomainError if validTheta(theta) is false.
    void requireTheta(double theta, const char* what) const;
    /// Upper end of the admissible geodesic radii (infinity off the sphere).
    double maxTheta() const;

    friend constexpr bool operator==(SpaceForm a, SpaceForm b) { return a.k_ == b.k_; }

    const char* name() const;

private:
    constexpr explicit SpaceForm(int k) : k_(k) {}
    int k_;
};

double sn(SpaceForm form, double theta);
/// sn′/sn.
double ct(SpaceForm form, double theta);
double snPrime(SpaceForm form, double theta);
double snSecond(SpaceForm form, double theta);

/// Conformal weight w_K(r) of the planar model.
double weight(SpaceForm form, double r);
/// Weighted area of the Euclidean disk of radius r.
double areaA(SpaceForm form, double r);

/// Conformal radius r of the point at geodesic distance θ from the centre.
double conformalRadius(SpaceForm form, double theta);
/// Inverse of conformalRadius.
double thetaFromConformal(SpaceForm form, double r);
/// dθ/dr along a radius.
double dThetaDr(SpaceForm form, double r);

struct CapCoordinates {
    double theta = 0.0;
    double t = 0.0;
    double area = 0.0;
    double boundaryLength = 0.0;
};

CapCoordinates capCoordinates(SpaceForm form, double theta);
/// Inverse of capCoordinates(form, θ).t; K = 0 carries no radius information and throws.
double thetaFromT(SpaceForm form, double t);
/// Space form selected by the sign of t.
SpaceForm formForT(double t);
/// Conformal radius R with areaA(form, R) = targetArea.
double radiusFromArea(SpaceForm form, double targetArea);

}  // namespace robincap
