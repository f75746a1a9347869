#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robincap/eigensolver.hpp"
#include "robincap/radial_ode.hpp"

namespace robincap {

struct SpecialConstants {
    double n2 = 0.0;
    double theta2 = 0.0;
    double t2 = 0.0;
    double n4 = 0.0;
    double theta4 = 0.0;
    double t4 = 0.0;
    /// n₂(n₂+1)·sin²Θ₂ − 1.
    double identityResidual = 0.0;
};

/// Absolute threshold for deciding nonnegativity of the normalized FL integral.
inline constexpr double kFrontLoadedTolerance = -1e-9;

/// (1/4)∫₀^θmin (g(θmin)² − g(θ)²) sn θ dθ, equal to ∫₀^θmin g g′ sn²(θ/2) dθ.
double frontLoadedIntegral(const RadialSolution& solution, double thetaMin);

/// Regular m = 1 spherical solution for λ = n(n+1): P_n^{−1}(cos θ) up to the factor 2.
RadialSolution legendreProfile(double n, double thetaEnd = kMaxSphericalTheta);

/// Location and value of the smallest interior value of g′ (refined on g″ = 0).
struct DerivativeMinimum {
    double theta = 0.0;
    double value = 0.0;
};
DerivativeMinimum derivativeMinimum(const RadialSolution& solution, int scanPoints = 4000);

/// Runs the n₂ and n₄ bisections from scratch.
SpecialConstants solveSpecialConstants();

/// β = −2π sin Θ · g′(Θ)/g(Θ) for g = P_n^{−1}(cos θ) and Θ = thetaFromT(t).
double betaCurve(double n, double t);
std::vector<double> betaCurve(double n, std::span<const double> ts);

/// t(4π − t)/(2π − t), the boundary of the region where the angular condition is automatic.
double angularGuaranteeCurve(double t);

enum class RegionLabel { BS_I, BS_II, BS_III, BS_IV, BS_V, FL, ERadial, NA, Unknown };

const char* toString(RegionLabel label);
bool isBS(RegionLabel label);

struct RegionPoint {
    double t = 0.0;
    double beta = 0.0;
    RegionLabel label = RegionLabel::Unknown;
    std::string diagnostics;
};

struct CornerPoint {
    double t = 0.0;
    double beta = 0.0;
};

/**
 * @brief Shared state for region construction.
 *
 * Holds the special constants and the sampled profiles of g₂ and g₄ so that
 * β₂ and β₄ become interpolation lookups. Thread safe after construction.
 */
class RegionModel {
public:
    RegionModel();
    explicit RegionModel(const SpecialConstants& constants);

    /// Process-wide model built on first use.
    static const RegionModel& shared();

    const SpecialConstants& constants() const { return constants_; }

    double beta2(double t) const;
    double beta4(double t) const;
    /// Largest β with the FL condition at θmin = Θ (first quadrant), t ∈ (0, t₄].
    double flUpperBoundary(double t) const;
    /// Rightmost point of set IV, where β₂ meets angularGuaranteeCurve.
    CornerPoint ivVCorner() const;

    std::vector<RegionLabel> bsSetMembership(double t, double beta) const;
    RegionPoint classifyPoint(double t, double beta) const;

private:
    double curveFromProfile(const RadialSolution& profile, double t) const;
    std::optional<double> dropDownAnchor(double t) const;

    SpecialConstants constants_;
    std::shared_ptr<const RadialSolution> g2_;
    std::shared_ptr<const RadialSolution> g4_;
    mutable std::mutex anchorMutex_;
    mutable std::map<double, std::optional<double>> anchors_;
};

double flUpperBoundary(double t);
std::vector<RegionLabel> bsSetMembership(double t, double beta);
RegionPoint classifyPoint(double t, double beta);

}  // namespace robincap
