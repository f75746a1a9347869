#pragma once

#include <span>
#include <string>
#include <vector>

#include "robincap/geometry.hpp"

namespace robincap {

struct EigenResult {
    double lambda = 0.0;
    int m = 1;
    int k = 1;
    double thetaEnd = 0.0;
    double alpha = 0.0;
    /// |g′(Θ) + α g(Θ)| / sqrt(g(Θ)² + g′(Θ)²).
    double residual = 0.0;
};

struct EigenOptions {
    /// Absolute bracket width in λ at which root refinement stops.
    double lambdaTolerance = 1e-10;
    int maxExpansions = 60;
};

/// Lowest `count` Robin eigenvalues for angular index m, ordered increasingly.
std::vector<EigenResult> eigenvaluesForRobin(SpaceForm form, double thetaEnd, int m, double alpha, int count,
                                             const EigenOptions& options = {});

/// Number of Robin eigenvalues with index m strictly below mu (Prüfer phase count).
int countEigenvaluesBelow(SpaceForm form, double thetaEnd, int m, double alpha, double mu);

/// |sin φ(Θ)| below which g(Θ) counts as zero (the phase itself is accurate to about 1e-11).
inline constexpr double kDirichletTolerance = 1e-9;

/// α = −g′(Θ)/g(Θ) for the regular solution at λ; throws SolverError(DirichletCrossing) when g(Θ) = 0.
double robinAlphaForLambda(SpaceForm form, double thetaEnd, int m, double lambda);

enum class Mode { Angular, Radial, Boundary };

const char* toString(Mode mode);

struct ModeClassification {
    double lambda2 = 0.0;
    Mode mode = Mode::Boundary;
    /// λ_other − λ₂ (nonnegative).
    double gap = 0.0;
    double lambdaAngular = 0.0;
    double lambdaRadial2 = 0.0;
    double lambdaM2 = 0.0;
    /// Lowest m = 2 eigenvalue exceeds λ₂.
    bool m2Dominates = false;
};

/// Tie tolerance between the angular and second radial eigenvalue.
inline constexpr double kModeTieTolerance = 1e-9;

ModeClassification secondEigenWithMode(SpaceForm form, double thetaEnd, double alpha,
                                       const EigenOptions& options = {});

struct ContourPoint {
    double theta = 0.0;
    double t = 0.0;
    double beta = 0.0;
};

struct OmittedContourPoint {
    double theta = 0.0;
    std::string reason;
};

struct ContourResult {
    std::vector<ContourPoint> points;
    std::vector<OmittedContourPoint> omitted;
};

/**
 * Level curve of the lowest angular eigenvalue: each Θ maps to
 * (t(Θ), 2π sn Θ · α) with α chosen so that λ is that eigenvalue.
 * Apertures where g(Θ) = 0, or where λ belongs to a higher branch, are omitted.
 */
ContourResult contourCurve(SpaceForm form, double lambdaTarget, std::span<const double> thetaGrid);

}  // namespace robincap
