#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robincap/geometry.hpp"

namespace robincap {

/// Separated radial equation  g″ + ct_K g′ + (λ − m²/sn_K²) g = 0  on (0, Θ].
struct RadialProblem {
    SpaceForm form = SpaceForm::spherical();
    int m = 1;
    double lambda = 0.0;
    double thetaEnd = 1.0;
};

struct RadialSample {
    double theta = 0.0;
    double g = 0.0;
    double dg = 0.0;
};

/// Launch point of the Frobenius series.
inline constexpr double kSeriesStart = 1e-6;
inline constexpr double kOdeAbsTol = 1e-11;
inline constexpr double kOdeRelTol = 1e-11;

/**
 * @brief Sampled regular solution of a RadialProblem.
 *
 * Normalized so that g(θ)/θ^m → 1 as θ → 0. Values between samples come from
 * quintic Hermite interpolation using g″ taken from the ODE itself.
 */
class RadialSolution {
public:
    RadialSolution(RadialProblem problem, std::vector<RadialSample> samples);

    const RadialProblem& problem() const { return problem_; }
    const std::vector<RadialSample>& samples() const { return samples_; }
    double thetaEnd() const { return samples_.back().theta; }

    RadialSample at(double theta) const;
    double value(double theta) const { return at(theta).g; }
    double derivative(double theta) const { return at(theta).dg; }
    /// g″ from the ODE at θ > 0.
    double secondDerivative(double theta) const;
    const RadialSample& end() const { return samples_.back(); }

    /// Copy with g and g′ multiplied by c.
    RadialSolution scaled(double c) const;

private:
    double curvatureTerm(const RadialSample& s) const;

    RadialProblem problem_;
    std::vector<RadialSample> samples_;
    std::vector<double> d2g_;
};

/// Two-term series coefficient c with g = θ^m(1 + cθ²) near the origin.
double frobeniusCoefficient(SpaceForm form, int m, double lambda);

RadialSolution integrateRadial(const RadialProblem& problem);

/// Continue a solution of the radial ODE from a known state up to thetaEnd.
RadialSolution continueRadial(const RadialProblem& problem, const RadialSample& start);

/**
 * Continuous Prüfer phase φ(Θ) of the regular solution, where g = ρ sin φ and
 * sn·g′ = ρ cos φ. Increases strictly with λ and crosses multiples of π only upward.
 */
double pruferPhase(SpaceForm form, int m, double lambda, double thetaEnd);

/// g′(θ)/g(θ); throws SolverError(ZeroOfProfile) at a zero of g.
double logDerivativeAt(const RadialSolution& solution, double theta);

enum class ShapeClass { Up, UpDown, UpDownUp, Other };

const char* toString(ShapeClass c);

struct ShapeProfile {
    ShapeClass shape = ShapeClass::Other;
    std::optional<double> thetaMax;
    std::optional<double> thetaMin;
    /// Sign tolerance actually used for g′.
    double tolerance = 0.0;
    /// Smallest g′ seen on the scan and where (interior tangencies show up here).
    double minDerivative = 0.0;
    double minDerivativeAt = 0.0;
    std::string diagnostics;
};

/// Relative sign tolerance applied to g′(Θ) alone.
inline constexpr double kEndpointSignTolerance = 1e-8;

/// Sign pattern of g′ over (0, Θ] with tolerance 1e-10·max|g′| (kEndpointSignTolerance at Θ).
ShapeProfile shapeProfile(const RadialSolution& solution);

/// Dense evaluation points used when scanning a solution for sign changes.
std::vector<double> scanGrid(const RadialSolution& solution, int perInterval = 8);

struct LegendreValue {
    double g = 0.0;
    double dg = 0.0;
};

/**
 * P_n^{−m}(cos θ) (K = +1) or the real branch of P_n^{−m}(cosh θ) (K = −1)
 * together with its θ-derivative, for m ∈ {0, 1}.
 *
 * Relative to integrateRadial the values carry the factor 1/(2^m m!).
 */
LegendreValue legendreRadial(double n, int m, SpaceForm form, double theta);

/// Gauss hypergeometric ₂F₁(a, b; c; z) and its z-derivative for 0 ≤ z < 1.
struct HypergeometricValue {
    double f = 0.0;
    double df = 0.0;
    int terms = 0;
};
HypergeometricValue hypergeometric2F1(double a, double b, double c, double z);

}  // namespace robincap
