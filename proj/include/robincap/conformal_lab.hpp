#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "robincap/geometry.hpp"
#include "robincap/radial_ode.hpp"

namespace robincap {

using Complex = std::complex<double>;

enum class MapKind { Identity, Mobius, SphereRotation, Quadratic };

/**
 * @brief Catalog conformal map F of a disk into the plane.
 *
 * Mobius: (z + a)/(1 + a z), a self-map of the unit disk.
 * SphereRotation: (z + a)/(1 − a z), a rotation of the Riemann sphere.
 * Quadratic: z + ε z².
 */
struct ConformalMap {
    MapKind kind = MapKind::Identity;
    double param = 0.0;

    Complex operator()(Complex z) const;
    Complex derivative(Complex z) const;
    std::string id() const;

    /// Parses "identity", "mobius:a=0.3", "rotation:a=0.4", "quadratic:eps=0.1".
    static ConformalMap parse(const std::string& text);
};

/// Planar weight ω(p) = w_K(|p|)·(1 + δ·bump(|p|)) with a C² bump supported in (inner, outer).
struct PlanarWeight {
    int K = 1;
    double delta = 0.0;
    double bumpInner = 0.0;
    double bumpOuter = 0.0;

    double operator()(Complex p) const;
    /// Gaussian curvature −Δ log ω / (2ω) at radius s, from closed-form radial derivatives.
    double curvature(double s) const;
    std::string id() const;

    /// Parses "sphere", "flat", "hyperbolic", optionally with ":delta=0.05".
    static PlanarWeight parse(const std::string& text);
};

struct WeightedDomain {
    ConformalMap map;
    PlanarWeight weight;
    double rho = 1.0;
    /// Curvature K of the comparison space form; must bound the weight's curvature from above.
    int compareK = 1;

    std::string id() const;
    /// Throws DomainError when univalence, positivity or the curvature bound fails.
    void validate() const;

    /// Builds a domain from catalog strings; the bump support is placed at (0.2ρ, 0.8ρ).
    static WeightedDomain make(const std::string& map, const std::string& weight, double rho,
                               std::optional<int> compareK = std::nullopt);
};

/// Domain catalog used by the property suites and `lab`.
std::vector<WeightedDomain> domainCatalog();

/// F composed with z ↦ (ρ/R) z so that B(R) = A(R) = |Ω_ω|.
struct NormalizedDomain {
    WeightedDomain domain;
    double area = 0.0;
    double R = 0.0;
    double scale = 1.0;

    SpaceForm form() const { return SpaceForm::fromCurvature(domain.compareK); }
    Complex map(Complex z) const { return domain.map(scale * z); }
    Complex derivative(Complex z) const { return scale * domain.map.derivative(scale * z); }
    /// (ω∘G)|G′|² for the composed map G.
    double density(Complex z) const;
    /// ∫₀^{2π} density(r e^{iφ}) dφ.
    double circleMass(double r) const;
};

NormalizedDomain normalizeDomain(const WeightedDomain& domain);

double areaB(const NormalizedDomain& domain, double r);

struct AreaProfile {
    std::vector<double> r;
    std::vector<double> A;
    std::vector<double> B;
    std::vector<double> ratio;
    double R = 0.0;
};

struct AreaVerdicts {
    double tolerance = 1e-8;
    double minDifference = 0.0;       ///< min over the grid of A − B
    double maxAbsDifference = 0.0;    ///< max over the grid of |A − B|
    bool differenceHolds = false;     ///< A − B ≥ −tol everywhere
    std::optional<bool> ratioMonotone;  ///< emitted only for K ∈ {0, +1}
    double maxRatioDrop = 0.0;
    bool equality = false;            ///< |A − B| ≤ tol everywhere
    double endpointMismatch = 0.0;    ///< |B(R) − A(R)|/A(R)
};

struct AreaLemmaReport {
    AreaProfile profile;
    AreaVerdicts verdicts;
};

AreaLemmaReport checkAreaLemmas(const NormalizedDomain& domain, int gridPoints = 64, double tolerance = 1e-8);

/// Radial trial profile h on [0, R] with its derivative.
class TransplantProfile {
public:
    using Eval = std::function<std::pair<double, double>(double)>;

    TransplantProfile(Eval eval, std::string name) : eval_(std::move(eval)), name_(std::move(name)) {}

    double value(double r) const { return eval_(r).first; }
    double derivative(double r) const { return eval_(r).second; }
    std::pair<double, double> operator()(double r) const { return eval_(r); }
    const std::string& name() const { return name_; }

private:
    Eval eval_;
    std::string name_;
};

/// h(r) = g(θ(r)) with θ(r) the geodesic radius of conformal radius r in the solution's space form.
TransplantProfile transplantProfile(const RadialSolution& solution);
/// h(r) = c·r^p.
TransplantProfile powerProfile(double c, double p);

struct TransplantQuantities {
    double numerator = 0.0;
    double denomPulled = 0.0;
    double denomDisk = 0.0;
    double bound = 0.0;
    double diskValue = 0.0;
};

TransplantQuantities transplantQuantities(const NormalizedDomain& domain, const TransplantProfile& h, double beta);

/// denomPulled − denomDisk.
double denominatorComparison(const NormalizedDomain& domain, const TransplantProfile& h);
/// ∫₀^R 2 h h′ (A − B) dr, the integrated-by-parts form of denominatorComparison.
double denominatorComparisonByParts(const NormalizedDomain& domain, const TransplantProfile& h);

/// Dirichlet energy of u = h(r) cos φ on the disk D(R).
double diskDirichletEnergy(const TransplantProfile& h, double R);
/// Dirichlet energy of u∘G⁻¹ on the image, with gradients taken by finite differences
/// in the image plane and G⁻¹ evaluated by Newton iteration.
double imageDirichletEnergy(const NormalizedDomain& domain, const TransplantProfile& h);

/// Curvature of the pulled-back density at z from a five-point Laplacian of its logarithm.
double pullbackCurvature(const NormalizedDomain& domain, Complex z, double step = 1e-3);

struct GSample {
    double psi = 0.0;
    double G = 0.0;
};

/// G(ψ) = ∫₀^ψ 2 g g′ A dθ with A(θ) = 4π sn²(θ/2), sampled on the solution grid.
std::vector<GSample> gFunction(const RadialSolution& solution);

}  // namespace robincap
