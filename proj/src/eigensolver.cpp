#include "robincap/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "robincap/errors.hpp"
#include "robincap/radial_ode.hpp"

namespace robincap {

namespace {

constexpr double kPi = std::numbers::pi;

/// Phase of the Robin condition g′ + αg = 0 expressed in Prüfer variables, in (0, π).
double robinPhase(SpaceForm form, double thetaEnd, double alpha) {
    return std::atan2(1.0, -alpha * sn(form, thetaEnd));
}

double residualFromPhase(SpaceForm form, double thetaEnd, double alpha, double phi) {
    const double p = sn(form, thetaEnd);
    const double g = std::sin(phi);
    const double dg = std::cos(phi) / p;
    return std::abs(dg + alpha * g) / std::hypot(g, dg);
}

void requireInputs(SpaceForm form, double thetaEnd, int m, double alpha) {
    form.requireTheta(thetaEnd, "eigenvalue problem");
    if (m < 0 || m > 2) throw DomainError("angular index m must be 0, 1 or 2");
    if (!std::isfinite(alpha)) throw DomainError("Robin parameter must be finite");
}

}  // namespace

const char* toString(Mode mode) {
    switch (mode) {
        case Mode::Angular: return "Angular";
        case Mode::Radial: return "Radial";
        case Mode::Boundary: return "Boundary";
    }
    return "Boundary";
}

std::vector<EigenResult> eigenvaluesForRobin(SpaceForm form, double thetaEnd, int m, double alpha, int count,
                                             const EigenOptions& options) {
    requireInputs(form, thetaEnd, m, alpha);
    if (count < 1) throw DomainError("eigenvalue count must be at least 1");
    if (!(options.lambdaTolerance > 0.0)) throw DomainError("eigenvalue tolerance must be positive");

    const double target0 = robinPhase(form, thetaEnd, alpha);
    std::vector<EigenResult> out;
    out.reserve(count);

    double lo = -std::max(50.0, 4.0 * alpha * alpha);
    double hi = 200.0;
    for (int k = 1; k <= count; ++k) {
        const double target = target0 + (k - 1) * kPi;
        auto mismatch = [&](double lambda) { return pruferPhase(form, m, lambda, thetaEnd) - target; };

        double flo = mismatch(lo);
        int expansions = 0;
        while (flo >= 0.0) {
            if (++expansions > options.maxExpansions) {
                throw SolverError(SolverFailure::BracketExpansion,
                                  "no lower bracket down to lambda = " + std::to_string(lo), lo);
            }
            hi = lo;
            lo = lo < 0.0 ? 2.0 * lo : lo - 50.0;
            flo = mismatch(lo);
        }
        hi = std::max(hi, lo + 1.0);
        double fhi = mismatch(hi);
        expansions = 0;
        while (fhi <= 0.0) {
            if (++expansions > options.maxExpansions) {
                throw SolverError(SolverFailure::BracketExpansion,
                                  "no upper bracket in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]",
                                  hi);
            }
            lo = hi;
            flo = fhi;
            hi = hi + 2.0 * std::max(1.0, std::abs(hi));
            fhi = mismatch(hi);
        }

        boost::uintmax_t iterations = 400;
        const double tol = options.lambdaTolerance;
        auto r = boost::math::tools::toms748_solve(
            mismatch, lo, hi, flo, fhi,
            [tol](double a, double b) { return std::abs(a - b) <= std::max(tol, 1e-15 * std::abs(a)); },
            iterations);
        EigenResult e;
        e.lambda = 0.5 * (r.first + r.second);
        e.m = m;
        e.k = k;
        e.thetaEnd = thetaEnd;
        e.alpha = alpha;
        e.residual = residualFromPhase(form, thetaEnd, alpha, pruferPhase(form, m, e.lambda, thetaEnd));
        out.push_back(e);

        // The next eigenvalue lies strictly above this one.
        lo = r.second;
        hi = std::max(r.second + 1.0, 2.0 * std::abs(r.second) + 50.0);
    }
    return out;
}

int countEigenvaluesBelow(SpaceForm form, double thetaEnd, int m, double alpha, double mu) {
    requireInputs(form, thetaEnd, m, alpha);
    const double phi = pruferPhase(form, m, mu, thetaEnd);
    const double target = robinPhase(form, thetaEnd, alpha);
    if (phi <= target) return 0;
    return static_cast<int>(std::ceil((phi - target) / kPi));
}

double robinAlphaForLambda(SpaceForm form, double thetaEnd, int m, double lambda) {
    requireInputs(form, thetaEnd, m, 0.0);
    const double phi = pruferPhase(form, m, lambda, thetaEnd);
    const double s = std::sin(phi);
    if (std::abs(s) < kDirichletTolerance) {
        throw SolverError(SolverFailure::DirichletCrossing,
                          "g vanishes at the boundary for lambda = " + std::to_string(lambda), thetaEnd);
    }
    return -std::cos(phi) / (s * sn(form, thetaEnd));
}

ModeClassification secondEigenWithMode(SpaceForm form, double thetaEnd, double alpha, const EigenOptions& options) {
    ModeClassification c;
    c.lambdaAngular = eigenvaluesForRobin(form, thetaEnd, 1, alpha, 1, options).front().lambda;
    c.lambdaRadial2 = eigenvaluesForRobin(form, thetaEnd, 0, alpha, 2, options).back().lambda;
    c.lambdaM2 = eigenvaluesForRobin(form, thetaEnd, 2, alpha, 1, options).front().lambda;
    c.lambda2 = std::min(c.lambdaAngular, c.lambdaRadial2);
    c.gap = std::abs(c.lambdaAngular - c.lambdaRadial2);
    if (c.gap < kModeTieTolerance) {
        c.mode = Mode::Boundary;
    } else {
        c.mode = c.lambdaAngular < c.lambdaRadial2 ? Mode::Angular : Mode::Radial;
    }
    c.m2Dominates = c.lambdaM2 > c.lambdaAngular;
    return c;
}

ContourResult contourCurve(SpaceForm form, double lambdaTarget, std::span<const double> thetaGrid) {
    ContourResult out;
    for (double theta : thetaGrid) {
        form.requireTheta(theta, "contourCurve");
        const double phi = pruferPhase(form, 1, lambdaTarget, theta);
        const double s = std::sin(phi);
        if (std::abs(s) < kDirichletTolerance) {
            out.omitted.push_back({theta, "Dirichlet crossing"});
            continue;
        }
        if (phi > kPi) {
            out.omitted.push_back({theta, "higher branch"});
            continue;
        }
        const double alpha = -std::cos(phi) / (s * sn(form, theta));
        const auto cap = capCoordinates(form, theta);
        out.points.push_back({theta, cap.t, cap.boundaryLength * alpha});
    }
    return out;
}

}  // namespace robincap
