#include <cmath>
#include <string>

#include "robincap/errors.hpp"
#include "robincap/radial_ode.hpp"

namespace robincap {

namespace {
constexpr double kSeriesTolerance = 1e-16;
constexpr int kSeriesCap = 100000;
constexpr double kContinuationStart = 2.8;
}  // namespace

HypergeometricValue hypergeometric2F1(double a, double b, double c, double z) {
    if (!(z >= 0.0 && z < 1.0)) throw DomainError("hypergeometric argument must lie in [0, 1)");
    HypergeometricValue out;
    out.f = 1.0;
    out.df = a * b / c;
    double term = 1.0;
    double dterm = out.df;
    for (int k = 0; k < kSeriesCap; ++k) {
        const double ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        term *= ratio;
        out.f += term;
        if (k >= 1) {
            dterm *= (a + k) * (b + k) / ((c + k) * k) * z;
            out.df += dterm;
        }
        out.terms = k + 1;
        if (term == 0.0 && (k >= 1 ? dterm == 0.0 : true)) return out;
        const bool small = std::abs(term) <= kSeriesTolerance * std::abs(out.f) &&
                           std::abs(dterm) <= kSeriesTolerance * std::abs(out.df);
        if (small && std::abs(ratio) < 1.0 && k >= 1) return out;
    }
    throw SolverError(SolverFailure::SeriesNonConvergence,
                      "2F1 series did not settle within " + std::to_string(kSeriesCap) + " terms at z = " +
                          std::to_string(z),
                      z);
}

LegendreValue legendreRadial(double n, int m, SpaceForm form, double theta) {
    if (m < 0 || m > 1) throw DomainError("Legendre order must be 0 or 1");
    if (!(n >= -0.5) || !std::isfinite(n)) throw DomainError("Legendre degree must be real and >= -1/2");
    if (form.isFlat()) throw DomainError("Legendre radial parts exist only for curved space forms");
    if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("theta must be positive");
    const double mFact = 1.0;  // m! for m ∈ {0, 1}

    if (form.isSpherical()) {
        if (!(theta < std::numbers::pi)) throw DomainError("spherical theta must be below pi");
        if (theta > kContinuationStart) {
            const auto start = legendreRadial(n, m, form, kContinuationStart);
            const RadialProblem problem{form, m, n * (n + 1.0), theta};
            const auto sol = continueRadial(problem, {kContinuationStart, start.g, start.dg});
            return {sol.end().g, sol.end().dg};
        }
        const double half = 0.5 * theta;
        const double T = std::tan(half);
        const double z = std::sin(half) * std::sin(half);
        const auto F = hypergeometric2F1(n + 1.0, -n, m + 1.0, z);
        const double Tm = m == 0 ? 1.0 : T;
        LegendreValue v;
        v.g = Tm * F.f / mFact;
        const double dTm = m == 0 ? 0.0 : 0.5 * (1.0 + T * T);
        v.dg = (dTm * F.f + Tm * F.df * 0.5 * std::sin(theta)) / mFact;
        return v;
    }

    const double half = 0.5 * theta;
    const double tau = std::tanh(half);
    const double C = std::cosh(half);
    const double w = tau * tau;
    const auto F = hypergeometric2F1(-n, m - n, 1.0 + m, w);
    const double C2n = std::pow(C, 2.0 * n);
    const double taum = m == 0 ? 1.0 : tau;
    const double dtaum = m == 0 ? 0.0 : 0.5 * (1.0 - w);
    LegendreValue v;
    v.g = taum * C2n * F.f / mFact;
    v.dg = (dtaum * C2n * F.f + taum * n * C2n * tau * F.f + taum * C2n * F.df * tau * (1.0 - w)) / mFact;
    return v;
}

}  // namespace robincap
