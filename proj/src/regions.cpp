#include "robincap/regions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "robincap/errors.hpp"

namespace robincap {

namespace {

constexpr double kPi = std::numbers::pi;
const SpaceForm kSphere = SpaceForm::spherical();

double toms748(const std::function<double(double)>& f, double a, double b, double tol) {
    boost::uintmax_t iters = 300;
    const double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw SolverError(SolverFailure::BracketExpansion,
                          "no sign change on [" + std::to_string(a) + ", " + std::to_string(b) + "]", a);
    }
    auto r = boost::math::tools::toms748_solve(
        f, a, b, fa, fb, [tol](double x, double y) { return std::abs(x - y) <= tol; }, iters);
    return 0.5 * (r.first + r.second);
}

/// Largest x in [lo, hi] with pred(x) true, assuming pred(lo) and !pred(hi).
template <class Pred>
double bisectPredicate(Pred&& pred, double lo, double hi, double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

/// Strict sign changes of g′ on a uniform scan, refined to 1e-12.
std::vector<double> derivativeZeros(const RadialSolution& sol, int scanPoints) {
    const double a = sol.samples()[1].theta;
    const double b = sol.thetaEnd();
    std::vector<double> zeros;
    double prevT = a;
    double prev = sol.derivative(a);
    for (int i = 1; i <= scanPoints; ++i) {
        const double t = a + (b - a) * i / scanPoints;
        const double v = sol.derivative(t);
        if ((prev > 0.0 && v < 0.0) || (prev < 0.0 && v > 0.0)) {
            zeros.push_back(toms748([&](double x) { return sol.derivative(x); }, prevT, t, 1e-12));
        }
        prevT = t;
        prev = v;
    }
    return zeros;
}

double normalizedFrontLoaded(const RadialSolution& sol, double thetaMin) {
    const double gmin = sol.value(thetaMin);
    return frontLoadedIntegral(sol, thetaMin) / (gmin * gmin);
}

/// FL profile for the §3 condition with θmin = second g′ zero of P_n^{−1}.
struct NeumannProfile {
    double thetaMin = 0.0;
    double frontLoaded = 0.0;
};

NeumannProfile neumannProfile(double n) {
    const auto sol = legendreProfile(n);
    const auto zeros = derivativeZeros(sol, 4000);
    if (zeros.size() < 2) {
        throw SolverError(SolverFailure::BracketExpansion,
                          "P_n^{-1} has no second critical point for n = " + std::to_string(n), n);
    }
    return {zeros[1], normalizedFrontLoaded(sol, zeros[1])};
}

}  // namespace

const char* toString(RegionLabel label) {
    switch (label) {
        case RegionLabel::BS_I: return "BS-I";
        case RegionLabel::BS_II: return "BS-II";
        case RegionLabel::BS_III: return "BS-III";
        case RegionLabel::BS_IV: return "BS-IV";
        case RegionLabel::BS_V: return "BS-V";
        case RegionLabel::FL: return "FL";
        case RegionLabel::ERadial: return "E-radial";
        case RegionLabel::NA: return "NA";
        case RegionLabel::Unknown: return "Unknown";
    }
    return "Unknown";
}

bool isBS(RegionLabel label) {
    return label == RegionLabel::BS_I || label == RegionLabel::BS_II || label == RegionLabel::BS_III ||
           label == RegionLabel::BS_IV || label == RegionLabel::BS_V;
}

double frontLoadedIntegral(const RadialSolution& solution, double thetaMin) {
    if (!(thetaMin > 0.0 && thetaMin <= solution.thetaEnd() * (1.0 + 1e-14))) {
        throw DomainError("theta_min must lie in (0, thetaEnd]");
    }
    thetaMin = std::min(thetaMin, solution.thetaEnd());
    for (const auto& s : solution.samples()) {
        if (s.theta > 0.0 && s.theta <= thetaMin && !(s.g > 0.0)) {
            throw SolverError(SolverFailure::SignViolation,
                              "g is not positive at theta = " + std::to_string(s.theta), s.theta);
        }
    }
    const SpaceForm form = solution.problem().form;
    const double gmin = solution.value(thetaMin);
    const double g2 = gmin * gmin;
    auto integrand = [&](double th) {
        const double g = solution.value(th);
        return (g2 - g * g) * sn(form, th);
    };
    // The interpolant is polynomial between samples, so one Kronrod rule per sample interval
    // suffices; a tolerance relative to the estimate would stall where the integral crosses 0.
    using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    double value = 0.0, error = 0.0, l1 = 0.0;
    const auto& samples = solution.samples();
    for (std::size_t i = 1; i < samples.size() && samples[i - 1].theta < thetaMin; ++i) {
        const double a = samples[i - 1].theta;
        const double b = std::min(samples[i].theta, thetaMin);
        double e = 0.0, piece = 0.0;
        value += Rule::integrate(integrand, a, b, 0, 0.0, &e, &piece);
        error += e;
        l1 += piece;
    }
    if (error > 1e-10 * l1 + 1e-300) {
        throw SolverError(SolverFailure::QuadratureNonConvergence, "front-loaded integral error estimate too large",
                          thetaMin);
    }
    return 0.25 * value;
}

RadialSolution legendreProfile(double n, double thetaEnd) {
    return integrateRadial({kSphere, 1, n * (n + 1.0), thetaEnd});
}

DerivativeMinimum derivativeMinimum(const RadialSolution& sol, int scanPoints) {
    const double a = sol.samples()[1].theta;
    const double b = sol.thetaEnd();
    std::vector<double> ts(scanPoints + 1), vs(scanPoints + 1);
    std::size_t best = 0;
    for (int i = 0; i <= scanPoints; ++i) {
        ts[i] = a + (b - a) * i / scanPoints;
        vs[i] = sol.derivative(ts[i]);
        if (vs[i] < vs[best]) best = i;
    }
    if (best == 0 || best == static_cast<std::size_t>(scanPoints)) return {ts[best], vs[best]};
    auto g2 = [&](double x) { return sol.secondDerivative(x); };
    double lo = ts[best - 1], hi = ts[best + 1];
    if (g2(lo) < 0.0 && g2(hi) > 0.0) {
        const double th = toms748(g2, lo, hi, 1e-13);
        return {th, sol.derivative(th)};
    }
    return {ts[best], vs[best]};
}

SpecialConstants solveSpecialConstants() {
    SpecialConstants c;
    auto vanishes = [](double n) { return derivativeMinimum(legendreProfile(n)).value < 0.0; };
    double lo = 0.7, hi = 1.0;
    if (vanishes(lo) || !vanishes(hi)) {
        throw SolverError(SolverFailure::BracketExpansion, "n2 bracket [0.7, 1.0] does not straddle", lo);
    }
    c.n2 = bisectPredicate([&](double n) { return !vanishes(n); }, lo, hi, 1e-11);
    const auto tangency = derivativeMinimum(legendreProfile(c.n2));
    c.theta2 = tangency.theta;
    c.t2 = capCoordinates(kSphere, c.theta2).t;
    const double s2 = std::sin(c.theta2);
    c.identityResidual = c.n2 * (c.n2 + 1.0) * s2 * s2 - 1.0;

    auto frontLoaded = [](double n) { return neumannProfile(n).frontLoaded >= 0.0; };
    lo = c.n2 + 1e-3;
    hi = 0.99;
    if (!frontLoaded(lo) || frontLoaded(hi)) {
        throw SolverError(SolverFailure::BracketExpansion, "n4 bracket does not straddle", lo);
    }
    c.n4 = bisectPredicate(frontLoaded, lo, hi, 1e-10);
    c.theta4 = neumannProfile(c.n4).thetaMin;
    c.t4 = capCoordinates(kSphere, c.theta4).t;
    return c;
}

double betaCurve(double n, double t) {
    const double theta = thetaFromT(kSphere, t);
    return 2.0 * kPi * std::sin(theta) * robinAlphaForLambda(kSphere, theta, 1, n * (n + 1.0));
}

std::vector<double> betaCurve(double n, std::span<const double> ts) {
    std::vector<double> out;
    out.reserve(ts.size());
    if (ts.empty()) return out;
    double tmax = 0.0;
    for (double t : ts) tmax = std::max(tmax, t);
    const auto profile = legendreProfile(n, thetaFromT(kSphere, tmax));
    for (double t : ts) {
        const double theta = thetaFromT(kSphere, t);
        out.push_back(-2.0 * kPi * std::sin(theta) * logDerivativeAt(profile, theta));
    }
    return out;
}

double angularGuaranteeCurve(double t) {
    return t * (4.0 * kPi - t) / (2.0 * kPi - t);
}

RegionModel::RegionModel() : RegionModel(solveSpecialConstants()) {}

RegionModel::RegionModel(const SpecialConstants& constants)
    : constants_(constants),
      g2_(std::make_shared<RadialSolution>(legendreProfile(constants.n2))),
      g4_(std::make_shared<RadialSolution>(legendreProfile(constants.n4))) {}

const RegionModel& RegionModel::shared() {
    static const RegionModel model;
    return model;
}

double RegionModel::curveFromProfile(const RadialSolution& profile, double t) const {
    const double theta = thetaFromT(kSphere, t);
    return -2.0 * kPi * std::sin(theta) * logDerivativeAt(profile, theta);
}

double RegionModel::beta2(double t) const { return curveFromProfile(*g2_, t); }
double RegionModel::beta4(double t) const { return curveFromProfile(*g4_, t); }

double RegionModel::flUpperBoundary(double t) const {
    if (!(t > 0.0)) throw DomainError("flUpperBoundary needs t > 0");
    if (t > constants_.t4 + 1e-9) {
        throw DomainError("flUpperBoundary: t = " + std::to_string(t) + " is beyond t4, where the boundary lies below the axis");
    }
    const double theta = thetaFromT(kSphere, t);
    auto holds = [&](double n) {
        try {
            const auto sol = legendreProfile(n, theta);
            return frontLoadedIntegral(sol, theta) >= 0.0;
        } catch (const SolverError&) {
            return false;
        }
    };
    double hi = 1.0;
    int guard = 0;
    while (holds(hi)) {
        hi *= 2.0;
        if (++guard > 40) throw SolverError(SolverFailure::BracketExpansion, "FL boundary degree diverges", hi);
    }
    const double n = bisectPredicate(holds, 0.0, hi, 1e-10 * std::max(1.0, hi));
    return 2.0 * kPi * std::sin(theta) * robinAlphaForLambda(kSphere, theta, 1, n * (n + 1.0));
}

CornerPoint RegionModel::ivVCorner() const {
    const double hi = capCoordinates(kSphere, kMaxSphericalTheta).t * (1.0 - 1e-9);
    auto f = [&](double t) { return angularGuaranteeCurve(t) - beta2(t); };
    const double t = toms748(f, kT3 + 1e-9, std::min(hi, 4.0 * kPi * (1.0 - 1e-4)), 1e-12);
    return {t, beta2(t)};
}

namespace {
enum class AngularCheck { Unchecked, Holds, Fails };
}

static std::vector<RegionLabel> membership(const RegionModel& model, double t, double beta, AngularCheck angular) {
    std::vector<RegionLabel> out;
    if (!std::isfinite(t) || !std::isfinite(beta) || beta < -2.0 * kPi) return out;
    const auto& c = model.constants();
    if (t <= c.t2 && beta <= 0.0) out.push_back(RegionLabel::BS_I);
    if (!(t > c.t2 && t < 4.0 * kPi)) return out;

    double b2 = 0.0;
    try {
        b2 = model.beta2(t);
    } catch (const Error&) {
        if (t > kT3 && beta <= 2.0 * kPi - t) out.push_back(RegionLabel::BS_III);
        return out;
    }
    if (t <= kT3) {
        if (beta <= b2) out.push_back(RegionLabel::BS_II);
        return out;
    }
    const double guarantee = angularGuaranteeCurve(t);
    if (beta <= 2.0 * kPi - t) out.push_back(RegionLabel::BS_III);
    if (guarantee <= beta && beta <= b2) out.push_back(RegionLabel::BS_IV);
    if (2.0 * kPi - t <= beta && beta <= std::min(guarantee, b2)) {
        bool holds = angular == AngularCheck::Holds;
        if (angular == AngularCheck::Unchecked) {
            try {
                const double theta = thetaFromT(kSphere, t);
                const double alpha = beta / (2.0 * kPi * std::sin(theta));
                holds = secondEigenWithMode(kSphere, theta, alpha).mode == Mode::Angular;
            } catch (const Error&) {
                holds = false;
            }
        }
        if (holds) out.push_back(RegionLabel::BS_V);
    }
    return out;
}

std::vector<RegionLabel> RegionModel::bsSetMembership(double t, double beta) const {
    return membership(*this, t, beta, AngularCheck::Unchecked);
}

std::optional<double> RegionModel::dropDownAnchor(double t) const {
    {
        std::lock_guard lock(anchorMutex_);
        if (auto it = anchors_.find(t); it != anchors_.end()) return it->second;
    }
    std::optional<double> anchor;
    try {
        if (t == 0.0) {
            anchor = 2.0 * kPi;
        } else if (t > 0.0 && t <= constants_.t4) {
            anchor = flUpperBoundary(t);
        } else if (t > constants_.t4) {
            // β₄ points qualify once the angular condition is confirmed there.
            const double b4 = beta4(t);
            const double theta = thetaFromT(kSphere, t);
            const double alpha = b4 / (2.0 * kPi * std::sin(theta));
            if (b4 >= -2.0 * kPi && secondEigenWithMode(kSphere, theta, alpha).mode == Mode::Angular) anchor = b4;
        }
    } catch (const Error&) {
        anchor.reset();
    }
    std::lock_guard lock(anchorMutex_);
    anchors_.emplace(t, anchor);
    return anchor;
}

RegionPoint RegionModel::classifyPoint(double t, double beta) const {
    RegionPoint p;
    p.t = t;
    p.beta = beta;
    if (!std::isfinite(t) || !std::isfinite(beta)) {
        p.diagnostics = "non-finite coordinates";
        return p;
    }
    if (t < 0.0 && beta > 0.0) {
        p.label = RegionLabel::NA;
        return p;
    }
    if (beta < -2.0 * kPi) {
        p.diagnostics = "beta below -2*pi";
        return p;
    }
    const SpaceForm form = formForT(t);
    double theta = 1.0;
    try {
        if (!form.isFlat()) theta = thetaFromT(form, t);
    } catch (const Error& e) {
        p.diagnostics = e.what();
        return p;
    }
    const double alpha = beta / (2.0 * kPi * sn(form, theta));
    try {
        const auto mode = secondEigenWithMode(form, theta, alpha);
        if (mode.mode == Mode::Radial) {
            p.label = RegionLabel::ERadial;
            return p;
        }
        if (mode.mode == Mode::Boundary) {
            p.diagnostics = "angular and radial eigenvalues tie";
            return p;
        }
        const auto sol = integrateRadial({form, 1, mode.lambdaAngular, theta});
        const auto profile = shapeProfile(sol);
        if (profile.shape == ShapeClass::Up) {
            const auto sets = membership(*this, t, beta, AngularCheck::Holds);
            if (!sets.empty()) {
                p.label = sets.front();
            } else {
                p.diagnostics = "monotone profile outside sets I-V";
            }
            return p;
        }
        if ((profile.shape == ShapeClass::UpDown || profile.shape == ShapeClass::UpDownUp) && !form.isHyperbolic()) {
            const double fl = normalizedFrontLoaded(sol, *profile.thetaMin);
            if (fl >= kFrontLoadedTolerance) {
                p.label = RegionLabel::FL;
                return p;
            }
            if (const auto anchor = dropDownAnchor(t); anchor && beta < *anchor) {
                p.label = RegionLabel::FL;
                p.diagnostics = "drop-down from beta = " + std::to_string(*anchor);
                return p;
            }
            p.diagnostics = "front-loaded integral negative (" + std::to_string(fl) + ")";
            return p;
        }
        p.diagnostics = profile.diagnostics.empty() ? std::string("profile ") + toString(profile.shape)
                                                    : profile.diagnostics;
    } catch (const Error& e) {
        p.diagnostics = e.what();
    }
    return p;
}

double flUpperBoundary(double t) { return RegionModel::shared().flUpperBoundary(t); }

std::vector<RegionLabel> bsSetMembership(double t, double beta) {
    return RegionModel::shared().bsSetMembership(t, beta);
}

RegionPoint classifyPoint(double t, double beta) { return RegionModel::shared().classifyPoint(t, beta); }

}  // namespace robincap
