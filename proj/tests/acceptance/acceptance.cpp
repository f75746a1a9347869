// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "robincap/cli.hpp"
#include "robincap/conformal_lab.hpp"
#include "robincap/eigensolver.hpp"
#include "robincap/export.hpp"
#include "robincap/geometry.hpp"
#include "robincap/regions.hpp"
#include "robincap/verify.hpp"

using namespace robincap;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20240607;
const SpaceForm kSph = SpaceForm::spherical();
const SpaceForm kFlat = SpaceForm::flat();
const SpaceForm kHyp = SpaceForm::hyperbolic();

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string format(const char* fmt, ...) {
    char buf[1024];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

double lowestAngular(SpaceForm form, double theta, double alpha) {
    return eigenvaluesForRobin(form, theta, 1, alpha, 1).front().lambda;
}

const CheckResult* findCheck(const VerifyReport& report, const std::string& name) {
    for (const auto& c : report.checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

Outcome fromCheck(const VerifyReport& report, const std::string& name) {
    const auto* c = findCheck(report, name);
    if (!c) return {false, "check '" + name + "' missing from the report"};
    return {c->passed, format("%s: measured %.6g, %s", name.c_str(), c->measured, c->detail.c_str())};
}

Outcome specialConstants() {
    const auto& c = RegionModel::shared().constants();
    const double ratio = c.theta2 / kPi;
    const bool n2 = std::abs(c.n2 - 0.851187) <= 5e-5;
    const bool window = ratio >= 0.695 && ratio <= 0.705;
    const bool t2 = std::abs(c.t2 - 10.081) <= 5e-3;
    const bool identity = std::abs(c.identityResidual) <= 1e-6;
    return {n2 && window && t2 && identity,
            format("n2=%.10f [%s] Theta2/pi=%.8f window [0.695,0.705] [%s] t2=%.8f [%s] identity residual %.2e [%s]",
                   c.n2, n2 ? "ok" : "out", ratio, window ? "ok" : "out", c.t2, t2 ? "ok" : "out",
                   c.identityResidual, identity ? "ok" : "out")};
}

Outcome t3Identity() {
    const double t = capCoordinates(kSph, 0.75 * kPi).t;
    const double err = std::abs(t - (2 + std::numbers::sqrt2) * kPi);
    return {err <= 1e-12 && std::abs(kT3 - t) <= 1e-12, format("t(3pi/4)=%.15f error %.2e", t, err)};
}

Outcome n4t4() {
    const auto c = solveSpecialConstants();
    const bool ok = std::abs(c.n4 - 0.908729) <= 1e-4 && std::abs(c.t4 - 11.828) <= 1e-2;
    return {ok, format("n4=%.10f t4=%.8f (fresh bisection)", c.n4, c.t4)};
}

Outcome hemisphere() {
    const double lambda = lowestAngular(kSph, kPi / 2, 0.0);
    return {std::abs(lambda - 2.0) <= 1e-8, format("lambda=%.14f", lambda)};
}

Outcome steklovLine() {
    double worst = 0.0, worstContour = 0.0;
    for (auto form : {kSph, kHyp}) {
        std::vector<double> grid;
        for (int i = 1; i <= 20; ++i) grid.push_back(form.isSpherical() ? 3.1 * i / 20.0 : 4.0 * i / 20.0);
        for (double th : grid) worst = std::max(worst, std::abs(lowestAngular(form, th, -1.0 / sn(form, th))));
        const auto contour = contourCurve(form, 0.0, grid);
        if (contour.points.size() != grid.size()) return {false, "lambda = 0 contour dropped apertures"};
        for (const auto& p : contour.points) worstContour = std::max(worstContour, std::abs(p.beta + 2 * kPi));
    }
    return {worst <= 1e-8 && worstContour <= 1e-8,
            format("max |lambda| %.2e over 40 apertures, max |beta + 2pi| %.2e", worst, worstContour)};
}

Outcome besselNeumann() {
    const double z = oracle::besselJ1PrimeFirstZero();
    const double lambda = lowestAngular(kFlat, 1.0, 0.0);
    const double err = std::abs(lambda - z * z);
    return {err <= 1e-6, format("lambda=%.12f oracle=%.12f error %.2e (distance to 3.389936: %.2e)", lambda, z * z,
                                err, std::abs(lambda - 3.389936))};
}

Outcome beta2Bound() {
    const auto& c = RegionModel::shared().constants();
    const double top = 4 * kPi * (1 - 1e-4);
    double worst = INFINITY;
    for (int i = 0; i < 200; ++i) {
        const double t = c.t2 + (top - c.t2) * i / 199.0;
        worst = std::min(worst, betaCurve(c.n2, t) - (2 * kPi - t));
    }
    int rises = 0;
    double prev = INFINITY, last = 0.0;
    for (int k = 1; k <= 12; ++k) {
        const double t = 4 * kPi - (4 * kPi - 12.0) * std::pow(0.5, k);
        if (t > top) break;
        last = betaCurve(c.n2, t);
        if (!(last < prev) || !(last > 2 * kPi - t)) ++rises;
        prev = last;
    }
    return {worst > 0.0 && rises == 0 && last > -2 * kPi,
            format("min beta2 - (2pi - t) = %.4e over 200 points; trend violations %d; last value %.6f", worst, rises,
                   last)};
}

Outcome anchors() {
    struct Anchor {
        double t, beta;
        RegionLabel expected;
    };
    const Anchor list[] = {{5, -kPi, RegionLabel::BS_I},
                           {0, 2 * kPi, RegionLabel::FL},
                           {-10, 3, RegionLabel::NA},
                           {12.4, -4, RegionLabel::ERadial}};
    std::string detail;
    bool ok = true;
    for (const auto& a : list) {
        const auto p = classifyPoint(a.t, a.beta);
        ok = ok && p.label == a.expected;
        detail += format("(%g,%.4g)->%s ", a.t, a.beta, toString(p.label));
    }
    const auto corner = RegionModel::shared().ivVCorner();
    const bool cornerOk = std::abs(corner.t - 11.841) <= 5e-3 && std::abs(corner.beta + 1.544) <= 5e-3;
    return {ok && cornerOk, detail + format("corner (%.6f, %.6f)", corner.t, corner.beta)};
}

Outcome modeMap() {
    ModeMapConfig cfg;
    cfg.nTheta = 40;
    cfg.nAlpha = 40;
    const auto table = modeMapTable(cfg);
    int angularViolations = 0, radial = 0, radialHigh = 0, radialNonNegative = 0;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const double th = table.number(r, "theta"), a = table.number(r, "alpha");
        const std::string mode = table.text(r, "mode");
        const bool mustBeAngular = th <= 0.75 * kPi || !(a > 1.0 / std::tan(th) && a < std::tan(th));
        if (mustBeAngular && mode != "Angular") ++angularViolations;
        if (mode == "Radial") {
            ++radial;
            if (th > 0.9 * kPi) ++radialHigh;
            if (!(a < 0.0)) ++radialNonNegative;
        }
    }
    return {angularViolations == 0 && radialHigh > 0 && radialNonNegative == 0,
            format("%zu grid points; angular violations %d; radial points %d (%d with Theta > 0.9pi, %d with alpha >= 0)",
                   table.rows.size(), angularViolations, radial, radialHigh, radialNonNegative)};
}

bool isometric(const WeightedDomain& d) {
    if (d.weight.delta != 0.0 || d.weight.K != d.compareK) return false;
    switch (d.map.kind) {
        case MapKind::Identity: return true;
        case MapKind::SphereRotation: return d.weight.K == 1;
        case MapKind::Mobius: return d.weight.K == -1;
        default: return false;
    }
}

Outcome areaLemmas() {
    int domains = 0;
    double minDiff = INFINITY, worstDrop = 0.0, worstIso = 0.0;
    for (const auto& d : domainCatalog()) {
        const auto report = checkAreaLemmas(normalizeDomain(d));
        if (isometric(d)) worstIso = std::max(worstIso, report.verdicts.maxAbsDifference);
        if (d.compareK < 0) continue;
        ++domains;
        minDiff = std::min(minDiff, report.verdicts.minDifference);
        worstDrop = std::max(worstDrop, report.verdicts.maxRatioDrop);
    }
    return {domains >= 5 && minDiff >= -1e-8 && worstDrop <= 1e-8 && worstIso <= 1e-9,
            format("%d domains with K in {0,+1}: min(A-B) %.3e, max ratio drop %.3e; isometric max |A-B| %.3e",
                   domains, minDiff, worstDrop, worstIso)};
}

Outcome transplant() {
    const auto identity = normalizeDomain(WeightedDomain::make("identity", "sphere", 1.0));
    const double theta = thetaFromConformal(kSph, identity.R);
    double worstBound = 0.0;
    for (double alpha : {-1.0, -0.3, 0.0, 0.5, 2.0}) {
        const double lambda = lowestAngular(kSph, theta, alpha);
        const auto h = transplantProfile(integrateRadial({kSph, 1, lambda, theta}));
        const auto q = transplantQuantities(identity, h, 2 * kPi * std::sin(theta) * alpha);
        worstBound = std::max(worstBound, std::abs(q.bound - lambda));
    }
    double worstZero = 0.0, minNumerator = INFINITY;
    for (const auto& d : domainCatalog()) {
        const auto nd = normalizeDomain(d);
        worstZero = std::max(worstZero, std::abs(transplantQuantities(nd, powerProfile(1.0, 1.0), -2 * kPi).numerator));
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            for (double beta : {-2 * kPi, -kPi, 0.0, 3.0}) {
                minNumerator = std::min(minNumerator, transplantQuantities(nd, powerProfile(1.0, p), beta).numerator);
            }
        }
    }
    return {worstBound <= 1e-6 && worstZero <= 1e-12 && minNumerator >= -1e-9,
            format("identity bound vs disk eigenvalue %.2e; zero numerator %.2e; min numerator %.4e", worstBound,
                   worstZero, minNumerator)};
}

Outcome determinism() {
    auto once = [] {
        const char* argv[] = {"robincap", "regions", "--grid", "60x40", "--format", "csv"};
        std::ostringstream out, err;
        const int status = runCli(6, argv, out, err);
        return std::pair{status, out.str()};
    };
    const auto a = once();
    const auto b = once();
    return {a.first == 0 && b.first == 0 && a.second == b.second && !a.second.empty(),
            format("two 60x40 regions runs, %zu bytes each, %s", a.second.size(),
                   a.second == b.second ? "identical" : "different")};
}

}  // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    VerifyReport ode;
    bool odeRan = false;
    auto odeReport = [&]() -> const VerifyReport& {
        if (!odeRan) ode = runSuite("ode", kSeed), odeRan = true;
        return ode;
    };

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"special constants n2, Theta2, t2", specialConstants},
        {"t3 identity", t3Identity},
        {"n4 and t4 by bisection", n4t4},
        {"hemisphere Neumann eigenvalue", hemisphere},
        {"Steklov line", steklovLine},
        {"Euclidean Neumann disk", besselNeumann},
        {"eigenvalue comparison sign identity", [&] { return fromCheck(odeReport(), "eigenvalue comparison sign identity"); }},
        {"beta2 lower bound and trend", beta2Bound},
        {"region anchors and IV/V corner", anchors},
        {"mode map", modeMap},
        {"monotonicity taxonomy", [&] { return fromCheck(odeReport(), "monotonicity taxonomy"); }},
        {"area lemmas", areaLemmas},
        {"transplant identities", transplant},
        {"regions determinism", determinism},
    };

    int failed = 0;
    int index = 0;
    for (const auto& [name, body] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.passed) ++failed;
        std::printf("%s %2d %s (%.1fs): %s\n", o.passed ? "PASS" : "FAIL", index, name, seconds, o.detail.c_str());
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
