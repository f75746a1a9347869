#include "robincap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "oracles.hpp"
#include "robincap/conformal_lab.hpp"
#include "robincap/eigensolver.hpp"
#include "robincap/errors.hpp"
#include "robincap/geometry.hpp"
#include "robincap/radial_ode.hpp"
#include "robincap/regions.hpp"

namespace robincap {

Sampler::Sampler(std::uint64_t seed) : rng_(seed) {}

double Sampler::uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

int Sampler::integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng_() % span);
}

bool VerifyReport::allPassed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<const CheckResult*> VerifyReport::failures() const {
    std::vector<const CheckResult*> out;
    for (const auto& c : checks) {
        if (!c.passed) out.push_back(&c);
    }
    return out;
}

std::string VerifyReport::toJson() const {
    nlohmann::ordered_json doc;
    doc["passed"] = allPassed();
    doc["total"] = checks.size();
    doc["failed"] = failures().size();
    auto list = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json j;
        j["suite"] = c.suite;
        j["name"] = c.name;
        j["passed"] = c.passed;
        j["measured"] = std::isfinite(c.measured) ? nlohmann::ordered_json(c.measured) : nlohmann::ordered_json();
        j["tolerance"] = c.tolerance;
        j["detail"] = c.detail;
        list.push_back(std::move(j));
    }
    doc["checks"] = std::move(list);
    return doc.dump(2) + "\n";
}

const std::vector<std::string>& suiteNames() {
    static const std::vector<std::string> names{"geometry", "ode", "eigen", "regions", "lab"};
    return names;
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const SpaceForm kHyp = SpaceForm::hyperbolic();
const SpaceForm kFlat = SpaceForm::flat();
const SpaceForm kSph = SpaceForm::spherical();

std::string format(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

class Recorder {
public:
    Recorder(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

    void add(const std::string& name, bool passed, double measured, double tolerance, std::string detail = {}) {
        out_.push_back({suite_, name, passed, measured, tolerance, std::move(detail)});
    }

    /// Runs body; an escaping exception is recorded as a failed check under `name`.
    void guarded(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            add(name, false, kNaN, 0.0, std::string("exception: ") + e.what());
        }
    }

private:
    std::string suite_;
    std::vector<CheckResult>& out_;
};

double lowestAngular(SpaceForm form, double theta, double alpha) {
    return eigenvaluesForRobin(form, theta, 1, alpha, 1).front().lambda;
}

RadialSolution angularProfile(SpaceForm form, double theta, double alpha) {
    return integrateRadial({form, 1, lowestAngular(form, theta, alpha), theta});
}

bool positiveProfile(const RadialSolution& sol) {
    const auto& s = sol.samples();
    return std::all_of(s.begin() + 1, s.end(), [](const RadialSample& x) { return x.g > 0.0; });
}

double alphaFromBeta(SpaceForm form, double theta, double beta) {
    return beta / (2.0 * kPi * sn(form, theta));
}

// ---------------------------------------------------------------- geometry

void geometrySuite(Recorder& r, Sampler& rng) {
    r.guarded("pythagorean identity", [&] {
        double worst = 0.0;
        for (const auto form : {kHyp, kFlat, kSph}) {
            const double top = form.isSpherical() ? kMaxSphericalTheta : 3.0;
            for (int i = 1; i <= 400; ++i) {
                const double th = top * i / 400.0;
                const double v = snPrime(form, th) * snPrime(form, th) - sn(form, th) * snSecond(form, th) - 1.0;
                worst = std::max(worst, std::abs(v));
            }
        }
        r.add("pythagorean identity", worst <= 1e-12, worst, 1e-12, "400 radii per space form, theta <= 3 off the sphere");
    });

    r.guarded("area coordinate round trip", [&] {
        double worst = 0.0;
        for (const auto form : {kHyp, kSph}) {
            const double top = form.isSpherical() ? kMaxSphericalTheta : 5.0;
            for (int i = 0; i < 1000; ++i) {
                const double th = rng.uniform(1e-3, top);
                worst = std::max(worst, std::abs(thetaFromT(form, capCoordinates(form, th).t) - th));
            }
        }
        r.add("area coordinate round trip", worst <= 1e-12, worst, 1e-12,
              "1000 radii each for K = -1 and K = +1; K = 0 has no radius in t");
    });

    r.guarded("weight curvature", [&] {
        double worst = 0.0;
        const double h = 1e-4;
        for (const auto form : {kHyp, kFlat, kSph}) {
            const double top = form.isHyperbolic() ? 0.8 : 2.0;
            auto f = [&](double s) { return std::log(weight(form, s)); };
            for (int i = 1; i <= 40; ++i) {
                const double s = 0.05 + (top - 0.05) * i / 40.0;
                const double lap = (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h) + (f(s + h) - f(s - h)) / (2.0 * h * s);
                const double K = -lap / (2.0 * weight(form, s));
                worst = std::max(worst, std::abs(K - form.curvature()));
            }
        }
        r.add("weight curvature", worst <= 1e-6, worst, 1e-6, "central differences, h = 1e-4");
    });

    r.guarded("area identities", [&] {
        double worst = 0.0;
        for (const auto form : {kHyp, kFlat, kSph}) {
            const double top = form.isSpherical() ? 3.0 : 2.5;
            for (int i = 1; i <= 100; ++i) {
                const double th = top * i / 100.0;
                const double rad = conformalRadius(form, th);
                const double a = capCoordinates(form, th).area;
                worst = std::max(worst, std::abs(areaA(form, rad) - a) / a);
                worst = std::max(worst, std::abs(radiusFromArea(form, a) - rad) / rad);
                worst = std::max(worst, std::abs(thetaFromConformal(form, rad) - th) / th);
            }
        }
        r.add("area identities", worst <= 1e-10, worst, 1e-10, "areaA, radiusFromArea and conformal radius, relative");
    });
}

// ---------------------------------------------------------------- ode

enum class TaxonomyCase {
    HypNonPositive,
    HypPositive,
    FlatNonPositive,
    FlatPositive,
    SphPositive,
    SphNeumannSmall,
    SphNeumannLarge,
    SphBetweenSmall,
    SphBelowAlpha2,
    SphBetweenLarge,
};
constexpr int kTaxonomyCases = 10;

struct TaxonomyDraw {
    SpaceForm form = kSph;
    double theta = 0.0;
    double alpha = 0.0;
    ShapeClass expected = ShapeClass::Other;
    const char* label = "";
};

double alpha2(double theta) {
    const double t = capCoordinates(kSph, theta).t;
    return RegionModel::shared().beta2(t) / (2.0 * kPi * std::sin(theta));
}

TaxonomyDraw drawTaxonomy(TaxonomyCase c, Sampler& rng) {
    const double th2 = RegionModel::shared().constants().theta2;
    const double top = 0.99 * kPi;
    TaxonomyDraw d;
    switch (c) {
        case TaxonomyCase::HypNonPositive:
            d = {kHyp, rng.uniform(0.2, 3.0), rng.integer(0, 4) == 0 ? 0.0 : rng.uniform(-5.0, 0.0), ShapeClass::Up,
                 "K=-1, alpha<=0"};
            break;
        case TaxonomyCase::HypPositive:
            d = {kHyp, rng.uniform(0.2, 3.0), rng.uniform(0.05, 5.0), ShapeClass::UpDown, "K=-1, alpha>0"};
            break;
        case TaxonomyCase::FlatNonPositive:
            d = {kFlat, rng.uniform(0.2, 3.0), rng.integer(0, 4) == 0 ? 0.0 : rng.uniform(-5.0, 0.0), ShapeClass::Up,
                 "K=0, alpha<=0"};
            break;
        case TaxonomyCase::FlatPositive:
            d = {kFlat, rng.uniform(0.2, 3.0), rng.uniform(0.05, 5.0), ShapeClass::UpDown, "K=0, alpha>0"};
            break;
        case TaxonomyCase::SphPositive:
            d = {kSph, rng.uniform(0.1, top), rng.uniform(0.05, 5.0), ShapeClass::UpDown, "K=+1 (i)"};
            break;
        case TaxonomyCase::SphNeumannSmall:
            d = {kSph, rng.uniform(0.1, th2 - 0.01), 0.0, ShapeClass::Up, "K=+1 (ii), theta<=theta2"};
            break;
        case TaxonomyCase::SphNeumannLarge:
            d = {kSph, rng.uniform(th2 + 0.01, top), 0.0, ShapeClass::UpDown, "K=+1 (ii), theta>theta2"};
            break;
        case TaxonomyCase::SphBetweenSmall: {
            const double th = rng.uniform(0.1, th2 - 0.01);
            const double a2 = alpha2(th);
            d = {kSph, th, a2 * rng.uniform(0.02, 0.98), ShapeClass::Up, "K=+1 (iii), theta<theta2"};
            break;
        }
        case TaxonomyCase::SphBelowAlpha2: {
            const double th = rng.uniform(0.1, top);
            d = {kSph, th, alpha2(th) - rng.uniform(0.02, 5.0), ShapeClass::Up, "K=+1 (iii), alpha<=alpha2"};
            break;
        }
        case TaxonomyCase::SphBetweenLarge: {
            const double th = rng.uniform(th2 + 0.01, top);
            const double a2 = alpha2(th);
            d = {kSph, th, a2 * rng.uniform(0.02, 0.98), ShapeClass::UpDownUp, "K=+1 (iv)"};
            break;
        }
    }
    return d;
}

void odeSuite(Recorder& r, Sampler& rng) {
    r.guarded("legendre agreement", [&] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const SpaceForm form = (i % 2 == 0) ? kSph : kHyp;
            const int m = rng.integer(0, 1);
            const double n = rng.uniform(0.0, 3.0);
            const double th = rng.uniform(0.1, 2.8);
            const double lambda = form.curvature() * n * (n + 1.0);
            const auto end = integrateRadial({form, m, lambda, th}).end();
            const auto ref = legendreRadial(n, m, form, th);
            const double scale = (m == 1) ? 2.0 : 1.0;
            const double amp = std::hypot(ref.g, ref.dg);
            const double err = std::hypot(end.g / scale - ref.g, end.dg / scale - ref.dg) / amp;
            worst = std::max(worst, err);
        }
        r.add("legendre agreement", worst <= 1e-8, worst, 1e-8, "200 draws, n in [0,3], theta in (0.1,2.8), K = +-1");
    });

    r.guarded("independent legendre series", [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double n = rng.uniform(0.0, 3.0);
            const double th = rng.uniform(0.1, 2.8);
            const auto sol = integrateRadial({kSph, 1, n * (n + 1.0), th});
            const double ref = oracle::legendreMinusOne(n, th);
            worst = std::max(worst, std::abs(sol.end().g / 2.0 - ref) / std::max(1.0, std::abs(ref)));
        }
        r.add("independent legendre series", worst <= 1e-8, worst, 1e-8, "50 draws against a separate series oracle");
    });

    r.guarded("fixed-step oracle", [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double lambda = rng.uniform(-10.0, 20.0);
            const double th = rng.uniform(0.2, 3.0);
            const auto end = integrateRadial({kSph, 1, lambda, th}).end();
            const auto ref = oracle::sphereRadialRK4(lambda, th, 20000);
            worst = std::max(worst, std::hypot(end.g - ref.g, end.dg - ref.dg) / std::hypot(ref.g, ref.dg));
        }
        r.add("fixed-step oracle", worst <= 1e-7, worst, 1e-7, "20 draws against fixed-step RK4 with 20000 steps");
    });

    r.guarded("eigenvalue comparison sign identity", [&] {
        int accepted = 0;
        int attempts = 0;
        int violations = 0;
        long points = 0;
        while (accepted < 1000 && attempts < 20000) {
            ++attempts;
            const SpaceForm form = SpaceForm::fromCurvature(rng.integer(-1, 1));
            const double th = rng.uniform(0.1, form.isSpherical() ? 3.0 : 3.0);
            const double l1 = rng.uniform(-20.0, 10.0);
            const double l2 = rng.uniform(-20.0, 10.0);
            if (std::abs(l1 - l2) < 1e-2) continue;
            const auto g = integrateRadial({form, 1, l1, th});
            const auto gs = integrateRadial({form, 1, l2, th});
            if (!positiveProfile(g) || !positiveProfile(gs)) continue;
            ++accepted;
            const double expected = (l1 > l2) ? 1.0 : -1.0;
            for (int j = 1; j <= 64; ++j) {
                const double x = th * j / 64.0;
                const double diff = logDerivativeAt(gs, x) - logDerivativeAt(g, x);
                ++points;
                if (!(diff * expected > 0.0)) ++violations;
            }
        }
        r.add("eigenvalue comparison sign identity", accepted == 1000 && violations == 0, violations, 0.0,
              format("%d positive pairs from %d draws, %ld grid points", accepted, attempts, points));
    });

    r.guarded("liouville convexity", [&] {
        int mismatches = 0;
        int checked = 0;
        const double hs = 5e-3;
        for (int i = 0; i < 60; ++i) {
            const double lambda = rng.uniform(-5.0, 12.0);
            const double th = rng.uniform(0.5, 3.0);
            const auto sol = integrateRadial({kSph, 1, lambda, th});
            double scale = 0.0;
            for (const auto& s : sol.samples()) scale = std::max(scale, std::abs(s.g));
            auto gAt = [&](double s) { return sol.value(2.0 * std::atan(std::exp(s))); };
            const double s0 = std::log(std::tan(0.05)) + hs;
            const double s1 = std::log(std::tan(th / 2.0)) - hs;
            for (int j = 0; j <= 100; ++j) {
                const double s = s0 + (s1 - s0) * j / 100.0;
                const double x = 2.0 * std::atan(std::exp(s));
                const double g = gAt(s);
                const double qg = (1.0 - lambda * std::sin(x) * std::sin(x)) * g;
                if (std::abs(qg) < 1e-3 * scale) continue;
                const double d2 = (gAt(s + hs) - 2.0 * g + gAt(s - hs)) / (hs * hs);
                ++checked;
                if (d2 * qg <= 0.0) ++mismatches;
            }
        }
        r.add("liouville convexity", mismatches == 0, mismatches, 0.0,
              format("%d interior points in s = log tan(theta/2)", checked));
    });

    r.guarded("euclidean scale invariance", [&] {
        double worst = 0.0;
        const double c = 2.0;
        for (int i = 0; i < 20; ++i) {
            const int m = rng.integer(0, 2);
            const double lambda = rng.uniform(-10.0, 30.0);
            const double th = rng.uniform(0.2, 2.0);
            const auto a = integrateRadial({kFlat, m, lambda, th});
            const auto b = integrateRadial({kFlat, m, lambda / (c * c), c * th});
            const double factor = std::pow(c, m);
            double scale = 0.0;
            for (const auto& s : a.samples()) scale = std::max(scale, std::abs(s.g));
            for (int j = 1; j <= 50; ++j) {
                const double x = th * j / 50.0;
                worst = std::max(worst, std::abs(b.value(c * x) - factor * a.value(x)) / (factor * scale));
            }
        }
        r.add("euclidean scale invariance", worst <= 1e-8, worst, 1e-8, "c = 2, 20 draws");
    });

    r.guarded("monotonicity taxonomy", [&] {
        int mismatches = 0;
        int flagged = 0;
        std::string firstMismatch;
        for (int i = 0; i < 100; ++i) {
            const auto d = drawTaxonomy(static_cast<TaxonomyCase>(i % kTaxonomyCases), rng);
            const auto profile = shapeProfile(angularProfile(d.form, d.theta, d.alpha));
            if (profile.shape == d.expected) continue;
            if (std::abs(profile.minDerivative) <= 1e3 * profile.tolerance) {
                ++flagged;
                continue;
            }
            if (++mismatches == 1) {
                firstMismatch = format("%s theta=%.6g alpha=%.6g got %s", d.label, d.theta, d.alpha, toString(profile.shape));
            }
        }
        r.add("monotonicity taxonomy", mismatches == 0, mismatches, 0.0,
              format("100 draws over 10 cases, %d tolerance-flagged%s%s", flagged, firstMismatch.empty() ? "" : "; ",
                     firstMismatch.c_str()));
    });
}

// ---------------------------------------------------------------- eigen

void eigenSuite(Recorder& r, Sampler& rng) {
    r.guarded("hemisphere neumann", [&] {
        const double lambda = lowestAngular(kSph, kPi / 2.0, 0.0);
        r.add("hemisphere neumann", std::abs(lambda - 2.0) <= 1e-8, lambda, 1e-8, "expected 2");
    });

    r.guarded("steklov line", [&] {
        double worst = 0.0;
        for (const auto form : {kSph, kHyp}) {
            for (int i = 1; i <= 20; ++i) {
                const double th = (form.isSpherical() ? 3.0 : 3.0) * i / 20.0;
                worst = std::max(worst, std::abs(lowestAngular(form, th, -1.0 / sn(form, th))));
            }
        }
        r.add("steklov line", worst <= 1e-8, worst, 1e-8, "20 apertures for each of K = +-1, alpha = -1/sn");
    });

    r.guarded("bessel neumann disk", [&] {
        const double lambda = lowestAngular(kFlat, 1.0, 0.0);
        const double z = oracle::besselJ1PrimeFirstZero();
        const double err = std::abs(lambda - z * z);
        r.add("bessel neumann disk", err <= 1e-6, err, 1e-6, format("lambda=%.12g oracle=%.12g", lambda, z * z));
    });

    r.guarded("eigen residuals and prufer count", [&] {
        double worstResidual = 0.0;
        int countErrors = 0;
        for (int i = 0; i < 40; ++i) {
            const SpaceForm form = SpaceForm::fromCurvature(rng.integer(-1, 1));
            const double th = rng.uniform(0.2, 3.0);
            const int m = rng.integer(0, 2);
            const double alpha = rng.uniform(-4.0, 4.0);
            const auto eig = eigenvaluesForRobin(form, th, m, alpha, 3);
            for (std::size_t k = 0; k < eig.size(); ++k) {
                worstResidual = std::max(worstResidual, eig[k].residual);
                const double mu = (k + 1 < eig.size()) ? 0.5 * (eig[k].lambda + eig[k + 1].lambda) : eig[k].lambda + 1e-6;
                if (countEigenvaluesBelow(form, th, m, alpha, mu) != static_cast<int>(k) + 1) ++countErrors;
            }
        }
        r.add("eigen residuals", worstResidual <= 1e-8, worstResidual, 1e-8, "40 draws, three eigenvalues each");
        r.add("prufer count", countErrors == 0, countErrors, 0.0, "count below midpoints equals the index");
    });

    r.guarded("monotone in alpha", [&] {
        int violations = 0;
        for (int i = 0; i < 10; ++i) {
            const SpaceForm form = SpaceForm::fromCurvature(rng.integer(-1, 1));
            const double th = rng.uniform(0.3, 3.0);
            const int m = rng.integer(0, 1);
            double prev = -std::numeric_limits<double>::infinity();
            for (int j = 0; j <= 16; ++j) {
                const double alpha = -4.0 + 0.5 * j;
                const double lambda = eigenvaluesForRobin(form, th, m, alpha, 2).back().lambda;
                if (!(lambda > prev)) ++violations;
                prev = lambda;
            }
        }
        r.add("monotone in alpha", violations == 0, violations, 0.0, "second eigenvalue, alpha grid of 17 points");
    });

    r.guarded("domain monotonicity", [&] {
        int violations = 0;
        for (const auto form : {kHyp, kFlat, kSph}) {
            double prev = std::numeric_limits<double>::infinity();
            // Past Θ ≈ 2.2 the spherical Neumann value climbs back towards 2.
            const double top = form.isSpherical() ? kPi / 2.0 : 3.0;
            for (int j = 1; j <= 30; ++j) {
                const double lambda = lowestAngular(form, top * j / 30.0, 0.0);
                if (!(lambda < prev)) ++violations;
                prev = lambda;
            }
        }
        r.add("domain monotonicity", violations == 0, violations, 0.0, "Neumann angular eigenvalue, 30 radii per form, sphere up to pi/2");
    });

    r.guarded("inverse consistency", [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const SpaceForm form = SpaceForm::fromCurvature(rng.integer(-1, 1));
            const double th = rng.uniform(0.2, 3.0);
            const int m = rng.integer(0, 2);
            const double alpha = rng.uniform(-5.0, 5.0);
            const double lambda = eigenvaluesForRobin(form, th, m, alpha, 1).front().lambda;
            const double back = robinAlphaForLambda(form, th, m, lambda);
            worst = std::max(worst, std::abs(back - alpha) / std::max(1.0, std::abs(alpha)));
        }
        r.add("inverse consistency", worst <= 1e-8, worst, 1e-8, "100 draws, relative in alpha");
    });

    r.guarded("m=2 dominance", [&] {
        int violations = 0;
        for (int i = 1; i <= 20; ++i) {
            const double th = kMaxSphericalTheta * i / 20.0;
            for (int j = 0; j < 20; ++j) {
                const double alpha = -6.0 + 10.0 * j / 19.0;
                const auto mode = secondEigenWithMode(kSph, th, alpha);
                if (!(mode.lambdaM2 > mode.lambdaAngular)) ++violations;
            }
        }
        r.add("m=2 dominance", violations == 0, violations, 0.0, "20x20 grid, theta in (0, cap], alpha in [-6, 4]");
    });
}

// ---------------------------------------------------------------- regions

struct SetSample {
    double t = 0.0;
    double beta = 0.0;
};

void regionsSuite(Recorder& r, Sampler& rng) {
    const RegionModel& model = RegionModel::shared();
    const auto& c = model.constants();
    const double tTop = 4.0 * kPi * (1.0 - 1e-4);

    r.add("n2", std::abs(c.n2 - 0.851187) <= 5e-5, c.n2, 5e-5, "published 0.851187");
    r.add("t2", std::abs(c.t2 - 10.081) <= 5e-3, c.t2, 5e-3, "published 10.081");
    r.add("n4", std::abs(c.n4 - 0.908729) <= 1e-4, c.n4, 1e-4, "published 0.908729");
    r.add("t4", std::abs(c.t4 - 11.828) <= 1e-2, c.t4, 1e-2, "published 11.828");
    r.add("n2 identity", std::abs(c.identityResidual) <= 1e-6, c.identityResidual, 1e-6,
          "n2(n2+1) sin^2(theta2) - 1");
    r.guarded("theta2", [&] {
        const double fromT = thetaFromT(kSph, 10.081);
        const double err = std::abs(c.theta2 - fromT);
        const double ratio = c.theta2 / kPi;
        r.add("theta2", err <= 1e-3 && ratio >= 0.70 && ratio < 0.71, ratio, 1e-3,
              format("theta2/pi=%.8f; aperture of the published t2 is %.8f pi", ratio, fromT / kPi));
    });
    r.guarded("t3", [&] {
        const double err = std::abs(capCoordinates(kSph, 0.75 * kPi).t - kT3);
        r.add("t3", err <= 1e-12, err, 1e-12, "t(3pi/4) against (2+sqrt2)pi");
    });

    r.guarded("beta2 lower bound", [&] {
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 200; ++i) {
            const double t = c.t2 + (tTop - c.t2) * i / 199.0;
            worst = std::min(worst, model.beta2(t) - (2.0 * kPi - t));
        }
        r.add("beta2 lower bound", worst > 0.0, worst, 0.0, "min of beta2 - (2pi - t) over 200 points on [t2, cap]");
    });

    r.guarded("beta2 decreasing near the antipode", [&] {
        int rises = 0;
        double prev = std::numeric_limits<double>::infinity();
        double last = 0.0;
        for (int k = 1; k <= 12; ++k) {
            const double t = 4.0 * kPi - std::pow(10.0, -0.5 * k) * 4.0 * kPi * 0.5;
            if (t > tTop) break;
            last = model.beta2(t);
            if (!(last < prev)) ++rises;
            if (!(last > 2.0 * kPi - t)) ++rises;
            prev = last;
        }
        r.add("beta2 decreasing near the antipode", rises == 0, last, 0.0, "t_k -> 4pi, strictly above 2pi - t_k");
    });

    r.guarded("iv/v corner", [&] {
        const auto corner = model.ivVCorner();
        const double err = std::max(std::abs(corner.t - 11.841), std::abs(corner.beta + 1.544));
        r.add("iv/v corner", err <= 5e-3, err, 5e-3, format("(%.8f, %.8f)", corner.t, corner.beta));
    });

    r.guarded("anchors", [&] {
        struct Anchor {
            double t, beta;
            RegionLabel label;
        };
        const Anchor anchors[] = {{5.0, -kPi, RegionLabel::BS_I},
                                  {0.0, 2.0 * kPi, RegionLabel::FL},
                                  {-10.0, 3.0, RegionLabel::NA},
                                  {12.4, -4.0, RegionLabel::ERadial}};
        int wrong = 0;
        std::string detail;
        for (const auto& a : anchors) {
            const auto p = model.classifyPoint(a.t, a.beta);
            detail += format("(%g,%g)->%s ", a.t, a.beta, toString(p.label));
            if (p.label != a.label) ++wrong;
        }
        r.add("anchors", wrong == 0, wrong, 0.0, detail);
    });

    r.guarded("closed-form sets pass direct checks", [&] {
        const auto corner = model.ivVCorner();
        int sampled = 0;
        int violations = 0;
        std::string first;
        for (int set = 0; set < 5; ++set) {
            int got = 0;
            for (int attempt = 0; got < 80 && attempt < 4000; ++attempt) {
                SetSample s;
                switch (set) {
                    case 0: s = {rng.uniform(-15.0, c.t2), 0.0}; s.beta = rng.uniform(-2.0 * kPi, 0.0); break;
                    case 1: s.t = rng.uniform(c.t2, kT3); s.beta = rng.uniform(-2.0 * kPi, model.beta2(s.t)); break;
                    case 2: s.t = rng.uniform(kT3, tTop); s.beta = rng.uniform(-2.0 * kPi, 2.0 * kPi - s.t); break;
                    case 3:
                        s.t = rng.uniform(kT3, corner.t);
                        s.beta = rng.uniform(angularGuaranteeCurve(s.t), model.beta2(s.t));
                        break;
                    default:
                        s.t = rng.uniform(kT3, tTop);
                        s.beta = rng.uniform(2.0 * kPi - s.t, std::min(angularGuaranteeCurve(s.t), model.beta2(s.t)));
                        break;
                }
                const auto sets = model.bsSetMembership(s.t, s.beta);
                const auto want = static_cast<RegionLabel>(static_cast<int>(RegionLabel::BS_I) + set);
                if (std::find(sets.begin(), sets.end(), want) == sets.end()) continue;
                ++got;
                ++sampled;
                const SpaceForm form = formForT(s.t);
                const double th = form.isFlat() ? 1.0 : thetaFromT(form, s.t);
                const double alpha = alphaFromBeta(form, th, s.beta);
                const auto mode = secondEigenWithMode(form, th, alpha);
                bool ok = mode.mode == Mode::Angular && s.beta >= -2.0 * kPi;
                if (ok) {
                    const auto profile = shapeProfile(integrateRadial({form, 1, mode.lambdaAngular, th}));
                    ok = profile.shape == ShapeClass::Up;
                }
                if (!ok && ++violations == 1) first = format("set %s at (%.6g, %.6g)", toString(want), s.t, s.beta);
            }
        }
        r.add("closed-form sets pass direct checks", sampled == 400 && violations == 0, violations, 0.0,
              format("%d sampled points%s%s", sampled, first.empty() ? "" : "; first failure ", first.c_str()));
    });

    r.guarded("drop-down", [&] {
        int checked = 0;
        int violations = 0;
        std::string first;
        for (int i = 0; i < 50; ++i) {
            const double t = rng.uniform(0.05, c.t4);
            const double top = model.flUpperBoundary(t);
            const double th = thetaFromT(kSph, t);
            for (int j = 0; j < 2; ++j) {
                const double beta = rng.uniform(-2.0 * kPi, top);
                if (secondEigenWithMode(kSph, th, alphaFromBeta(kSph, th, beta)).mode != Mode::Angular) continue;
                ++checked;
                const auto p = model.classifyPoint(t, beta);
                if (!(isBS(p.label) || p.label == RegionLabel::FL) && ++violations == 1) {
                    first = format("(%.6g, %.6g) -> %s", t, beta, toString(p.label));
                }
            }
        }
        r.add("drop-down", violations == 0, violations, 0.0,
              format("%d points below 50 FL boundary points%s%s", checked, first.empty() ? "" : "; first ", first.c_str()));
    });

    r.guarded("fl boundary sign change", [&] {
        int violations = 0;
        for (int i = 1; i <= 20; ++i) {
            const double t = c.t4 * i / 20.0;
            const double th = thetaFromT(kSph, t);
            const double top = model.flUpperBoundary(t);
            for (const double shift : {-0.05, 0.05}) {
                const auto sol = angularProfile(kSph, th, alphaFromBeta(kSph, th, top + shift));
                const double fl = frontLoadedIntegral(sol, th);
                if ((shift > 0.0) != (fl < 0.0)) ++violations;
            }
        }
        r.add("fl boundary sign change", violations == 0, violations, 0.0,
              "front-loaded integral at theta_min = Theta flips sign across the boundary at 20 t-values");
    });
}

// ---------------------------------------------------------------- lab

bool isometric(const WeightedDomain& d) {
    if (d.weight.delta != 0.0 || d.weight.K != d.compareK) return false;
    switch (d.map.kind) {
        case MapKind::Identity: return true;
        case MapKind::SphereRotation: return d.weight.K == 1;
        case MapKind::Mobius: return d.weight.K == -1;
        default: return false;
    }
}

SpaceForm compareForm(const NormalizedDomain& nd) { return nd.form(); }

double apertureOf(const NormalizedDomain& nd) { return thetaFromConformal(compareForm(nd), nd.R); }

void labSuite(Recorder& r, Sampler& rng) {
    const auto catalog = domainCatalog();
    std::vector<NormalizedDomain> domains;
    for (const auto& d : catalog) domains.push_back(normalizeDomain(d));

    r.guarded("area lemmas", [&] {
        double minDiff = std::numeric_limits<double>::infinity();
        double worstDrop = 0.0;
        double worstIso = 0.0;
        double worstEnd = 0.0;
        int considered = 0;
        bool ok = true;
        for (const auto& nd : domains) {
            const auto rep = checkAreaLemmas(nd, 64, 1e-8);
            worstEnd = std::max(worstEnd, rep.verdicts.endpointMismatch);
            if (isometric(nd.domain)) worstIso = std::max(worstIso, rep.verdicts.maxAbsDifference);
            if (nd.domain.compareK < 0) continue;
            ++considered;
            minDiff = std::min(minDiff, rep.verdicts.minDifference);
            worstDrop = std::max(worstDrop, rep.verdicts.maxRatioDrop);
            ok = ok && rep.verdicts.differenceHolds && rep.verdicts.ratioMonotone.value_or(false);
        }
        r.add("area difference", ok && minDiff >= -1e-8, minDiff, 1e-8, format("%d domains with K in {0,+1}", considered));
        r.add("area ratio monotone", worstDrop <= 1e-8, worstDrop, 1e-8, "largest drop of B/A along the grid");
        r.add("isometric equality", worstIso <= 1e-9, worstIso, 1e-9, "max |A-B| over isometric catalog entries");
        r.add("endpoint normalization", worstEnd <= 1e-9, worstEnd, 1e-9, "|B(R)-A(R)|/A(R)");
    });

    r.guarded("pullback curvature", [&] {
        double worst = 0.0;
        int used = 0;
        for (const auto& nd : domains) {
            if (nd.domain.weight.K != 1 || nd.domain.weight.delta != 0.0) continue;
            ++used;
            for (int i = 1; i <= 4; ++i) {
                for (int j = 0; j < 6; ++j) {
                    const double rad = nd.R * 0.2 * i;
                    const Complex z = std::polar(rad, 2.0 * kPi * j / 6.0);
                    worst = std::max(worst, std::abs(pullbackCurvature(nd, z) - 1.0));
                }
            }
        }
        r.add("pullback curvature", worst <= 1e-5, worst, 1e-5, format("%d spherical catalog entries, 24 points each", used));
    });

    r.guarded("transplant identity", [&] {
        const auto nd = normalizeDomain(WeightedDomain::make("identity", "sphere", 1.0));
        const double th = apertureOf(nd);
        double worst = 0.0;
        for (const double alpha : {-1.5, -0.3, 0.0, 0.7, 2.0}) {
            const double lambda = lowestAngular(kSph, th, alpha);
            const auto h = transplantProfile(integrateRadial({kSph, 1, lambda, th}));
            const auto q = transplantQuantities(nd, h, 2.0 * kPi * std::sin(th) * alpha);
            worst = std::max({worst, std::abs(q.bound - lambda), std::abs(q.diskValue - lambda)});
        }
        r.add("transplant identity", worst <= 1e-6, worst, 1e-6, "identity domain, five Robin parameters");
    });

    r.guarded("zero numerator", [&] {
        double worst = 0.0;
        for (const auto& nd : domains) {
            const auto q = transplantQuantities(nd, powerProfile(1.0, 1.0), -2.0 * kPi);
            worst = std::max(worst, std::abs(q.numerator) / (nd.R * nd.R));
        }
        r.add("zero numerator", worst <= 1e-12, worst, 1e-12, "h(r) = r, beta = -2pi, every catalog domain");
    });

    r.guarded("numerator nonnegative and rigid", [&] {
        double minNumerator = std::numeric_limits<double>::infinity();
        int rigidityViolations = 0;
        int evaluated = 0;
        for (const auto& nd : domains) {
            std::vector<TransplantProfile> family;
            for (const double p : {1.0, 1.5, 2.0, 3.0}) family.push_back(powerProfile(rng.uniform(0.5, 2.0), p));
            const double th = apertureOf(nd);
            const SpaceForm form = compareForm(nd);
            if (form.validTheta(th)) {
                family.push_back(transplantProfile(angularProfile(form, th, rng.uniform(-2.0, 2.0))));
            }
            for (const auto& h : family) {
                for (const double beta : {-2.0 * kPi, -kPi, 0.0, 3.0, rng.uniform(-2.0 * kPi, 7.0)}) {
                    const double num = transplantQuantities(nd, h, beta).numerator;
                    const double hR = h.value(nd.R);
                    ++evaluated;
                    minNumerator = std::min(minNumerator, num);
                    const bool linear = h.name().rfind("power(", 0) == 0 && h.name().find(",1)") != std::string::npos;
                    const bool expectZero = linear && beta == -2.0 * kPi;
                    const bool isZero = std::abs(num) <= 1e-9 * std::max(1.0, hR * hR);
                    if (expectZero != isZero) ++rigidityViolations;
                }
            }
        }
        r.add("numerator nonnegative", minNumerator >= -1e-9, minNumerator, 1e-9,
              format("%d (domain, profile, beta) points with beta >= -2pi", evaluated));
        r.add("zero-numerator rigidity", rigidityViolations == 0, rigidityViolations, 0.0,
              "zero only for linear profiles at beta = -2pi");
    });

    r.guarded("conformal invariance", [&] {
        double worst = 0.0;
        for (const auto& nd : domains) {
            if (nd.domain.map.kind != MapKind::Quadratic) continue;
            const auto h = powerProfile(1.0, 1.0);
            const double disk = diskDirichletEnergy(h, nd.R);
            worst = std::max(worst, std::abs(imageDirichletEnergy(nd, h) - disk) / disk);
        }
        r.add("conformal invariance", worst <= 1e-8, worst, 1e-8, "Dirichlet energy under the quadratic maps, relative");
    });

    r.guarded("denominator comparison", [&] {
        double minDirect = std::numeric_limits<double>::infinity();
        double worstAgreement = 0.0;
        int profiles = 0;
        for (const auto& nd : domains) {
            if (nd.domain.compareK < 0) continue;
            const SpaceForm form = compareForm(nd);
            const double th = apertureOf(nd);
            if (!form.validTheta(th)) continue;
            std::vector<double> betas{-0.5 * 2.0 * kPi * sn(form, th)};
            const double t = form.isFlat() ? 0.0 : capCoordinates(form, th).t;
            const double flBeta = form.isFlat() ? kPi : (t <= RegionModel::shared().constants().t4 ? 0.5 * flUpperBoundary(t) : kNaN);
            if (std::isfinite(flBeta) && classifyPoint(t, flBeta).label == RegionLabel::FL) betas.push_back(flBeta);
            for (const double beta : betas) {
                const auto h = transplantProfile(angularProfile(form, th, alphaFromBeta(form, th, beta)));
                const double direct = denominatorComparison(nd, h);
                const double parts = denominatorComparisonByParts(nd, h);
                ++profiles;
                minDirect = std::min(minDirect, direct);
                worstAgreement = std::max(worstAgreement, std::abs(direct - parts) / std::max(1e-3, std::abs(direct)));
            }
        }
        r.add("denominator comparison", minDirect >= -1e-8, minDirect, 1e-8, format("%d BS/FL profiles", profiles));
        r.add("denominator by parts", worstAgreement <= 1e-6, worstAgreement, 1e-6, "direct against integrated by parts");
    });

    r.guarded("G positivity", [&] {
        double worst = std::numeric_limits<double>::infinity();
        int profiles = 0;
        for (const double t : {1.0, 4.0, 8.0}) {
            const double th = thetaFromT(kSph, t);
            const double beta = 0.5 * flUpperBoundary(t);
            const auto sol = angularProfile(kSph, th, alphaFromBeta(kSph, th, beta));
            const auto profile = shapeProfile(sol);
            const double upto = profile.thetaMin.value_or(th);
            ++profiles;
            for (const auto& s : gFunction(sol)) {
                if (s.psi <= upto) worst = std::min(worst, s.G);
            }
        }
        r.add("G positivity", worst >= -1e-12, worst, 1e-12, format("%d front-loaded profiles up to theta_min", profiles));
    });
}

}  // namespace

VerifyReport runSuite(const std::string& suite, std::uint64_t seed) {
    using Runner = void (*)(Recorder&, Sampler&);
    const std::pair<const char*, Runner> table[] = {
        {"geometry", geometrySuite}, {"ode", odeSuite}, {"eigen", eigenSuite}, {"regions", regionsSuite}, {"lab", labSuite}};
    VerifyReport report;
    bool matched = false;
    std::uint64_t index = 0;
    for (const auto& [name, run] : table) {
        ++index;
        if (suite != "all" && suite != name) continue;
        matched = true;
        Sampler rng(seed ^ (0x9E3779B97F4A7C15ULL * index));
        Recorder rec(name, report.checks);
        run(rec, rng);
    }
    if (!matched) throw DomainError("unknown verification suite '" + suite + "'");
    return report;
}

}  // namespace robincap
