#include "robincap/conformal_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "robincap/errors.hpp"
#include "robincap/quadrature.hpp"

namespace robincap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kAngularNodes = 256;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Splits "name:key=value" into name and the numeric value of `key` (if present).
std::pair<std::string, std::optional<double>> splitSpec(const std::string& text, const std::string& key) {
    const auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    if (colon == std::string::npos) return {name, std::nullopt};
    const std::string rest = text.substr(colon + 1);
    const std::string prefix = key + "=";
    if (rest.rfind(prefix, 0) != 0) throw DomainError("unrecognised parameter in '" + text + "', expected " + key);
    try {
        std::size_t used = 0;
        const double v = std::stod(rest.substr(prefix.size()), &used);
        if (used != rest.size() - prefix.size()) throw std::invalid_argument("trailing characters");
        return {name, v};
    } catch (const std::exception&) {
        throw DomainError("could not parse the value in '" + text + "'");
    }
}

struct Bump {
    double c, hw;
    double value(double s) const {
        const double x = (s - c) / hw;
        if (std::abs(x) >= 1.0) return 0.0;
        const double u = 1.0 - x * x;
        return u * u * u;
    }
    double d1(double s) const {
        const double x = (s - c) / hw;
        if (std::abs(x) >= 1.0) return 0.0;
        const double u = 1.0 - x * x;
        return -6.0 * x * u * u / hw;
    }
    double d2(double s) const {
        const double x = (s - c) / hw;
        if (std::abs(x) >= 1.0) return 0.0;
        const double u = 1.0 - x * x;
        return (-6.0 * u * u + 24.0 * x * x * u) / (hw * hw);
    }
};

double baseWeight(int K, double s2) {
    if (K > 0) return 4.0 / ((1.0 + s2) * (1.0 + s2));
    if (K == 0) return 1.0;
    return 4.0 / ((1.0 - s2) * (1.0 - s2));
}

}  // namespace

Complex ConformalMap::operator()(Complex z) const {
    switch (kind) {
        case MapKind::Identity: return z;
        case MapKind::Mobius: return (z + param) / (1.0 + param * z);
        case MapKind::SphereRotation: return (z + param) / (1.0 - param * z);
        case MapKind::Quadratic: return z + param * z * z;
    }
    return z;
}

Complex ConformalMap::derivative(Complex z) const {
    switch (kind) {
        case MapKind::Identity: return 1.0;
        case MapKind::Mobius: {
            const Complex d = 1.0 + param * z;
            return (1.0 - param * param) / (d * d);
        }
        case MapKind::SphereRotation: {
            const Complex d = 1.0 - param * z;
            return (1.0 + param * param) / (d * d);
        }
        case MapKind::Quadratic: return 1.0 + 2.0 * param * z;
    }
    return 1.0;
}

std::string ConformalMap::id() const {
    switch (kind) {
        case MapKind::Identity: return "identity";
        case MapKind::Mobius: return "mobius:a=" + fmt(param);
        case MapKind::SphereRotation: return "rotation:a=" + fmt(param);
        case MapKind::Quadratic: return "quadratic:eps=" + fmt(param);
    }
    return "identity";
}

ConformalMap ConformalMap::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    ConformalMap m;
    if (name == "identity") {
        if (colon != std::string::npos) throw DomainError("identity map takes no parameters");
        return m;
    }
    if (name == "mobius" || name == "rotation") {
        m.kind = name == "mobius" ? MapKind::Mobius : MapKind::SphereRotation;
        const auto [n, v] = splitSpec(text, "a");
        if (!v) throw DomainError(name + " map needs a=<value>");
        m.param = *v;
        return m;
    }
    if (name == "quadratic") {
        m.kind = MapKind::Quadratic;
        const auto [n, v] = splitSpec(text, "eps");
        if (!v) throw DomainError("quadratic map needs eps=<value>");
        m.param = *v;
        return m;
    }
    throw DomainError("unknown map kind '" + name + "'");
}

double PlanarWeight::operator()(Complex p) const {
    const double s2 = std::norm(p);
    double w = baseWeight(K, s2);
    if (delta != 0.0) w *= 1.0 + delta * Bump{0.5 * (bumpInner + bumpOuter), 0.5 * (bumpOuter - bumpInner)}.value(std::sqrt(s2));
    return w;
}

double PlanarWeight::curvature(double s) const {
    if (delta == 0.0) return K;
    const Bump b{0.5 * (bumpInner + bumpOuter), 0.5 * (bumpOuter - bumpInner)};
    const double one = 1.0 + delta * b.value(s);
    const double d1 = delta * b.d1(s) / one;
    const double d2 = delta * b.d2(s) / one - d1 * d1;
    const double lap = s > 0.0 ? d2 + d1 / s : 2.0 * d2;
    const double wk = baseWeight(K, s * s);
    return (2.0 * K * wk - lap) / (2.0 * wk * one);
}

std::string PlanarWeight::id() const {
    std::string name = K > 0 ? "sphere" : (K == 0 ? "flat" : "hyperbolic");
    if (delta != 0.0) name += ":delta=" + fmt(delta);
    return name;
}

PlanarWeight PlanarWeight::parse(const std::string& text) {
    const auto [name, v] = splitSpec(text, "delta");
    PlanarWeight w;
    if (name == "sphere") {
        w.K = 1;
    } else if (name == "flat") {
        w.K = 0;
    } else if (name == "hyperbolic") {
        w.K = -1;
    } else {
        throw DomainError("unknown weight kind '" + name + "'");
    }
    if (v) w.delta = *v;
    return w;
}

std::string WeightedDomain::id() const {
    return "map=" + map.id() + " weight=" + weight.id() + " rho=" + fmt(rho) + " compare=" + std::to_string(compareK);
}

WeightedDomain WeightedDomain::make(const std::string& mapText, const std::string& weightText, double rho,
                                    std::optional<int> compareK) {
    WeightedDomain d;
    d.map = ConformalMap::parse(mapText);
    d.weight = PlanarWeight::parse(weightText);
    d.rho = rho;
    d.weight.bumpInner = 0.2 * rho;
    d.weight.bumpOuter = 0.8 * rho;
    d.compareK = compareK.value_or(d.weight.K);
    d.validate();
    return d;
}

void WeightedDomain::validate() const {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("base radius must be positive");
    if (compareK < -1 || compareK > 1) throw DomainError("comparison curvature must be -1, 0 or +1");
    const double a = std::abs(map.param);
    switch (map.kind) {
        case MapKind::Identity: break;
        case MapKind::Mobius:
            if (!(a < 1.0)) throw DomainError("Mobius parameter must satisfy |a| < 1");
            if (!(a * rho < 1.0)) throw DomainError("Mobius map has a pole in the closed disk");
            break;
        case MapKind::SphereRotation:
            if (!(a * rho < 1.0)) throw DomainError("sphere rotation has a pole in the closed disk");
            break;
        case MapKind::Quadratic:
            if (!(2.0 * a * rho < 1.0)) throw DomainError("quadratic map is not univalent: need |eps| < 1/(2 rho)");
            break;
    }
    if (!(weight.delta > -1.0)) throw DomainError("perturbation must keep the weight positive (delta > -1)");
    if (weight.delta != 0.0 && !(weight.bumpOuter > weight.bumpInner && weight.bumpInner >= 0.0)) {
        throw DomainError("perturbation bump support is empty");
    }
    double smax = 0.0;
    for (int j = 0; j < 1024; ++j) {
        const double phi = 2.0 * kPi * j / 1024;
        smax = std::max(smax, std::abs(map(std::polar(rho, phi))));
    }
    if (weight.K < 0 && !(smax < 1.0)) throw DomainError("image leaves the hyperbolic disk");
    double kmax = -INFINITY, where = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double s = smax * i / 4000.0;
        const double k = weight.curvature(s);
        if (k > kmax) {
            kmax = k;
            where = s;
        }
    }
    if (kmax > compareK + 1e-9) {
        throw DomainError("weight curvature reaches " + fmt(kmax) + " at radius " + fmt(where) + ", above K = " +
                          std::to_string(compareK));
    }
}

std::vector<WeightedDomain> domainCatalog() {
    return {
        WeightedDomain::make("identity", "sphere", 1.0),
        WeightedDomain::make("quadratic:eps=0.1", "sphere", 1.0),
        WeightedDomain::make("quadratic:eps=0.2", "flat", 1.0),
        WeightedDomain::make("mobius:a=0.3", "flat", 0.8),
        WeightedDomain::make("rotation:a=0.4", "sphere", 1.2),
        WeightedDomain::make("identity", "flat", 1.0, 1),
        WeightedDomain::make("quadratic:eps=0.1", "flat:delta=0.025", 1.0, 1),
        WeightedDomain::make("mobius:a=0.3", "hyperbolic", 0.6),
        WeightedDomain::make("quadratic:eps=0.2", "hyperbolic", 0.5),
    };
}

double NormalizedDomain::density(Complex z) const {
    const Complex d = derivative(z);
    return domain.weight(map(z)) * std::norm(d);
}

double NormalizedDomain::circleMass(double r) const {
    return periodicTrapezoid([&](double phi) { return density(std::polar(r, phi)); }, kAngularNodes);
}

NormalizedDomain normalizeDomain(const WeightedDomain& domain) {
    domain.validate();
    NormalizedDomain nd;
    nd.domain = domain;
    nd.scale = 1.0;
    nd.R = domain.rho;
    nd.area = areaB(nd, domain.rho);
    const SpaceForm form = nd.form();
    if (form.isSpherical() && nd.area >= 4.0 * kPi) {
        throw DomainError("weighted area " + fmt(nd.area) + " is not below 4π");
    }
    nd.R = radiusFromArea(form, nd.area);
    nd.scale = domain.rho / nd.R;
    return nd;
}

double areaB(const NormalizedDomain& domain, double r) {
    if (!(r >= 0.0 && r <= domain.R * (1.0 + 1e-12))) throw DomainError("areaB radius outside [0, R]");
    return panelIntegrate([&](double s) { return s * domain.circleMass(s); }, 0.0, r, 1e-10, 1e-15);
}

AreaLemmaReport checkAreaLemmas(const NormalizedDomain& domain, int gridPoints, double tolerance) {
    if (gridPoints < 2) throw DomainError("area grid needs at least two points");
    AreaLemmaReport rep;
    auto& p = rep.profile;
    auto& v = rep.verdicts;
    p.R = domain.R;
    v.tolerance = tolerance;
    const SpaceForm form = domain.form();
    double B = 0.0;
    double prevR = 0.0;
    for (int i = 1; i <= gridPoints; ++i) {
        const double r = domain.R * i / gridPoints;
        B += panelIntegrate([&](double s) { return s * domain.circleMass(s); }, prevR, r, 1e-11, 1e-16);
        prevR = r;
        const double A = areaA(form, r);
        p.r.push_back(r);
        p.A.push_back(A);
        p.B.push_back(B);
        p.ratio.push_back(B / A);
    }
    v.minDifference = INFINITY;
    for (std::size_t i = 0; i < p.r.size(); ++i) {
        const double d = p.A[i] - p.B[i];
        v.minDifference = std::min(v.minDifference, d);
        v.maxAbsDifference = std::max(v.maxAbsDifference, std::abs(d));
    }
    v.differenceHolds = v.minDifference >= -tolerance;
    v.equality = v.maxAbsDifference <= tolerance;
    if (!form.isHyperbolic()) {
        for (std::size_t i = 1; i < p.ratio.size(); ++i) v.maxRatioDrop = std::max(v.maxRatioDrop, p.ratio[i - 1] - p.ratio[i]);
        v.ratioMonotone = v.maxRatioDrop <= tolerance;
    }
    v.endpointMismatch = std::abs(p.B.back() - p.A.back()) / p.A.back();
    return rep;
}

TransplantProfile transplantProfile(const RadialSolution& solution) {
    const SpaceForm form = solution.problem().form;
    const std::string name = std::string("eigenprofile(") + form.name() + ")";
    return TransplantProfile(
        [solution, form](double r) {
            const double theta = thetaFromConformal(form, r);
            const auto s = solution.at(theta);
            return std::pair{s.g, s.dg * dThetaDr(form, r)};
        },
        name);
}

TransplantProfile powerProfile(double c, double p) {
    if (!(p > 0.0)) throw DomainError("power profile needs a positive exponent so that h(0) = 0");
    return TransplantProfile([c, p](double r) { return std::pair{c * std::pow(r, p), c * p * std::pow(r, p - 1.0)}; },
                             "power(" + fmt(c) + "," + fmt(p) + ")");
}

namespace {
void requireAdmissible(const TransplantProfile& h) {
    if (std::abs(h.value(0.0)) > 1e-12) throw DomainError("trial profile must vanish at the origin");
}
}  // namespace

double diskDirichletEnergy(const TransplantProfile& h, double R) {
    requireAdmissible(h);
    return kPi * panelIntegrate(
                     [&](double r) {
                         const auto [v, d] = h(r);
                         return (d * d + v * v / (r * r)) * r;
                     },
                     0.0, R, 1e-12, 1e-15);
}

TransplantQuantities transplantQuantities(const NormalizedDomain& domain, const TransplantProfile& h, double beta) {
    requireAdmissible(h);
    const double R = domain.R;
    const SpaceForm form = domain.form();
    TransplantQuantities q;
    q.numerator = 2.0 * diskDirichletEnergy(h, R) + beta * h.value(R) * h.value(R);
    q.denomPulled = panelIntegrate(
        [&](double r) {
            const double v = h.value(r);
            return v * v * domain.circleMass(r) * r;
        },
        0.0, R, 1e-11, 1e-300);
    q.denomDisk = 2.0 * kPi * panelIntegrate(
                                  [&](double r) {
                                      const double v = h.value(r);
                                      return v * v * weight(form, r) * r;
                                  },
                                  0.0, R, 1e-12, 1e-300);
    if (!(q.denomPulled > 0.0) || !(q.denomDisk > 0.0)) throw DomainError("trial profile has zero denominator");
    q.bound = q.numerator / q.denomPulled;
    q.diskValue = q.numerator / q.denomDisk;
    return q;
}

double denominatorComparison(const NormalizedDomain& domain, const TransplantProfile& h) {
    const auto q = transplantQuantities(domain, h, 0.0);
    return q.denomPulled - q.denomDisk;
}

double denominatorComparisonByParts(const NormalizedDomain& domain, const TransplantProfile& h) {
    requireAdmissible(h);
    const SpaceForm form = domain.form();
    return panelIntegrate(
        [&](double r) {
            const auto [v, d] = h(r);
            return 2.0 * v * d * (areaA(form, r) - areaB(domain, r));
        },
        0.0, domain.R, 1e-9, 1e-14);
}

double imageDirichletEnergy(const NormalizedDomain& domain, const TransplantProfile& h) {
    requireAdmissible(h);
    auto u = [&](Complex z) {
        const double r = std::abs(z);
        if (r == 0.0) return 0.0;
        return h.value(r) * z.real() / r;
    };
    auto inverse = [&](Complex w, Complex guess) {
        Complex z = guess;
        for (int it = 0; it < 60; ++it) {
            const Complex step = (domain.map(z) - w) / domain.derivative(z);
            z -= step;
            if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        return z;
    };
    auto ring = [&](double r) {
        return periodicTrapezoid(
            [&](double phi) {
                const Complex z = std::polar(r, phi);
                const Complex w = domain.map(z);
                const double d = 1e-5 * std::max(1.0, std::abs(w));
                const double fx = (u(inverse(w + d, z)) - u(inverse(w - d, z))) / (2.0 * d);
                const double fy = (u(inverse(w + Complex(0, d), z)) - u(inverse(w - Complex(0, d), z))) / (2.0 * d);
                return (fx * fx + fy * fy) * std::norm(domain.derivative(z));
            },
            kAngularNodes);
    };
    return panelIntegrate([&](double r) { return ring(r) * r; }, 0.0, domain.R, 1e-9, 1e-14);
}

double pullbackCurvature(const NormalizedDomain& domain, Complex z, double step) {
    auto L = [&](Complex p) { return std::log(domain.density(p)); };
    const double lap = (L(z + step) + L(z - step) + L(z + Complex(0, step)) + L(z - Complex(0, step)) - 4.0 * L(z)) /
                       (step * step);
    return -lap / (2.0 * domain.density(z));
}

std::vector<GSample> gFunction(const RadialSolution& solution) {
    const SpaceForm form = solution.problem().form;
    if (form.isHyperbolic()) throw DomainError("gFunction applies to spherical or Euclidean profiles");
    using Rule = boost::math::quadrature::gauss<double, 10>;
    auto integrand = [&](double th) {
        const auto s = solution.at(th);
        const double half = sn(form, 0.5 * th);
        return 2.0 * s.g * s.dg * 4.0 * kPi * half * half;
    };
    std::vector<GSample> out;
    const auto& samples = solution.samples();
    out.reserve(samples.size());
    double G = 0.0;
    out.push_back({samples.front().theta, 0.0});
    for (std::size_t i = 1; i < samples.size(); ++i) {
        G += Rule::integrate(integrand, samples[i - 1].theta, samples[i].theta);
        out.push_back({samples[i].theta, G});
    }
    return out;
}

}  // namespace robincap
