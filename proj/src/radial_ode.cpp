#include "robincap/radial_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "robincap/errors.hpp"

namespace robincap {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kMaxLogRho = 700.0;

struct HermiteBasis {
    double h0, h1, h2, h3, h4, h5;
    double d0, d1, d2, d3, d4, d5;
};

HermiteBasis hermite(double s) {
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    HermiteBasis b{};
    b.h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    b.h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    b.h2 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5);
    b.h3 = 1.0 - b.h0;
    b.h4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    b.h5 = 0.5 * (s3 - 2.0 * s4 + s5);
    b.d0 = -30.0 * s2 + 60.0 * s3 - 30.0 * s4;
    b.d1 = 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4;
    b.d2 = 0.5 * (2.0 * s - 9.0 * s2 + 12.0 * s3 - 5.0 * s4);
    b.d3 = -b.d0;
    b.d4 = -12.0 * s2 + 28.0 * s3 - 15.0 * s4;
    b.d5 = 0.5 * (3.0 * s2 - 8.0 * s3 + 5.0 * s4);
    return b;
}

double maxStepFor(double lambda) {
    return std::min(0.02, 0.1 / std::sqrt(std::abs(lambda) + 1.0));
}

void validate(const RadialProblem& p) {
    if (p.m < 0 || p.m > 2) throw DomainError("angular index m must be 0, 1 or 2");
    if (!std::isfinite(p.lambda)) throw DomainError("spectral parameter must be finite");
    p.form.requireTheta(p.thetaEnd, "radial problem");
    if (p.thetaEnd <= kSeriesStart) throw DomainError("geodesic radius is below the series launch point");
}

/// Prüfer system: x = (φ, ln ρ − m ln sn θ). Removing the θ^m growth keeps the
/// amplitude component smooth at the origin.
struct PruferSystem {
    SpaceForm form;
    int m;
    double lambda;

    void operator()(const std::array<double, 2>& x, std::array<double, 2>& dx, double theta) const {
        const double p = sn(form, theta);
        const double v = lambda * p - m * m / p;
        const double s = std::sin(x[0]);
        const double c = std::cos(x[0]);
        dx[0] = c * c / p + v * s * s;
        dx[1] = (1.0 / p - v) * s * c - m * ct(form, theta);
    }

    double logRho(const std::array<double, 2>& x, double theta) const {
        return x[1] + m * std::log(sn(form, theta));
    }
};

struct PhaseOnlySystem {
    SpaceForm form;
    double m2;
    double lambda;

    void operator()(const std::array<double, 1>& x, std::array<double, 1>& dx, double theta) const {
        const double p = sn(form, theta);
        const double s = std::sin(x[0]);
        const double c = std::cos(x[0]);
        dx[0] = c * c / p + (lambda * p - m2 / p) * s * s;
    }
};

/// Adaptive Dormand–Prince integration from t0 to t1 that lands exactly on t1.
template <class State, class System, class Observer>
void integrateTo(const System& sys, State& x, double t0, double t1, double hmax, Observer&& observe) {
    using Stepper = odeint::runge_kutta_dopri5<State>;
    auto stepper = odeint::make_controlled<Stepper>(kOdeAbsTol, kOdeRelTol);
    double t = t0;
    double dt = std::min(hmax, t0);
    while (t < t1) {
        dt = std::min(dt, hmax);
        bool last = false;
        if (t + dt >= t1) {
            dt = t1 - t;
            last = true;
        }
        const double before = t;
        const auto result = stepper.try_step(sys, x, t, dt);
        if (result == odeint::success) {
            if (last) t = t1;
            for (double v : x) {
                if (!std::isfinite(v)) {
                    throw SolverError(SolverFailure::Overflow, "non-finite state at theta = " + std::to_string(t), t);
                }
            }
            observe(t, x);
        } else if (dt < 1e-14 * std::max(1.0, before)) {
            throw SolverError(SolverFailure::StepUnderflow,
                              "step size underflow at theta = " + std::to_string(before), before);
        }
    }
}

std::array<double, 2> initialPrufer(SpaceForm form, int m, double lambda) {
    const double th = kSeriesStart;
    const double c = frobeniusCoefficient(form, m, lambda);
    const double lead = std::pow(th, m);
    const double g = lead * (1.0 + c * th * th);
    const double dg = m == 0 ? 2.0 * c * th : (m * lead / th) * (1.0 + c * (m + 2.0) / m * th * th);
    const double p = sn(form, th);
    return {std::atan2(g, p * dg), 0.5 * std::log(g * g + p * dg * p * dg) - m * std::log(p)};
}

RadialSample seriesSample(SpaceForm form, int m, double lambda, double theta) {
    const double c = frobeniusCoefficient(form, m, lambda);
    const double lead = std::pow(theta, m);
    RadialSample s;
    s.theta = theta;
    s.g = lead * (1.0 + c * theta * theta);
    s.dg = m == 0 ? 2.0 * c * theta : m * std::pow(theta, m - 1) + c * (m + 2.0) * lead * theta;
    return s;
}

}  // namespace

double frobeniusCoefficient(SpaceForm form, int m, double lambda) {
    return form.curvature() * m / 12.0 - lambda / (4.0 * (m + 1.0));
}

RadialSolution::RadialSolution(RadialProblem problem, std::vector<RadialSample> samples)
    : problem_(problem), samples_(std::move(samples)) {
    if (samples_.size() < 2) throw DomainError("a radial solution needs at least two samples");
    d2g_.reserve(samples_.size());
    for (const auto& s : samples_) d2g_.push_back(curvatureTerm(s));
}

double RadialSolution::curvatureTerm(const RadialSample& s) const {
    const auto& p = problem_;
    if (s.theta <= 0.0) {
        if (p.m == 0) return -0.5 * p.lambda * s.g;
        return p.m == 2 ? 2.0 : 0.0;
    }
    const double q = sn(p.form, s.theta);
    return -ct(p.form, s.theta) * s.dg - (p.lambda - p.m * p.m / (q * q)) * s.g;
}

double RadialSolution::secondDerivative(double theta) const {
    return curvatureTerm(at(theta));
}

RadialSample RadialSolution::at(double theta) const {
    const double lo = samples_.front().theta;
    const double hi = samples_.back().theta;
    if (!(theta >= lo - 1e-14 && theta <= hi + 1e-12 * std::max(1.0, hi))) {
        throw DomainError("query point " + std::to_string(theta) + " lies outside the sampled interval");
    }
    theta = std::clamp(theta, lo, hi);
    auto it = std::upper_bound(samples_.begin(), samples_.end(), theta,
                               [](double v, const RadialSample& s) { return v < s.theta; });
    std::size_t i = it == samples_.begin() ? 0 : static_cast<std::size_t>(it - samples_.begin()) - 1;
    if (i + 1 >= samples_.size()) i = samples_.size() - 2;
    const auto& a = samples_[i];
    const auto& b = samples_[i + 1];
    if (theta == a.theta) return a;
    if (theta == b.theta) return b;
    const double h = b.theta - a.theta;
    const auto w = hermite((theta - a.theta) / h);
    RadialSample r;
    r.theta = theta;
    r.g = a.g * w.h0 + h * a.dg * w.h1 + h * h * d2g_[i] * w.h2 + b.g * w.h3 + h * b.dg * w.h4 +
          h * h * d2g_[i + 1] * w.h5;
    r.dg = (a.g * w.d0 + h * a.dg * w.d1 + h * h * d2g_[i] * w.d2 + b.g * w.d3 + h * b.dg * w.d4 +
            h * h * d2g_[i + 1] * w.d5) / h;
    return r;
}

RadialSolution RadialSolution::scaled(double c) const {
    auto copy = samples_;
    for (auto& s : copy) {
        s.g *= c;
        s.dg *= c;
    }
    RadialSolution out(problem_, std::move(copy));
    for (std::size_t i = 0; i < d2g_.size(); ++i) out.d2g_[i] = c * d2g_[i];
    return out;
}

RadialSolution integrateRadial(const RadialProblem& problem) {
    validate(problem);
    const SpaceForm form = problem.form;
    const int m = problem.m;
    std::vector<RadialSample> samples;
    samples.reserve(256);
    RadialSample origin;
    origin.g = m == 0 ? 1.0 : 0.0;
    origin.dg = m == 1 ? 1.0 : 0.0;
    samples.push_back(origin);
    samples.push_back(seriesSample(form, m, problem.lambda, kSeriesStart));

    PruferSystem sys{form, m, problem.lambda};
    auto x = initialPrufer(form, m, problem.lambda);
    integrateTo(sys, x, kSeriesStart, problem.thetaEnd, maxStepFor(problem.lambda),
                [&](double t, const std::array<double, 2>& s) {
                    const double lr = sys.logRho(s, t);
                    if (lr > kMaxLogRho) {
                        throw SolverError(SolverFailure::Overflow,
                                          "solution amplitude overflows at theta = " + std::to_string(t), t);
                    }
                    const double rho = std::exp(lr);
                    RadialSample r;
                    r.theta = t;
                    r.g = rho * std::sin(s[0]);
                    r.dg = rho * std::cos(s[0]) / sn(form, t);
                    samples.push_back(r);
                });
    return RadialSolution(problem, std::move(samples));
}

RadialSolution continueRadial(const RadialProblem& problem, const RadialSample& start) {
    validate(problem);
    if (!(start.theta > 0.0 && start.theta < problem.thetaEnd)) {
        throw DomainError("continuation must start inside (0, thetaEnd)");
    }
    const SpaceForm form = problem.form;
    std::vector<RadialSample> samples{start};
    const double p0 = sn(form, start.theta);
    PruferSystem sys{form, problem.m, problem.lambda};
    std::array<double, 2> x{std::atan2(start.g, p0 * start.dg),
                            0.5 * std::log(start.g * start.g + p0 * start.dg * p0 * start.dg) -
                                problem.m * std::log(p0)};
    integrateTo(sys, x, start.theta, problem.thetaEnd, maxStepFor(problem.lambda),
                [&](double t, const std::array<double, 2>& s) {
                    const double lr = sys.logRho(s, t);
                    if (lr > kMaxLogRho) {
                        throw SolverError(SolverFailure::Overflow,
                                          "solution amplitude overflows at theta = " + std::to_string(t), t);
                    }
                    const double rho = std::exp(lr);
                    samples.push_back({t, rho * std::sin(s[0]), rho * std::cos(s[0]) / sn(form, t)});
                });
    return RadialSolution(problem, std::move(samples));
}

double pruferPhase(SpaceForm form, int m, double lambda, double thetaEnd) {
    validate({form, m, lambda, thetaEnd});
    PhaseOnlySystem sys{form, double(m * m), lambda};
    std::array<double, 1> x{initialPrufer(form, m, lambda)[0]};
    integrateTo(sys, x, kSeriesStart, thetaEnd, 0.25, [](double, const std::array<double, 1>&) {});
    return x[0];
}

double logDerivativeAt(const RadialSolution& solution, double theta) {
    const auto s = solution.at(theta);
    double scale = 0.0;
    for (const auto& v : solution.samples()) scale = std::max(scale, std::abs(v.g));
    if (!(std::abs(s.g) > 1e-10 * scale)) {
        throw SolverError(SolverFailure::ZeroOfProfile,
                          "g vanishes at theta = " + std::to_string(theta), theta);
    }
    return s.dg / s.g;
}

const char* toString(ShapeClass c) {
    switch (c) {
        case ShapeClass::Up: return "Up";
        case ShapeClass::UpDown: return "UpDown";
        case ShapeClass::UpDownUp: return "UpDownUp";
        case ShapeClass::Other: return "Other";
    }
    return "Other";
}

std::vector<double> scanGrid(const RadialSolution& solution, int perInterval) {
    const auto& s = solution.samples();
    std::vector<double> grid;
    grid.reserve(s.size() * perInterval + 1);
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double a = s[i].theta, b = s[i + 1].theta;
        for (int j = 0; j < perInterval; ++j) grid.push_back(a + (b - a) * j / perInterval);
    }
    grid.push_back(s.back().theta);
    return grid;
}

ShapeProfile shapeProfile(const RadialSolution& solution) {
    ShapeProfile out;
    const auto grid = scanGrid(solution);
    std::vector<double> dg(grid.size());
    double maxAbs = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto v = solution.at(grid[i]);
        if (!(v.g > 0.0)) {
            out.diagnostics = "g is not positive at theta = " + std::to_string(grid[i]);
            return out;
        }
        dg[i] = v.dg;
        maxAbs = std::max(maxAbs, std::abs(v.dg));
    }
    out.tolerance = 1e-10 * maxAbs;
    out.minDerivative = dg[0];
    out.minDerivativeAt = grid[0];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (dg[i] < out.minDerivative) {
            out.minDerivative = dg[i];
            out.minDerivativeAt = grid[i];
        }
    }

    // Compress the sign sequence, remembering the last index of each run.
    struct Run {
        int sign;
        std::size_t first, last;
    };
    std::vector<Run> runs;
    // g′(Θ) is pinned by the boundary condition and inherits the eigenvalue error.
    const double endTolerance = std::max(out.tolerance, kEndpointSignTolerance * maxAbs);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double tol = (i + 1 == grid.size()) ? endTolerance : out.tolerance;
        const int sgn = dg[i] > tol ? 1 : (dg[i] < -tol ? -1 : 0);
        if (sgn == 0) continue;
        if (!runs.empty() && runs.back().sign == sgn) {
            runs.back().last = i;
        } else {
            runs.push_back({sgn, i, i});
        }
    }
    auto locate = [&](std::size_t i, std::size_t j) {
        double a = grid[i], b = grid[j];
        auto f = [&](double th) { return solution.derivative(th); };
        double fa = dg[i], fb = dg[j];
        // Walk to the tightest sign-changing pair among the intermediate scan points.
        for (std::size_t k = i + 1; k < j; ++k) {
            if ((dg[k] > 0.0) == (fa > 0.0)) {
                a = grid[k];
                fa = dg[k];
            } else {
                b = grid[k];
                fb = dg[k];
                break;
            }
        }
        if (fa == 0.0) return a;
        if (fb == 0.0) return b;
        boost::uintmax_t iters = 200;
        auto r = boost::math::tools::toms748_solve(
            f, a, b, fa, fb, [](double x, double y) { return std::abs(x - y) <= 1e-12; }, iters);
        return 0.5 * (r.first + r.second);
    };

    if (runs.empty() || runs.front().sign < 0) {
        out.diagnostics = "g' is not initially positive";
        return out;
    }
    if (runs.size() == 1) {
        out.shape = ShapeClass::Up;
    } else if (runs.size() == 2) {
        out.shape = ShapeClass::UpDown;
        out.thetaMax = locate(runs[0].last, runs[1].first);
        out.thetaMin = solution.thetaEnd();
    } else if (runs.size() == 3) {
        out.shape = ShapeClass::UpDownUp;
        out.thetaMax = locate(runs[0].last, runs[1].first);
        out.thetaMin = locate(runs[1].last, runs[2].first);
    } else {
        out.diagnostics = "g' changes sign " + std::to_string(runs.size() - 1) + " times";
    }
    return out;
}

}  // namespace robincap
