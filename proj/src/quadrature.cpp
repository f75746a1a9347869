#include "robincap/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "robincap/errors.hpp"

namespace robincap {

namespace {
double composite(const std::function<double(double)>& f, double a, double b, int panels) {
    using Rule = boost::math::quadrature::gauss<double, 64>;
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) sum += Rule::integrate(f, a + i * h, a + (i + 1) * h);
    return sum;
}
}  // namespace

double panelIntegrate(const std::function<double(double)>& f, double a, double b, double relTol, double absTol,
                      int maxPanels) {
    if (a == b) return 0.0;
    double prev = composite(f, a, b, 1);
    for (int panels = 2; panels <= maxPanels; panels *= 2) {
        const double next = composite(f, a, b, panels);
        if (std::abs(next - prev) <= std::max(relTol * std::abs(next), absTol)) return next;
        prev = next;
    }
    throw SolverError(SolverFailure::QuadratureNonConvergence,
                      "Gauss-Legendre panels did not converge on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]",
                      b);
}

double periodicTrapezoid(const std::function<double(double)>& f, int n) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += f(2.0 * std::numbers::pi * j / n);
    return sum * 2.0 * std::numbers::pi / n;
}

}  // namespace robincap
