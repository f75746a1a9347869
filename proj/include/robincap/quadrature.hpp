#pragma once

#include <functional>

namespace robincap {

/// Composite 64-point Gauss–Legendre on [a, b]; panels double until two
/// successive estimates agree to relTol (relative, with an absolute floor absTol).
double panelIntegrate(const std::function<double(double)>& f, double a, double b, double relTol = 1e-9,
                      double absTol = 1e-14, int maxPanels = 256);

/// Trapezoid rule over one period [0, 2π) with n equally spaced nodes.
double periodicTrapezoid(const std::function<double(double)>& f, int n = 256);

}  // namespace robincap
