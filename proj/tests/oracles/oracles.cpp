#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

double besselJ(int n, double x) {
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    double term = std::pow(0.5 * x, n) / fact;
    double sum = term;
    for (int k = 1; k < 30; ++k) {
        term *= -(0.25 * x * x) / (k * double(k + n));
        sum += term;
    }
    return sum;
}

double besselJPrime(int n, double x) {
    // J_n′ = (J_{n−1} − J_{n+1})/2, with J_{−1} = −J_1.
    const double below = n == 0 ? -besselJ(1, x) : besselJ(n - 1, x);
    return 0.5 * (below - besselJ(n + 1, x));
}

double besselJ1PrimeFirstZero() {
    double a = 1.0, b = 3.0;
    if (besselJPrime(1, a) * besselJPrime(1, b) >= 0.0) throw std::runtime_error("bad Bessel bracket");
    for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
        const double mid = 0.5 * (a + b);
        if ((besselJPrime(1, a) > 0.0) == (besselJPrime(1, mid) > 0.0)) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

double ferrersP1(int l, double x) {
    const double s = std::sqrt(1.0 - x * x);
    double pPrev = -s;          // P_1^1
    if (l == 1) return pPrev;
    double p = -3.0 * x * s;    // P_2^1
    for (int k = 2; k < l; ++k) {
        const double next = ((2.0 * k + 1.0) * x * p - (k + 1.0) * pPrev) / k;
        pPrev = p;
        p = next;
    }
    return p;
}

double legendreMinusOne(double n, double theta) {
    const double z = std::sin(0.5 * theta) * std::sin(0.5 * theta);
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 2000000; ++k) {
        term *= (n + 1.0 + k) * (-n + k) / ((2.0 + k) * (k + 1.0)) * z;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && k > 5) break;
    }
    return std::tan(0.5 * theta) * sum;
}

Pair sphereRadialRK4(double lambda, double thetaEnd, int steps) {
    const double t0 = 1e-4;
    const double c = 1.0 / 12.0 - lambda / 8.0;
    double y0 = t0 * (1.0 + c * t0 * t0);
    double y1 = 1.0 + 3.0 * c * t0 * t0;
    auto f = [lambda](double t, double g, double dg, double& a, double& b) {
        const double s = std::sin(t);
        a = dg;
        b = -std::cos(t) / s * dg - (lambda - 1.0 / (s * s)) * g;
    };
    const double h = (thetaEnd - t0) / steps;
    double t = t0;
    for (int i = 0; i < steps; ++i) {
        double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
        f(t, y0, y1, k1a, k1b);
        f(t + 0.5 * h, y0 + 0.5 * h * k1a, y1 + 0.5 * h * k1b, k2a, k2b);
        f(t + 0.5 * h, y0 + 0.5 * h * k2a, y1 + 0.5 * h * k2b, k3a, k3b);
        f(t + h, y0 + h * k3a, y1 + h * k3b, k4a, k4b);
        y0 += h / 6.0 * (k1a + 2 * k2a + 2 * k3a + k4a);
        y1 += h / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b);
        t = t0 + (i + 1) * h;
    }
    return {y0, y1};
}

double frontLoadedSimpson(double n, double thetaMin, int intervals) {
    if (intervals % 2) ++intervals;
    const double gm = legendreMinusOne(n, thetaMin);
    auto f = [&](double t) {
        const double g = legendreMinusOne(n, t);
        return 0.25 * (gm * gm - g * g) * std::sin(t);
    };
    const double h = thetaMin / intervals;
    double sum = f(0.0) + f(thetaMin);
    for (int i = 1; i < intervals; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace oracle
