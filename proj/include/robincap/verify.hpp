#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace robincap {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool allPassed() const;
    std::vector<const CheckResult*> failures() const;
    /// Compact JSON document with one entry per check.
    std::string toJson() const;
};

/// Suite names accepted by runSuite.
const std::vector<std::string>& suiteNames();

/// Runs "geometry", "ode", "eigen", "regions", "lab" or "all".
VerifyReport runSuite(const std::string& suite, std::uint64_t seed);

/// Deterministic uniform draws from a 64-bit Mersenne Twister.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed);
    double uniform(double lo, double hi);
    int integer(int lo, int hi);

private:
    std::mt19937_64 rng_;
};

}  // namespace robincap
