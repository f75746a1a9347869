#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "robincap/conformal_lab.hpp"
#include "robincap/eigensolver.hpp"
#include "robincap/regions.hpp"

namespace robincap {

using Cell = std::variant<std::monostate, double, std::string>;

/// Column-ordered result table; every CSV, JSON and SVG artifact is rendered from one of these.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    std::optional<std::size_t> column(const std::string& name) const;
    double number(std::size_t row, const std::string& name) const;
    std::string text(std::size_t row, const std::string& name) const;
};

/// 12 significant digits, "%.12g".
std::string formatNumber(double v);
std::string toCsv(const Table& table);
/// {"columns": [...], "rows": [{...}, ...]} with numbers rounded exactly as in the CSV.
std::string toJson(const Table& table);

struct RegionsConfig {
    double tMin = -15.0;
    double tMax = 4.0 * std::numbers::pi * (1.0 - 1e-4);
    double betaMin = -2.0 * std::numbers::pi;
    double betaMax = 7.0;
    int nt = 300;
    int nb = 200;
    /// Samples per overlay curve.
    int curveSamples = 120;
};

/// Columns kind,t,beta,label. Kinds: point, curve:beta2, curve:beta4, curve:guarantee,
/// curve:fl_upper, marker:t2, marker:t3, marker:t4, marker:corner.
Table regionsTable(const RegionsConfig& config, const RegionModel& model = RegionModel::shared());
std::string regionsSvg(const Table& table);

struct ContourConfig {
    std::vector<double> lambdas;
    int samplesPerHalf = 60;
    double tMin = -15.0;
    double tMax = 4.0 * std::numbers::pi * (1.0 - 1e-4);
};

/// Default λ list for the contour figure, including n₂(n₂+1).
std::vector<double> defaultContourLambdas(const SpecialConstants& constants);
/// Columns lambda,theta,t,beta. The λ = 0 level is written as the exact line β = −2π.
Table contourTable(const ContourConfig& config, const SpecialConstants& constants);
std::string contourSvg(const Table& table);

struct ModeMapConfig {
    int nTheta = 40;
    int nAlpha = 40;
    double thetaMax = kMaxSphericalTheta;
    double alphaMin = -6.0;
    double alphaMax = 4.0;
    EigenOptions options;
};

/// Columns theta,alpha,lambda2,mode,lambda_angular,lambda_radial2,lambda_m2 for K = +1.
Table modeMapTable(const ModeMapConfig& config);
std::string modeMapSvg(const Table& table);

Table constantsTable(const SpecialConstants& constants);

/// Columns quantity,r,value: area profile rows (A, B, ratio) followed by summary rows.
Table labTable(const WeightedDomain& domain, double beta, int gridPoints = 64);
std::string labSvg(const Table& table);

}  // namespace robincap
