#include "robincap/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "robincap/errors.hpp"
#include "robincap/export.hpp"
#include "robincap/verify.hpp"

namespace robincap {

namespace {

constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WriteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    std::string path;
    std::string format = "csv";
};

struct Artifact {
    std::string ext;
    std::string content;
};

void addOutput(CLI::App* sub, Output& o, const std::string& formats) {
    sub->add_option("--out", o.path, "Output file (stem when several formats are requested)");
    sub->add_option("--format", o.format, "Output format: " + formats + " (comma-separated for several)")
        ->capture_default_str();
}

std::vector<std::string> splitList(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<std::string> parseFormats(const std::string& text, std::initializer_list<const char*> allowed) {
    auto list = splitList(text);
    if (list.empty()) throw UsageError("--format must name at least one format");
    for (const auto& f : list) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return f == a; })) {
            throw UsageError("format '" + f + "' is not available for this command");
        }
    }
    return list;
}

double parseNumber(const std::string& text) {
    std::string s = text;
    double sign = 1.0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        if (s[0] == '-') sign = -1.0;
        s.erase(0, 1);
    }
    // Accept multiples of pi such as "2pi" or "pi".
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        const std::string head = s.substr(0, s.size() - 2);
        return sign * kPi * (head.empty() ? 1.0 : parseNumber(head));
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return sign * v;
    } catch (const std::exception&) {
        throw UsageError("cannot read a number from '" + text + "'");
    }
}

std::pair<double, double> parseRange(const std::string& text, const char* flag) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        const double v = parseNumber(text);
        return {v, v};
    }
    const double lo = parseNumber(text.substr(0, colon));
    const double hi = parseNumber(text.substr(colon + 1));
    if (!(lo <= hi)) throw UsageError(std::string(flag) + " range must satisfy lo <= hi");
    return {lo, hi};
}

std::pair<int, int> parseGrid(const std::string& text) {
    const auto x = text.find('x');
    auto count = [&](const std::string& part) {
        try {
            std::size_t used = 0;
            const long v = std::stol(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            return v;
        } catch (const std::exception&) {
            throw UsageError("cannot read grid size '" + text + "'");
        }
    };
    const long a = count(x == std::string::npos ? text : text.substr(0, x));
    const long b = x == std::string::npos ? a : count(text.substr(x + 1));
    if (a < 1 || b < 1) throw UsageError("grid '" + text + "' is empty");
    if (a > 100000 || b > 100000) throw UsageError("grid '" + text + "' is too large");
    return {static_cast<int>(a), static_cast<int>(b)};
}

void requirePositive(double v, const char* flag) {
    if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(std::string(flag) + " must be positive");
}

void writeFile(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw WriteError("cannot open '" + path.string() + "' for writing");
    f << content;
    f.close();
    if (!f) throw WriteError("failed writing '" + path.string() + "'");
}

void emit(const std::string& command, const std::vector<Artifact>& artifacts, const Output& o, std::ostream& out,
          std::ostream& err) {
    std::vector<std::filesystem::path> targets;
    if (!o.path.empty()) {
        if (artifacts.size() == 1) {
            targets.emplace_back(o.path);
        } else {
            for (const auto& a : artifacts) targets.push_back(std::filesystem::path(o.path).replace_extension(a.ext));
        }
    } else if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
        for (const auto& a : artifacts) targets.push_back(std::filesystem::path(dir) / (command + "." + a.ext));
    } else {
        if (artifacts.size() != 1) throw UsageError("several formats need --out or " + std::string(kOutputDirEnv));
        out << artifacts.front().content;
        return;
    }
    for (std::size_t i = 0; i < artifacts.size(); ++i) {
        writeFile(targets[i], artifacts[i].content);
        err << "wrote " << targets[i].string() << "\n";
    }
}

template <class Svg>
std::vector<Artifact> render(const Table& table, const std::vector<std::string>& formats, Svg&& svg) {
    std::vector<Artifact> out;
    for (const auto& f : formats) {
        if (f == "csv") out.push_back({"csv", toCsv(table)});
        if (f == "json") out.push_back({"json", toJson(table)});
        if (f == "svg") out.push_back({"svg", svg(table)});
    }
    return out;
}

std::vector<Artifact> render(const Table& table, const std::vector<std::string>& formats) {
    return render(table, formats, [](const Table&) -> std::string { throw UsageError("svg is not available"); });
}

}  // namespace

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Robin eigenvalues on constant-curvature geodesic disks", "robincap"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    // regions
    Output regionsOut;
    std::string regionsT = "-15:" + formatNumber(4.0 * kPi * (1.0 - 1e-4));
    std::string regionsBeta = "-2pi:7";
    std::string regionsGrid = "300x200";
    auto* regions = app.add_subcommand("regions", "Classify a (t, beta) grid and write the region map");
    regions->add_option("--t", regionsT, "t range lo:hi")->capture_default_str();
    regions->add_option("--beta", regionsBeta, "beta range lo:hi")->capture_default_str();
    regions->add_option("--grid", regionsGrid, "Grid size NTxNB")->capture_default_str();
    addOutput(regions, regionsOut, "csv, json, svg");

    // contour
    Output contourOut;
    std::vector<double> contourLambdas;
    std::string contourGrid = "60";
    std::string contourT = "-15:" + formatNumber(4.0 * kPi * (1.0 - 1e-4));
    auto* contour = app.add_subcommand("contour", "Level curves of the lowest angular eigenvalue");
    contour->add_option("--lambda", contourLambdas, "Eigenvalue levels (repeatable)");
    contour->add_option("--grid", contourGrid, "t-samples per half")->capture_default_str();
    contour->add_option("--t", contourT, "t range lo:hi")->capture_default_str();
    addOutput(contour, contourOut, "csv, json, svg");

    // mode-map
    Output modeOut;
    std::string modeGrid = "40x40";
    std::string modeAlpha = "-6:4";
    double modeTheta = kMaxSphericalTheta;
    double modeTol = 1e-10;
    auto* modeMap = app.add_subcommand("mode-map", "Angular/radial mode of the second eigenvalue on spherical caps");
    modeMap->add_option("--grid", modeGrid, "Grid size NTHETAxNALPHA")->capture_default_str();
    modeMap->add_option("--alpha", modeAlpha, "alpha range lo:hi")->capture_default_str();
    modeMap->add_option("--theta", modeTheta, "Largest aperture")->capture_default_str();
    modeMap->add_option("--tol", modeTol, "Eigenvalue tolerance")->capture_default_str();
    addOutput(modeMap, modeOut, "csv, json, svg");

    // eigen
    Output eigenOut;
    std::optional<int> eigenK;
    std::optional<double> eigenTheta, eigenT, eigenAlpha, eigenBeta;
    int eigenM = 1;
    int eigenCount = 3;
    double eigenTol = 1e-10;
    auto* eigen = app.add_subcommand("eigen", "Robin eigenvalues of one geodesic disk");
    eigen->add_option("--k", eigenK, "Curvature -1, 0 or 1");
    eigen->add_option("--theta", eigenTheta, "Geodesic radius");
    eigen->add_option("--t", eigenT, "Signed area coordinate (alternative to --theta)");
    eigen->add_option("--alpha", eigenAlpha, "Robin parameter");
    eigen->add_option("--beta", eigenBeta, "Scaled Robin parameter (alternative to --alpha)");
    eigen->add_option("--m", eigenM, "Angular index")->capture_default_str();
    eigen->add_option("--count", eigenCount, "Number of eigenvalues")->capture_default_str();
    eigen->add_option("--tol", eigenTol, "Eigenvalue tolerance")->capture_default_str();
    addOutput(eigen, eigenOut, "csv, json");

    // constants
    Output constantsOut;
    auto* constants = app.add_subcommand("constants", "Special constants n2, Theta2, t2, t3, n4, Theta4, t4");
    addOutput(constants, constantsOut, "csv, json");

    // lab
    Output labOut;
    std::string labMap = "identity";
    std::string labWeight = "sphere";
    double labRho = 1.0;
    std::optional<int> labK;
    double labBeta = 0.0;
    int labGrid = 64;
    auto* lab = app.add_subcommand("lab", "Area lemmas and transplantation for a weighted conformal domain");
    lab->add_option("--map", labMap, "identity | mobius:a=.. | rotation:a=.. | quadratic:eps=..")->capture_default_str();
    lab->add_option("--weight", labWeight, "sphere | flat | hyperbolic, optionally :delta=..")->capture_default_str();
    lab->add_option("--rho", labRho, "Radius of the source disk")->capture_default_str();
    lab->add_option("--k", labK, "Comparison curvature (defaults to the weight's)");
    lab->add_option("--beta", labBeta, "Scaled Robin parameter of the transplanted eigenfunction")->capture_default_str();
    lab->add_option("--grid", labGrid, "Radial grid points for the area profiles")->capture_default_str();
    addOutput(lab, labOut, "csv, json, svg");

    // verify
    Output verifyOut;
    verifyOut.format = "json";
    std::string verifySuite = "all";
    std::uint64_t verifySeed = 20240607;
    auto* verify = app.add_subcommand("verify", "Run property suites and report each invariant");
    verify->add_option("--suite", verifySuite, "geometry | ode | eigen | regions | lab | all")->capture_default_str();
    verify->add_option("--seed", verifySeed, "Seed for the randomized draws")->capture_default_str();
    addOutput(verify, verifyOut, "json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (regions->parsed()) {
            const auto formats = parseFormats(regionsOut.format, {"csv", "json", "svg"});
            const auto [nt, nb] = parseGrid(regionsGrid);
            RegionsConfig cfg;
            std::tie(cfg.tMin, cfg.tMax) = parseRange(regionsT, "--t");
            std::tie(cfg.betaMin, cfg.betaMax) = parseRange(regionsBeta, "--beta");
            if (cfg.tMax > 4.0 * kPi * (1.0 - 1e-4) * (1.0 + 1e-12)) throw UsageError("--t exceeds 4pi(1-1e-4)");
            cfg.nt = nt;
            cfg.nb = nb;
            const auto table = regionsTable(cfg);
            emit("regions", render(table, formats, regionsSvg), regionsOut, out, err);
        } else if (contour->parsed()) {
            const auto formats = parseFormats(contourOut.format, {"csv", "json", "svg"});
            const auto [n, unused] = parseGrid(contourGrid);
            (void)unused;
            const auto& c = RegionModel::shared().constants();
            ContourConfig cfg;
            cfg.samplesPerHalf = n;
            std::tie(cfg.tMin, cfg.tMax) = parseRange(contourT, "--t");
            cfg.lambdas = contourLambdas.empty() ? defaultContourLambdas(c) : contourLambdas;
            const auto table = contourTable(cfg, c);
            emit("contour", render(table, formats, contourSvg), contourOut, out, err);
        } else if (modeMap->parsed()) {
            const auto formats = parseFormats(modeOut.format, {"csv", "json", "svg"});
            requirePositive(modeTol, "--tol");
            const auto [nTheta, nAlpha] = parseGrid(modeGrid);
            ModeMapConfig cfg;
            cfg.nTheta = nTheta;
            cfg.nAlpha = nAlpha;
            cfg.thetaMax = modeTheta;
            std::tie(cfg.alphaMin, cfg.alphaMax) = parseRange(modeAlpha, "--alpha");
            cfg.options.lambdaTolerance = modeTol;
            SpaceForm::spherical().requireTheta(modeTheta, "--theta");
            const auto table = modeMapTable(cfg);
            emit("mode-map", render(table, formats, modeMapSvg), modeOut, out, err);
        } else if (eigen->parsed()) {
            const auto formats = parseFormats(eigenOut.format, {"csv", "json"});
            requirePositive(eigenTol, "--tol");
            if (eigenTheta.has_value() == eigenT.has_value()) throw UsageError("give exactly one of --theta and --t");
            if (eigenAlpha && eigenBeta) throw UsageError("give at most one of --alpha and --beta");
            if (eigenM < 0) throw UsageError("--m must be nonnegative");
            if (eigenCount < 1) throw UsageError("--count must be at least 1");
            SpaceForm form = SpaceForm::fromCurvature(eigenK.value_or(1));
            double theta = 0.0;
            if (eigenT) {
                form = eigenK ? SpaceForm::fromCurvature(*eigenK) : formForT(*eigenT);
                if (form.isFlat()) throw UsageError("t carries no radius for K = 0; use --theta");
                if (formForT(*eigenT) != form) throw UsageError("the sign of --t does not match --k");
                theta = thetaFromT(form, *eigenT);
            } else {
                theta = *eigenTheta;
            }
            form.requireTheta(theta, "--theta");
            const auto cap = capCoordinates(form, theta);
            const double alpha = eigenBeta ? *eigenBeta / cap.boundaryLength : eigenAlpha.value_or(0.0);
            EigenOptions opts;
            opts.lambdaTolerance = eigenTol;
            const auto eig = eigenvaluesForRobin(form, theta, eigenM, alpha, eigenCount, opts);
            Table table;
            table.columns = {"K", "theta", "t", "m", "k", "lambda", "alpha", "beta", "residual"};
            for (const auto& e : eig) {
                table.add({static_cast<double>(form.curvature()), theta, cap.t, static_cast<double>(e.m),
                           static_cast<double>(e.k), e.lambda, alpha, alpha * cap.boundaryLength, e.residual});
            }
            emit("eigen", render(table, formats), eigenOut, out, err);
        } else if (constants->parsed()) {
            const auto formats = parseFormats(constantsOut.format, {"csv", "json"});
            emit("constants", render(constantsTable(solveSpecialConstants()), formats), constantsOut, out, err);
        } else if (lab->parsed()) {
            const auto formats = parseFormats(labOut.format, {"csv", "json", "svg"});
            requirePositive(labRho, "--rho");
            if (labGrid < 2) throw UsageError("--grid must be at least 2");
            const auto domain = WeightedDomain::make(labMap, labWeight, labRho, labK);
            const auto table = labTable(domain, labBeta, labGrid);
            emit("lab", render(table, formats, labSvg), labOut, out, err);
        } else if (verify->parsed()) {
            parseFormats(verifyOut.format, {"json"});
            if (verifySuite != "all" &&
                std::find(suiteNames().begin(), suiteNames().end(), verifySuite) == suiteNames().end()) {
                throw UsageError("unknown suite '" + verifySuite + "'");
            }
            const auto report = runSuite(verifySuite, verifySeed);
            emit("verify", {{"json", report.toJson()}}, verifyOut, out, err);
            for (const auto* f : report.failures()) {
                err << "FAILED " << f->suite << "/" << f->name << ": " << f->detail << "\n";
            }
            return report.allPassed() ? kExitSuccess : kExitVerification;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const WriteError& e) {
        err << "output error: " << e.what() << "\n";
        return kExitComputation;
    } catch (const std::exception& e) {
        err << "computation failed: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitSuccess;
}

}  // namespace robincap
