#include "robincap/export.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <set>

#include <json.hpp>

#include "robincap/errors.hpp"
#include "robincap/parallel.hpp"

namespace robincap {

namespace {
constexpr double kPi = std::numbers::pi;
}

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw Error("table row has the wrong number of cells");
    rows.push_back(std::move(row));
}

std::optional<std::size_t> Table::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) return std::nullopt;
    return static_cast<std::size_t>(it - columns.begin());
}

double Table::number(std::size_t row, const std::string& name) const {
    const auto c = column(name);
    if (!c) throw Error("no column " + name);
    const auto* v = std::get_if<double>(&rows.at(row)[*c]);
    return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

std::string Table::text(std::size_t row, const std::string& name) const {
    const auto c = column(name);
    if (!c) throw Error("no column " + name);
    const auto* v = std::get_if<std::string>(&rows.at(row)[*c]);
    return v ? *v : std::string();
}

std::string formatNumber(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

namespace {

std::string csvEscape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string cellText(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return formatNumber(*d);
    if (const auto* s = std::get_if<std::string>(&c)) return csvEscape(*s);
    return {};
}

nlohmann::ordered_json cellJson(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return std::stod(formatNumber(*d));
    }
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return nullptr;
}

}  // namespace

std::string toCsv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cellText(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string toJson(const Table& table) {
    nlohmann::ordered_json doc;
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cellJson(row[i]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- SVG canvas

namespace {

std::string fixed(double v, int digits = 2) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s = buf;
    if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
    return s;
}

std::string escapeXml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += ch;
        }
    }
    return out;
}

class Canvas {
public:
    Canvas(double x0, double x1, double y0, double y1, std::string title, std::string xLabel, std::string yLabel)
        : x0_(x0), x1_(x1 > x0 ? x1 : x0 + 1.0), y0_(y0), y1_(y1 > y0 ? y1 : y0 + 1.0), title_(std::move(title)),
          xLabel_(std::move(xLabel)), yLabel_(std::move(yLabel)) {}

    double px(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * kPlotW; }
    double py(double y) const { return kTop + (y1_ - y) / (y1_ - y0_) * kPlotH; }

    void open(const std::string& id, const std::string& attrs) {
        body_ += "<g id=\"" + id + "\" " + attrs + ">\n";
    }
    void close() { body_ += "</g>\n"; }

    void rect(double xa, double xb, double ya, double yb) {
        const double l = px(std::min(xa, xb)), r = px(std::max(xa, xb));
        const double t = py(std::max(ya, yb)), b = py(std::min(ya, yb));
        body_ += "<rect x=\"" + fixed(l) + "\" y=\"" + fixed(t) + "\" width=\"" + fixed(r - l) + "\" height=\"" +
                 fixed(b - t) + "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& attrs) {
        if (pts.size() < 2) return;
        body_ += "<polyline fill=\"none\" " + attrs + " points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ += ' ';
            body_ += fixed(px(pts[i].first)) + "," + fixed(py(pts[i].second));
        }
        body_ += "\"/>\n";
    }

    void circle(double x, double y, double radius, const std::string& attrs) {
        body_ += "<circle cx=\"" + fixed(px(x)) + "\" cy=\"" + fixed(py(y)) + "\" r=\"" + fixed(radius) + "\" " +
                 attrs + "/>\n";
    }

    void vline(double x, const std::string& attrs) {
        body_ += "<line x1=\"" + fixed(px(x)) + "\" y1=\"" + fixed(py(y1_)) + "\" x2=\"" + fixed(px(x)) + "\" y2=\"" +
                 fixed(py(y0_)) + "\" " + attrs + "/>\n";
    }

    void text(double x, double y, const std::string& s, const std::string& attrs = "") {
        body_ += "<text x=\"" + fixed(px(x)) + "\" y=\"" + fixed(py(y)) + "\" " + attrs + ">" + escapeXml(s) +
                 "</text>\n";
    }

    void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
        double y = kTop;
        legend_ += "<g id=\"legend\" font-size=\"12\">\n";
        for (const auto& [name, colour] : entries) {
            legend_ += "<rect x=\"" + fixed(kLeft + kPlotW + 16) + "\" y=\"" + fixed(y) + "\" width=\"14\" height=\"14\" fill=\"" +
                     colour + "\"/>\n";
            legend_ += "<text x=\"" + fixed(kLeft + kPlotW + 36) + "\" y=\"" + fixed(y + 12) + "\">" + escapeXml(name) +
                     "</text>\n";
            y += 20;
        }
        legend_ += "</g>\n";
    }

    std::string finish() const {
        std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
               fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " + fixed(kHeight, 0) +
               "\" font-family=\"sans-serif\">\n";
        out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out += "<defs><clipPath id=\"plot\"><rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" +
               fixed(kPlotW) + "\" height=\"" + fixed(kPlotH) + "\"/></clipPath></defs>\n";
        out += "<text x=\"" + fixed(kLeft) + "\" y=\"24\" font-size=\"16\">" + escapeXml(title_) + "</text>\n";
        out += "<g clip-path=\"url(#plot)\">\n" + body_ + "</g>\n";
        out += axes();
        out += legend_;
        out += "</svg>\n";
        return out;
    }

private:
    static constexpr double kWidth = 960, kHeight = 640, kLeft = 70, kTop = 40, kPlotW = 740, kPlotH = 540;

    static std::vector<double> ticks(double lo, double hi) {
        const double raw = (hi - lo) / 8.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0}) {
            step = m * mag;
            if (step >= raw) break;
        }
        std::vector<double> out;
        for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) out.push_back(v);
        return out;
    }

    std::string axes() const {
        std::string s = "<g id=\"axes\" stroke=\"black\" font-size=\"11\">\n";
        s += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(kPlotW) + "\" height=\"" +
             fixed(kPlotH) + "\" fill=\"none\"/>\n";
        for (double v : ticks(x0_, x1_)) {
            s += "<line x1=\"" + fixed(px(v)) + "\" y1=\"" + fixed(kTop + kPlotH) + "\" x2=\"" + fixed(px(v)) +
                 "\" y2=\"" + fixed(kTop + kPlotH + 5) + "\"/>\n";
            s += "<text stroke=\"none\" text-anchor=\"middle\" x=\"" + fixed(px(v)) + "\" y=\"" +
                 fixed(kTop + kPlotH + 18) + "\">" + formatNumber(std::abs(v) < 1e-12 ? 0.0 : v) + "</text>\n";
        }
        for (double v : ticks(y0_, y1_)) {
            s += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(py(v)) + "\" x2=\"" + fixed(kLeft) + "\" y2=\"" +
                 fixed(py(v)) + "\"/>\n";
            s += "<text stroke=\"none\" text-anchor=\"end\" x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(py(v) + 4) +
                 "\">" + formatNumber(std::abs(v) < 1e-12 ? 0.0 : v) + "</text>\n";
        }
        s += "<text stroke=\"none\" text-anchor=\"middle\" x=\"" + fixed(kLeft + kPlotW / 2) + "\" y=\"" +
             fixed(kHeight - 20) + "\" font-size=\"13\">" + escapeXml(xLabel_) + "</text>\n";
        s += "<text stroke=\"none\" text-anchor=\"middle\" x=\"18\" y=\"" + fixed(kTop + kPlotH / 2) +
             "\" font-size=\"13\" transform=\"rotate(-90 18 " + fixed(kTop + kPlotH / 2) + ")\">" + escapeXml(yLabel_) +
             "</text>\n";
        return s + "</g>\n";
    }

    double x0_, x1_, y0_, y1_;
    std::string title_, xLabel_, yLabel_;
    std::string body_;
    std::string legend_;
};

/// Smallest positive gap between sorted distinct values (fallback when only one value).
double spacing(const std::set<double>& values, double fallback) {
    double best = fallback;
    for (auto it = values.begin(); it != values.end() && std::next(it) != values.end(); ++it) {
        best = std::min(best, *std::next(it) - *it);
    }
    return best;
}

const char* regionColour(const std::string& label) {
    static const std::map<std::string, const char*> colours{
        {"BS-I", "#9ecae1"}, {"BS-II", "#6baed6"}, {"BS-III", "#4292c6"}, {"BS-IV", "#2171b5"}, {"BS-V", "#08519c"},
        {"FL", "#fdae6b"},   {"E-radial", "#e6550d"}, {"NA", "#d9d9d9"},  {"Unknown", "#f7f7f7"}};
    const auto it = colours.find(label);
    return it == colours.end() ? "#ffffff" : it->second;
}

}  // namespace

// ---------------------------------------------------------------- regions

Table regionsTable(const RegionsConfig& config, const RegionModel& model) {
    if (config.nt < 1 || config.nb < 1) throw DomainError("regions grid must be nonempty");
    if (!(config.tMax >= config.tMin) || !(config.betaMax >= config.betaMin)) throw DomainError("regions window is empty");
    Table table;
    table.columns = {"kind", "t", "beta", "label"};
    auto axis = [](double lo, double hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };

    const std::size_t total = static_cast<std::size_t>(config.nt) * static_cast<std::size_t>(config.nb);
    std::vector<RegionPoint> points(total);
    parallelFor(total, [&](std::size_t idx) {
        const int j = static_cast<int>(idx / config.nt);
        const int i = static_cast<int>(idx % config.nt);
        points[idx] = model.classifyPoint(axis(config.tMin, config.tMax, config.nt, i),
                                          axis(config.betaMin, config.betaMax, config.nb, j));
    });
    for (const auto& p : points) table.add({std::string("point"), p.t, p.beta, std::string(toString(p.label))});

    const auto& c = model.constants();
    const double cap = std::min(config.tMax, 4.0 * kPi * (1.0 - 1e-4));
    auto curve = [&](const std::string& name, double lo, double hi, auto&& f) {
        lo = std::max(lo, config.tMin);
        hi = std::min(hi, cap);
        if (!(hi > lo)) return;
        const int n = std::max(2, config.curveSamples);
        std::vector<double> values(n, std::numeric_limits<double>::quiet_NaN());
        parallelFor(static_cast<std::size_t>(n), [&](std::size_t i) {
            try {
                values[i] = f(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
            } catch (const Error&) {
            }
        });
        for (int i = 0; i < n; ++i) {
            if (std::isfinite(values[i])) {
                table.add({"curve:" + name, lo + (hi - lo) * i / (n - 1), values[i], std::string()});
            }
        }
    };
    curve("beta2", c.t2, cap, [&](double t) { return model.beta2(t); });
    curve("beta4", c.t4, cap, [&](double t) { return model.beta4(t); });
    curve("guarantee", kT3, cap, [](double t) { return angularGuaranteeCurve(t); });
    curve("fl_upper", c.t4 / (config.curveSamples + 1.0), c.t4, [&](double t) { return model.flUpperBoundary(t); });

    table.add({std::string("marker:t2"), c.t2, 0.0, std::string()});
    table.add({std::string("marker:t3"), kT3, 0.0, std::string()});
    table.add({std::string("marker:t4"), c.t4, 0.0, std::string()});
    const auto corner = model.ivVCorner();
    table.add({std::string("marker:corner"), corner.t, corner.beta, std::string()});
    return table;
}

std::string regionsSvg(const Table& table) {
    std::set<double> ts, betas;
    double tLo = INFINITY, tHi = -INFINITY, bLo = INFINITY, bHi = -INFINITY;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.text(r, "kind") != "point") continue;
        const double t = table.number(r, "t"), b = table.number(r, "beta");
        ts.insert(t);
        betas.insert(b);
        tLo = std::min(tLo, t), tHi = std::max(tHi, t), bLo = std::min(bLo, b), bHi = std::max(bHi, b);
    }
    if (ts.empty()) throw DomainError("regions table has no grid points");
    const double dt = spacing(ts, std::max(1e-3, tHi - tLo));
    const double db = spacing(betas, std::max(1e-3, bHi - bLo));
    Canvas canvas(tLo - dt / 2, tHi + dt / 2, bLo - db / 2, bHi + db / 2, "Region map in the (t, beta) plane", "t",
                  "beta");

    // Merge horizontal runs of equal label into rectangles, grouped into one layer per label.
    std::map<std::string, std::vector<std::array<double, 3>>> layers;
    std::string runLabel;
    double runStart = 0, runEnd = 0, runBeta = NAN;
    auto flush = [&] {
        if (!runLabel.empty()) layers[runLabel].push_back({runStart, runEnd, runBeta});
        runLabel.clear();
    };
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.text(r, "kind") != "point") continue;
        const double t = table.number(r, "t"), b = table.number(r, "beta");
        const std::string label = table.text(r, "label");
        if (label == runLabel && b == runBeta && t > runEnd) {
            runEnd = t;
            continue;
        }
        flush();
        runLabel = label, runStart = t, runEnd = t, runBeta = b;
    }
    flush();
    static const char* order[] = {"BS-I", "BS-II", "BS-III", "BS-IV", "BS-V", "FL", "E-radial", "NA", "Unknown"};
    std::vector<std::pair<std::string, std::string>> legend;
    for (const char* name : order) {
        const auto it = layers.find(name);
        if (it == layers.end()) continue;
        canvas.open(std::string("layer-") + name, std::string("fill=\"") + regionColour(name) + "\" stroke=\"none\"");
        for (const auto& [a, b, beta] : it->second) canvas.rect(a - dt / 2, b + dt / 2, beta - db / 2, beta + db / 2);
        canvas.close();
        legend.emplace_back(name, regionColour(name));
    }

    std::map<std::string, std::vector<std::pair<double, double>>> curves;
    std::vector<std::string> curveOrder;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string kind = table.text(r, "kind");
        if (kind.rfind("curve:", 0) != 0) continue;
        if (!curves.count(kind)) curveOrder.push_back(kind);
        curves[kind].emplace_back(table.number(r, "t"), table.number(r, "beta"));
    }
    canvas.open("curves", "stroke-width=\"2\"");
    for (const auto& kind : curveOrder) {
        const std::string dash = kind == "curve:guarantee" ? " stroke-dasharray=\"6 4\"" : "";
        canvas.polyline(curves[kind], "stroke=\"black\"" + dash + " data-kind=\"" + kind + "\"");
    }
    canvas.close();

    canvas.open("markers", "font-size=\"12\"");
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string kind = table.text(r, "kind");
        if (kind.rfind("marker:", 0) != 0) continue;
        const double t = table.number(r, "t"), b = table.number(r, "beta");
        const std::string name = kind.substr(7);
        if (name == "corner") {
            canvas.circle(t, b, 4, "fill=\"red\" stroke=\"black\"");
            canvas.text(t, b, "  IV/V corner");
        } else {
            canvas.vline(t, "stroke=\"gray\" stroke-dasharray=\"2 3\"");
            canvas.text(t, b, " " + name);
        }
    }
    canvas.close();
    canvas.legend(legend);
    return canvas.finish();
}

// ---------------------------------------------------------------- contour

std::vector<double> defaultContourLambdas(const SpecialConstants& constants) {
    return {-2.0, 0.0, 1.0, constants.n2 * (constants.n2 + 1.0), 2.0, 3.0, 4.0, 6.0};
}

Table contourTable(const ContourConfig& config, const SpecialConstants& constants) {
    if (config.samplesPerHalf < 1) throw DomainError("contour grid must be nonempty");
    if (config.lambdas.empty()) throw DomainError("contour needs at least one lambda");
    Table table;
    table.columns = {"lambda", "theta", "t", "beta"};
    const SpaceForm sph = SpaceForm::spherical(), hyp = SpaceForm::hyperbolic();
    const int n = config.samplesPerHalf;

    std::vector<double> tNeg, tPos;
    if (config.tMin < 0.0) {
        for (int i = 0; i < n; ++i) tNeg.push_back(config.tMin * (1.0 - static_cast<double>(i) / n));
    }
    const double top = std::min(config.tMax, capCoordinates(sph, kMaxSphericalTheta).t);
    if (top > 0.0) {
        for (int i = 1; i <= n; ++i) tPos.push_back(top * i / n);
        for (double special : {2.0 * kPi, constants.t2}) {
            if (special < top) tPos.push_back(special);
        }
        std::sort(tPos.begin(), tPos.end());
        tPos.erase(std::unique(tPos.begin(), tPos.end()), tPos.end());
    }

    for (double lambda : config.lambdas) {
        for (const auto& [form, ts] : {std::pair{hyp, tNeg}, std::pair{sph, tPos}}) {
            std::vector<double> thetas;
            for (double t : ts) thetas.push_back(thetaFromT(form, t));
            if (lambda == 0.0) {
                for (std::size_t i = 0; i < ts.size(); ++i) table.add({lambda, thetas[i], ts[i], -2.0 * kPi});
                continue;
            }
            std::vector<ContourPoint> pts(thetas.size());
            std::vector<char> keep(thetas.size(), 0);
            parallelFor(thetas.size(), [&](std::size_t i) {
                const double th = thetas[i];
                const auto res = contourCurve(form, lambda, std::span<const double>(&th, 1));
                if (!res.points.empty()) {
                    pts[i] = res.points.front();
                    keep[i] = 1;
                }
            });
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (keep[i]) table.add({lambda, pts[i].theta, pts[i].t, pts[i].beta});
            }
        }
    }
    return table;
}

std::string contourSvg(const Table& table) {
    double tLo = INFINITY, tHi = -INFINITY;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        tLo = std::min(tLo, table.number(r, "t"));
        tHi = std::max(tHi, table.number(r, "t"));
    }
    if (!std::isfinite(tLo)) throw DomainError("contour table is empty");
    Canvas canvas(tLo, tHi, -2.0 * kPi - 1.0, 8.0, "Level curves of the lowest angular eigenvalue", "t", "beta");
    canvas.open("contours", "stroke=\"navy\" stroke-width=\"1.5\" font-size=\"11\"");
    std::size_t r = 0;
    while (r < table.rows.size()) {
        const double lambda = table.number(r, "lambda");
        const bool negative = table.number(r, "t") < 0.0;
        std::vector<std::pair<double, double>> pts;
        while (r < table.rows.size() && table.number(r, "lambda") == lambda && (table.number(r, "t") < 0.0) == negative) {
            pts.emplace_back(table.number(r, "t"), table.number(r, "beta"));
            ++r;
        }
        canvas.polyline(pts, "data-lambda=\"" + formatNumber(lambda) + "\"");
        if (!pts.empty() && !negative) {
            canvas.text(pts.back().first, pts.back().second, "lambda=" + formatNumber(lambda), "stroke=\"none\"");
        }
    }
    canvas.close();
    return canvas.finish();
}

// ---------------------------------------------------------------- mode map

Table modeMapTable(const ModeMapConfig& config) {
    if (config.nTheta < 1 || config.nAlpha < 1) throw DomainError("mode-map grid must be nonempty");
    Table table;
    table.columns = {"theta", "alpha", "lambda2", "mode", "lambda_angular", "lambda_radial2", "lambda_m2"};
    const std::size_t total = static_cast<std::size_t>(config.nTheta) * static_cast<std::size_t>(config.nAlpha);
    std::vector<ModeClassification> out(total);
    std::vector<std::string> errors(total);
    auto thetaAt = [&](int i) { return config.thetaMax * (i + 1) / config.nTheta; };
    auto alphaAt = [&](int j) {
        return config.nAlpha == 1 ? config.alphaMin
                                  : config.alphaMin + (config.alphaMax - config.alphaMin) * j / (config.nAlpha - 1);
    };
    parallelFor(total, [&](std::size_t idx) {
        const int i = static_cast<int>(idx / config.nAlpha);
        const int j = static_cast<int>(idx % config.nAlpha);
        out[idx] = secondEigenWithMode(SpaceForm::spherical(), thetaAt(i), alphaAt(j), config.options);
    });
    for (std::size_t idx = 0; idx < total; ++idx) {
        const auto& m = out[idx];
        const int i = static_cast<int>(idx / config.nAlpha);
        const int j = static_cast<int>(idx % config.nAlpha);
        table.add({thetaAt(i), alphaAt(j), m.lambda2, std::string(toString(m.mode)), m.lambdaAngular, m.lambdaRadial2,
                   m.lambdaM2});
    }
    return table;
}

std::string modeMapSvg(const Table& table) {
    std::set<double> thetas, alphas;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        thetas.insert(table.number(r, "theta") / kPi);
        alphas.insert(table.number(r, "alpha"));
    }
    if (thetas.empty()) throw DomainError("mode-map table is empty");
    const double dx = spacing(thetas, 0.05), dy = spacing(alphas, 0.25);
    Canvas canvas(*thetas.begin() - dx / 2, *thetas.rbegin() + dx / 2, *alphas.begin() - dy / 2,
                  *alphas.rbegin() + dy / 2, "Mode of the second eigenvalue on spherical caps", "Theta / pi", "alpha");
    std::map<std::string, std::vector<std::pair<double, double>>> cells;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        cells[table.text(r, "mode")].emplace_back(table.number(r, "theta") / kPi, table.number(r, "alpha"));
    }
    const std::pair<const char*, const char*> palette[] = {
        {"Angular", "#9ecae1"}, {"Radial", "#e6550d"}, {"Boundary", "#636363"}};
    std::vector<std::pair<std::string, std::string>> legend;
    for (const auto& [name, colour] : palette) {
        const auto it = cells.find(name);
        if (it == cells.end()) continue;
        canvas.open(std::string("layer-") + name, std::string("fill=\"") + colour + "\" stroke=\"none\"");
        for (const auto& [x, y] : it->second) canvas.rect(x - dx / 2, x + dx / 2, y - dy / 2, y + dy / 2);
        canvas.close();
        legend.emplace_back(name, colour);
    }
    canvas.legend(legend);
    return canvas.finish();
}

// ---------------------------------------------------------------- constants and lab

Table constantsTable(const SpecialConstants& c) {
    Table table;
    table.columns = {"name", "value"};
    const std::pair<const char*, double> rows[] = {
        {"n2", c.n2},         {"theta2", c.theta2}, {"theta2_over_pi", c.theta2 / kPi},
        {"t2", c.t2},         {"t3", kT3},          {"n4", c.n4},
        {"theta4", c.theta4}, {"theta4_over_pi", c.theta4 / kPi}, {"t4", c.t4},
        {"identity_residual", c.identityResidual}};
    for (const auto& [name, value] : rows) table.add({std::string(name), value});
    return table;
}

Table labTable(const WeightedDomain& domain, double beta, int gridPoints) {
    const auto nd = normalizeDomain(domain);
    const auto report = checkAreaLemmas(nd, gridPoints, 1e-8);
    Table table;
    table.columns = {"quantity", "r", "value"};
    const auto& p = report.profile;
    for (std::size_t i = 0; i < p.r.size(); ++i) {
        table.add({std::string("A"), p.r[i], p.A[i]});
        table.add({std::string("B"), p.r[i], p.B[i]});
        table.add({std::string("ratio"), p.r[i], p.ratio[i]});
    }
    auto summary = [&](const char* name, double v) { table.add({std::string(name), std::monostate{}, v}); };
    const auto& v = report.verdicts;
    summary("R", nd.R);
    summary("area", nd.area);
    summary("min_A_minus_B", v.minDifference);
    summary("max_abs_A_minus_B", v.maxAbsDifference);
    summary("difference_holds", v.differenceHolds ? 1.0 : 0.0);
    if (v.ratioMonotone) summary("ratio_monotone", *v.ratioMonotone ? 1.0 : 0.0);
    summary("max_ratio_drop", v.maxRatioDrop);
    summary("endpoint_mismatch", v.endpointMismatch);

    const SpaceForm form = nd.form();
    const double theta = thetaFromConformal(form, nd.R);
    if (form.validTheta(theta)) {
        const double alpha = beta / (2.0 * kPi * sn(form, theta));
        const double lambda = eigenvaluesForRobin(form, theta, 1, alpha, 1).front().lambda;
        const auto h = transplantProfile(integrateRadial({form, 1, lambda, theta}));
        const auto q = transplantQuantities(nd, h, beta);
        summary("theta", theta);
        summary("beta", beta);
        summary("disk_lambda", lambda);
        summary("numerator", q.numerator);
        summary("denominator_pulled", q.denomPulled);
        summary("denominator_disk", q.denomDisk);
        summary("bound", q.bound);
        summary("disk_value", q.diskValue);
        summary("denominator_comparison", q.denomPulled - q.denomDisk);
    }
    return table;
}

std::string labSvg(const Table& table) {
    std::vector<std::pair<double, double>> a, b;
    double rHi = 0.0, vHi = 0.0;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string q = table.text(r, "quantity");
        if (q != "A" && q != "B") continue;
        const double x = table.number(r, "r"), y = table.number(r, "value");
        (q == "A" ? a : b).emplace_back(x, y);
        rHi = std::max(rHi, x);
        vHi = std::max(vHi, y);
    }
    if (a.empty()) throw DomainError("lab table has no area profile");
    a.insert(a.begin(), {0.0, 0.0});
    b.insert(b.begin(), {0.0, 0.0});
    Canvas canvas(0.0, rHi, 0.0, vHi * 1.05, "Weighted areas A(r) and B(r)", "r", "area");
    canvas.open("areas", "stroke-width=\"2\"");
    canvas.polyline(a, "stroke=\"navy\" data-kind=\"A\"");
    canvas.polyline(b, "stroke=\"darkorange\" stroke-dasharray=\"5 3\" data-kind=\"B\"");
    canvas.close();
    canvas.legend({{"A (space form)", "navy"}, {"B (domain)", "darkorange"}});
    return canvas.finish();
}

}  // namespace robincap
