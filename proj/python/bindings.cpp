#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "robincap/conformal_lab.hpp"
#include "robincap/eigensolver.hpp"
#include "robincap/errors.hpp"
#include "robincap/geometry.hpp"
#include "robincap/radial_ode.hpp"
#include "robincap/regions.hpp"

namespace py = pybind11;
using namespace robincap;

namespace {
SpaceForm form(int k) { return SpaceForm::fromCurvature(k); }
}  // namespace

PYBIND11_MODULE(_robincap, m) {
    m.doc() = "Robin-Laplacian eigenvalues on constant-curvature geodesic disks";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<SolverError>(m, "SolverError", error.ptr());

    m.attr("MAX_SPHERICAL_THETA") = kMaxSphericalTheta;
    m.attr("T3") = kT3;

    m.def("sn", [](int k, double theta) { return sn(form(k), theta); }, py::arg("k"), py::arg("theta"));
    m.def("weight", [](int k, double r) { return weight(form(k), r); }, py::arg("k"), py::arg("r"));
    m.def("area_a", [](int k, double r) { return areaA(form(k), r); }, py::arg("k"), py::arg("r"));
    m.def(
        "cap_coordinates",
        [](int k, double theta) {
            const auto c = capCoordinates(form(k), theta);
            return py::dict(py::arg("theta") = c.theta, py::arg("t") = c.t, py::arg("area") = c.area,
                            py::arg("boundary_length") = c.boundaryLength);
        },
        py::arg("k"), py::arg("theta"));
    m.def("theta_from_t", [](int k, double t) { return thetaFromT(form(k), t); }, py::arg("k"), py::arg("t"));

    m.def(
        "radial_profile",
        [](int k, int mIndex, double lambda, double theta) {
            const auto sol = integrateRadial({form(k), mIndex, lambda, theta});
            std::vector<double> th, g, dg;
            for (const auto& s : sol.samples()) {
                th.push_back(s.theta);
                g.push_back(s.g);
                dg.push_back(s.dg);
            }
            return py::dict(py::arg("theta") = th, py::arg("g") = g, py::arg("dg") = dg,
                            py::arg("shape") = toString(shapeProfile(sol).shape));
        },
        py::arg("k"), py::arg("m"), py::arg("lam"), py::arg("theta"));

    m.def(
        "eigenvalues",
        [](int k, double theta, int mIndex, double alpha, int count) {
            std::vector<double> out;
            for (const auto& r : eigenvaluesForRobin(form(k), theta, mIndex, alpha, count)) out.push_back(r.lambda);
            return out;
        },
        py::arg("k"), py::arg("theta"), py::arg("m") = 1, py::arg("alpha") = 0.0, py::arg("count") = 1);
    m.def(
        "robin_alpha", [](int k, double theta, int mIndex, double lambda) {
            return robinAlphaForLambda(form(k), theta, mIndex, lambda);
        },
        py::arg("k"), py::arg("theta"), py::arg("m"), py::arg("lam"));
    m.def(
        "second_eigenvalue",
        [](int k, double theta, double alpha) {
            const auto c = secondEigenWithMode(form(k), theta, alpha);
            return py::dict(py::arg("lambda2") = c.lambda2, py::arg("mode") = toString(c.mode),
                            py::arg("lambda_angular") = c.lambdaAngular, py::arg("lambda_radial2") = c.lambdaRadial2,
                            py::arg("lambda_m2") = c.lambdaM2);
        },
        py::arg("k"), py::arg("theta"), py::arg("alpha"));

    m.def("special_constants", [] {
        const auto& c = RegionModel::shared().constants();
        return py::dict(py::arg("n2") = c.n2, py::arg("theta2") = c.theta2, py::arg("t2") = c.t2,
                        py::arg("n4") = c.n4, py::arg("theta4") = c.theta4, py::arg("t4") = c.t4);
    });
    m.def("beta_curve", py::overload_cast<double, double>(&betaCurve), py::arg("n"), py::arg("t"));
    m.def("fl_upper_boundary", py::overload_cast<double>(&flUpperBoundary), py::arg("t"));
    m.def(
        "classify_point", [](double t, double beta) { return toString(classifyPoint(t, beta).label); }, py::arg("t"),
        py::arg("beta"));
    m.def("iv_v_corner", [] {
        const auto c = RegionModel::shared().ivVCorner();
        return py::make_tuple(c.t, c.beta);
    });

    m.def(
        "area_lemmas",
        [](const std::string& map, const std::string& weightSpec, double rho) {
            const auto report = checkAreaLemmas(normalizeDomain(WeightedDomain::make(map, weightSpec, rho)));
            const auto& v = report.verdicts;
            return py::dict(py::arg("R") = report.profile.R, py::arg("min_difference") = v.minDifference,
                            py::arg("equality") = v.equality, py::arg("difference_holds") = v.differenceHolds,
                            py::arg("ratio_monotone") = v.ratioMonotone);
        },
        py::arg("map"), py::arg("weight"), py::arg("rho") = 1.0);
}
