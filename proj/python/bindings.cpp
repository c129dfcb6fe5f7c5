#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pairgf/coulomb_gf.hpp"
#include "pairgf/dyson.hpp"
#include "pairgf/ldos.hpp"
#include "pairgf/pair_gf.hpp"
#include "pairgf/special.hpp"

namespace py = pybind11;
using namespace pairgf;

namespace {

coulomb::Interaction interaction(bool free) {
    return free ? coulomb::Interaction::Free : coulomb::Interaction::Repulsive;
}

pair::SpinChannel channel(const std::string& name) {
    if (name == "singlet") return {pair::Channel::Singlet};
    if (name == "triplet") return {pair::Channel::Triplet};
    throw DomainError("channel must be 'singlet' or 'triplet'");
}

pair::PairArgs args(const Vec3& a1, const Vec3& b1, const Vec3& a2, const Vec3& b2, double cK) {
    return {a1, b1, a2, b2, cK};
}

dyson::GridSpec grid(const std::vector<std::pair<Vec3, Vec3>>& points, const std::vector<double>& weights) {
    return dyson::make_grid(points, weights);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.attr("__version__") = PAIRGF_VERSION;

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto domain = py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<pair::DivergentArguments>(m, "DivergentArguments", domain.ptr());
    py::register_exception<CutoffRequired>(m, "CutoffRequired", domain.ptr());
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
    py::register_exception<SingularSystem>(m, "SingularSystem", numerical.ptr());

    m.def("gamma", &special::cgamma, py::arg("z"));
    m.def("hyp1f1", &special::hyp1f1, py::arg("a"), py::arg("b"), py::arg("z"), py::arg("tol") = 1e-12);
    m.def(
        "whittaker_wronskian_residual",
        [](double k, double r) {
            return special::whittaker_pair({Complex(0, -1.0 / k), 0.5}, Complex(0, -2.0 * k * r)).wronskian_residual;
        },
        py::arg("k"), py::arg("r"));

    m.def(
        "coulomb_gf",
        [](const Vec3& r1, const Vec3& r2, double E, bool free) {
            coulomb::CoulombOptions o;
            o.interaction = interaction(free);
            return coulomb::gc_closed(r1, r2, E, o).value;
        },
        py::arg("r1"), py::arg("r2"), py::arg("E"), py::arg("free") = false);
    m.def(
        "coulomb_gf_partial_waves",
        [](double r1, double r2, double cos_angle, double E, int l_max) {
            return coulomb::gc_pw_sum(r1, r2, cos_angle, E, l_max).value;
        },
        py::arg("r1"), py::arg("r2"), py::arg("cos_angle"), py::arg("E"), py::arg("l_max") = 40);
    m.def(
        "coulomb_gf_coincident_regular", [](double r, double E) { return coulomb::gc_coincident_regular(r, E).value; },
        py::arg("r"), py::arg("E"));

    m.def(
        "classify_args",
        [](const Vec3& a1, const Vec3& b1, const Vec3& a2, const Vec3& b2) {
            return to_string(pair::classify_args(args(a1, b1, a2, b2, 0.25)));
        },
        py::arg("a1"), py::arg("b1"), py::arg("a2"), py::arg("b2"));
    m.def(
        "pair_gf",
        [](const Vec3& a1, const Vec3& b1, const Vec3& a2, const Vec3& b2, double E, const std::string& ch,
           bool free) {
            pair::PairOptions o;
            o.interaction = interaction(free);
            const auto p = args(a1, b1, a2, b2, 0.25);
            if (ch == "spinless") return pair::pair_gf(p, E, o);
            return pair::pair_gf_channel(p, E, channel(ch), o);
        },
        py::arg("a1"), py::arg("b1"), py::arg("a2"), py::arg("b2"), py::arg("E"), py::arg("channel") = "spinless",
        py::arg("free") = false);
    m.def(
        "g0_dos", [](double E) { return pair::g0_dos(E); }, py::arg("E"));
    m.def(
        "g0_real", [](double E, std::optional<double> cutoff) { return pair::g0_real(E, cutoff); }, py::arg("E"),
        py::arg("cutoff") = py::none());

    m.def(
        "ldos",
        [](double r, double E, bool free) {
            ldos::LdosOptions o;
            o.interaction = interaction(free);
            const auto p = ldos::rho_point(r, E, o);
            py::dict d;
            d["r"] = p.r;
            d["E"] = p.E;
            d["rho_plus"] = p.rho_plus;
            d["rho_minus"] = p.rho_minus;
            d["rho_even"] = p.rho_even;
            d["rho_odd"] = p.rho_odd;
            d["rho_total"] = p.rho_total;
            d["rho_spinless"] = p.rho_spinless;
            return d;
        },
        py::arg("r"), py::arg("E"), py::arg("free") = false);
    m.def(
        "ldos_grid",
        [](const std::vector<double>& r, const std::vector<double>& E, int threads) {
            std::vector<ldos::LdosPoint> pts;
            {
                py::gil_scoped_release release;
                pts = ldos::rho_grid(r, E, {}, threads);
            }
            const py::ssize_t nE = static_cast<py::ssize_t>(E.size()), nr = static_cast<py::ssize_t>(r.size());
            py::array_t<double> plus({nE, nr}), minus({nE, nr});
            auto p = plus.mutable_unchecked<2>();
            auto q = minus.mutable_unchecked<2>();
            for (py::ssize_t i = 0; i < nE; ++i)
                for (py::ssize_t j = 0; j < nr; ++j) {
                    p(i, j) = pts[static_cast<std::size_t>(i * nr + j)].rho_plus;
                    q(i, j) = pts[static_cast<std::size_t>(i * nr + j)].rho_minus;
                }
            return py::make_tuple(plus, minus);
        },
        py::arg("r"), py::arg("E"), py::arg("threads") = 1,
        "Returns (rho_plus, rho_minus), each of shape (len(E), len(r)).");
    m.def("ldos_free", &ldos::rho_free, py::arg("R"), py::arg("r"), py::arg("E"));
    m.def(
        "single_refs",
        [](double E) {
            const auto s = ldos::rho_single_refs(E);
            return py::make_tuple(s.rho_c0, s.rho_e0);
        },
        py::arg("E"), "Returns (rho_c0, rho_e0).");

    m.def(
        "bare_kernel",
        [](const std::vector<std::pair<Vec3, Vec3>>& points, const std::vector<double>& weights, double E,
           const std::string& ch, int threads) {
            const auto g = grid(points, weights);
            dyson::DysonOptions o;
            o.threads = threads;
            py::gil_scoped_release release;
            return dyson::bare_kernel(g, E, channel(ch), o);
        },
        py::arg("points"), py::arg("weights"), py::arg("E"), py::arg("channel") = "singlet", py::arg("threads") = 1,
        "Kernel on the grid after it is closed under exchange.");
    m.def(
        "dyson_solve",
        [](const std::vector<std::pair<Vec3, Vec3>>& points, const std::vector<double>& weights, double E,
           const std::string& ch, std::function<double(const Vec3&)> v_ext,
           std::function<double(const Vec3&, const Vec3&)> u_pair) {
            const auto g = grid(points, weights);
            return dyson::dyson_solve(g, {v_ext, u_pair}, E, channel(ch));
        },
        py::arg("points"), py::arg("weights"), py::arg("E"), py::arg("channel") = "singlet",
        py::arg("v_ext") = nullptr, py::arg("u_pair") = nullptr);
    m.def(
        "grid_points",
        [](const std::vector<std::pair<Vec3, Vec3>>& points, const std::vector<double>& weights) {
            const auto g = grid(points, weights);
            return py::make_tuple(g.points, g.weights);
        },
        py::arg("points"), py::arg("weights"));
}
