#include "selfcheck.hpp"

#include <algorithm>
#include <random>

#include "pairgf/coulomb_gf.hpp"
#include "pairgf/dyson.hpp"
#include "pairgf/ldos.hpp"
#include "pairgf/quadrature.hpp"
#include "pairgf/special.hpp"

namespace pairgf::cli {

namespace {

Check make(const std::string& name, double residual, double tol) {
    return {name, residual, tol, std::isfinite(residual) && residual < tol};
}

double wronskian_sweep() {
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const double k = 0.1 * std::pow(100.0, i / 24.0);
        for (int j = 0; j < 25; ++j) {
            const double r = 0.05 * std::pow(400.0, j / 24.0);
            const auto e = special::whittaker_pair({Complex(0, -1.0 / k), 0.5}, Complex(0, -2.0 * k * r));
            worst = std::max(worst, e.wronskian_residual);
        }
    }
    return worst;
}

double free_reduction(bool fault) {
    coulomb::CoulombOptions o;
    o.interaction = coulomb::Interaction::Free;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(-3, 3), e(0.2, 30);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Vec3 a{c(rng), c(rng), c(rng)}, b{c(rng), c(rng), c(rng)};
        const double E = e(rng), k = std::sqrt(E), d = norm(a - b);
        Complex expect = -std::exp(Complex(0, k * d)) / (4 * pi * d);
        if (fault) expect = -expect;
        worst = std::max(worst, std::abs(coulomb::gc_closed(a, b, E, o).value - expect) / std::abs(expect));
    }
    return worst;
}

double partial_waves() {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> rr(0.5, 5.0), ang(0.3, 2.8);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        double r1, r2;
        do {
            r1 = rr(rng);
            r2 = rr(rng);
        } while (std::min(r1, r2) / std::max(r1, r2) > 0.55);
        const double g = ang(rng), E = i % 2 ? 1.0 : 4.0;
        const Complex pw = coulomb::gc_pw_sum(r1, r2, std::cos(g), E, 40).value;
        const Complex cf = coulomb::gc_closed({r1, 0, 0}, {r2 * std::cos(g), r2 * std::sin(g), 0}, E).value;
        worst = std::max(worst, std::abs(pw - cf) / std::abs(cf));
    }
    return worst;
}

double free_pair_bessel() {
    const double R = 1, r = 1, E = 4;
    auto sinc = [](double x) { return x == 0 ? 1.0 : std::sin(x) / x; };
    quad::QuadratureSpec s;
    s.rel_tol = 1e-10;
    s.abs_tol = 1e-16;
    const double q = quad::integrate_real(
        [&](double K) {
            const double k = std::sqrt(std::max(E - K * K / 4, 0.0));
            return K * K / (2 * pi * pi) * sinc(K * R) * k * sinc(k * r) / (4 * pi * pi);
        },
        0.0, 2 * std::sqrt(E), s);
    return std::abs(ldos::rho_free(R, r, E) - q) / std::abs(q);
}

double dyson_decoupling() {
    using namespace dyson;
    const GridSpec g =
        make_grid({{{1.0, 0.2, 0.0}, {-0.5, 0.8, 0.3}}, {{0.4, -1.1, 0.6}, {0.9, 0.5, -0.7}}}, {0.3, 0.2});
    PotentialSpec pot;
    pot.v_ext = [](const Vec3& x) { return 0.4 * std::exp(-dot(x, x)) - 0.2 * x[0]; };
    pot.u_pair = [](const Vec3& a, const Vec3& b) { return 0.7 / (1.0 + norm(a - b)); };
    const Matrix ge = bare_kernel(g, -1.0, {pair::Channel::Singlet});
    const Matrix go = bare_kernel(g, -1.0, {pair::Channel::Triplet});
    const Matrix full = dyson_solve_spin(assemble_spin(ge, go), g, pot);
    const Matrix split = assemble_spin(dyson_solve_kernel(ge, g, pot), dyson_solve_kernel(go, g, pot));
    const double scale = full.cwiseAbs().maxCoeff();
    return std::max((full - split).cwiseAbs().maxCoeff() / scale, cross_channel_norm(g, pot));
}

double coincidence_extrapolation() {
    auto f = [](double d) {
        return coulomb::gc_closed({1, 0, 0}, {1 + d, 0, 0}, 4.0).value + 1.0 / (4 * pi * d);
    };
    const Complex f1 = f(1e-2), f2 = f(1e-3), f3 = f(1e-4);
    const Complex g1 = (10.0 * f2 - f1) / 9.0, g2 = (10.0 * f3 - f2) / 9.0;
    const Complex extrap = (100.0 * g2 - g1) / 99.0;
    const Complex reg = coulomb::gc_coincident_regular(1.0, 4.0).value;
    return std::abs(reg - extrap) / std::abs(extrap);
}

}  // namespace

std::vector<Check> run_selfcheck(bool strict, bool fault) {
    std::vector<Check> out;
    out.push_back(make("wronskian", wronskian_sweep(), 1e-8));
    out.push_back(make("free_reduction", free_reduction(fault), 1e-8));
    out.push_back(make("partial_waves", partial_waves(), 1e-6));
    out.push_back(make("free_pair_bessel", free_pair_bessel(), 1e-4));
    out.push_back(make("dyson_decoupling", dyson_decoupling(), 1e-10));
    if (strict) out.push_back(make("coincidence_extrapolation", coincidence_extrapolation(), 1e-5));
    return out;
}

}  // namespace pairgf::cli
