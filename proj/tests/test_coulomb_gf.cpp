#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pairgf/coulomb_gf.hpp"

using namespace pairgf;
using namespace pairgf::coulomb;

namespace {

struct GcRow {
    double x1, y1, z1, x2, y2, z2, E, re, im;
};
const GcRow gc_table[] = {
#include "golden/gc_closed.inc"
};

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

CoulombOptions free_mode() {
    CoulombOptions o;
    o.interaction = Interaction::Free;
    return o;
}

// Spherical Bessel j0 and outgoing Hankel h0 for the l = 0 free partial wave.
Complex free_g0(double r1, double r2, double k) {
    const double rl = std::min(r1, r2), rg = std::max(r1, r2);
    const double j0 = std::sin(k * rl) / (k * rl);
    const Complex h0 = std::exp(Complex(0, k * rg)) / Complex(0, k * rg);
    return Complex(0, -k) * j0 * h0;
}

}  // namespace

TEST_CASE("coulomb_params") {
    auto p = coulomb_params(1.0);
    CHECK(p.k == Complex(1.0));
    CHECK(p.nu == Complex(-1.0));
    p = coulomb_params(-1.0);
    CHECK(p.k == Complex(0, 1));
    CHECK(std::abs(p.nu - Complex(0, 1)) < 1e-16);
    p = coulomb_params(4.0);
    CHECK(p.k == Complex(2.0));
    CHECK(p.nu == Complex(-0.5));
    p = coulomb_params(2.0, 0.5);
    CHECK(p.k == Complex(2.0));
    CHECK_THROWS_AS(coulomb_params(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(coulomb_params(0.0), DomainError);
    CHECK(coulomb_params(0.0, 1.0, Interaction::Free).nu == 0.0);
}

TEST_CASE("gc_closed golden table") {
    for (const auto& r : gc_table) {
        INFO("E = " << r.E << " r1 = " << r.x1 << "," << r.y1 << "," << r.z1);
        const auto g = gc_closed({r.x1, r.y1, r.z1}, {r.x2, r.y2, r.z2}, r.E);
        CHECK(rel(g.value, Complex(r.re, r.im)) < 1e-10);
        CHECK(g.kind == (r.E < 0 ? GfKind::NegativeEnergyReal : GfKind::Retarded));
    }
}

TEST_CASE("gc_closed examples") {
    const auto g = gc_closed({0, 0, 0}, {1, 0, 0}, 1.0, free_mode());
    CHECK(std::abs(g.value - Complex(-0.043000, -0.066957)) < 1e-5);
    CHECK(std::abs(g.value + std::exp(Complex(0, 1)) / (4 * pi)) < 1e-15);
    const auto n = gc_closed({0.3, 1, 0}, {-2, 0.1, 0.7}, -1.0);
    CHECK(std::abs(n.value.imag()) < 1e-10);
    CHECK_THROWS_AS(gc_closed({1, 2, 3}, {1, 2, 3}, 1.0), CoincidentArguments);
}

TEST_CASE("free reduction on 20 points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(-3, 3), e(0.2, 30);
    for (int i = 0; i < 20; ++i) {
        const Vec3 a{c(rng), c(rng), c(rng)}, b{c(rng), c(rng), c(rng)};
        const double E = e(rng), k = std::sqrt(E), d = norm(a - b);
        const Complex expect = -std::exp(Complex(0, k * d)) / (4 * pi * d);
        CHECK(rel(gc_closed(a, b, E, free_mode()).value, expect) < 1e-8);
    }
}

TEST_CASE("parity and conjugation") {
    const Vec3 a{0.4, -1.2, 0.3}, b{2.0, 0.5, -0.7};
    for (double E : {-2.0, 0.7, 4.0, 30.0}) {
        CHECK(gc_closed(-a, -b, E).value == gc_closed(a, b, E).value);
    }
    CoulombOptions adv;
    adv.branch = Branch::Advanced;
    const auto r = gc_closed(a, b, 3.0), v = gc_closed(a, b, 3.0, adv);
    CHECK(v.value == std::conj(r.value));
    CHECK(v.kind == GfKind::Advanced);
}

TEST_CASE("no poles on the negative energy axis") {
    const Vec3 a{0.5, 0, 0}, b{0, 1.5, 0};
    double prev = gc_closed(a, b, -10.0).value.real();
    for (int i = 1; i <= 300; ++i) {
        const double E = -10.0 * std::pow(1e-3, i / 300.0);
        const auto g = gc_closed(a, b, E);
        CHECK(std::isfinite(g.value.real()));
        CHECK(g.value.real() < 0.0);
        CHECK(std::abs(g.value.real() - prev) < 0.2 * std::abs(prev));
        prev = g.value.real();
    }
}

TEST_CASE("radial partial waves") {
    for (double E : {-0.5, 1.0, 4.0}) {
        for (int l : {0, 3, 12}) {
            CHECK(gc_radial_l(l, 0.7, 2.3, E).value == gc_radial_l(l, 2.3, 0.7, E).value);
        }
    }
    CHECK(std::abs(gc_radial_l(0, 1.0, 2.0, -0.5).value.imag()) < 1e-10);
    for (double k : {0.3, 1.0, 3.0})
        CHECK(rel(gc_radial_l(0, 0.8, 1.9, k * k, free_mode()).value, free_g0(0.8, 1.9, k)) < 1e-11);
}

TEST_CASE("partial-wave sum against the closed form") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> rr(0.5, 5.0), ang(0.3, 2.8);
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
        // l_max = 40 resolves the sum only when r_< / r_> is well below 1.
        double r1, r2;
        do {
            r1 = rr(rng);
            r2 = rr(rng);
        } while (std::min(r1, r2) / std::max(r1, r2) > 0.55);
        const double g = ang(rng), E = i % 2 ? 1.0 : 4.0;
        const Vec3 a{r1, 0, 0}, b{r2 * std::cos(g), r2 * std::sin(g), 0};
        const auto pw = gc_pw_sum(r1, r2, std::cos(g), E, 40);
        worst = std::max(worst, rel(pw.value, gc_closed(a, b, E).value));
    }
    CHECK(worst < 1e-6);
    const auto pw = gc_pw_sum(1.0, 2.5, 0.0, 1.0, 40);
    CHECK(rel(pw.value, gc_closed({1, 0, 0}, {0, 2.5, 0}, 1.0).value) < 1e-6);
    // Equal radii: the terms do not decay geometrically and the tail check refuses.
    CHECK_THROWS_AS(gc_pw_sum(1.0, 1.0, 0.0, 1.0, 40), NonConvergence);
}

TEST_CASE("partial-wave parity classes") {
    const double c = 0.37;
    for (double E : {-1.0, 2.0}) {
        const auto all = gc_pw_sum(1.1, 2.9, c, E, 30);
        const auto ev = gc_pw_sum(1.1, 2.9, c, E, 30, Parity::EvenL);
        const auto od = gc_pw_sum(1.1, 2.9, c, E, 30, Parity::OddL);
        CHECK(std::abs(ev.value + od.value - all.value) < 1e-14 * std::abs(all.value));
    }
    // collinear and antiparallel geometry
    CHECK(rel(gc_pw_sum(1.0, 3.0, 1.0, 4.0, 40).value, gc_closed({0, 0, 1}, {0, 0, 3}, 4.0).value) < 1e-6);
    const auto anti = gc_closed({0, 0, 1}, {0, 0, -3}, 4.0).value;
    CHECK(rel(gc_pw_sum(1.0, 3.0, -1.0, 4.0, 40).value, anti) < 1e-6);
    const auto ev = gc_pw_sum(1.0, 3.0, 1.0, 4.0, 40, Parity::EvenL).value;
    const auto od = gc_pw_sum(1.0, 3.0, 1.0, 4.0, 40, Parity::OddL).value;
    CHECK(rel(ev - od, anti) < 1e-6);
    CHECK_THROWS_AS(gc_pw_sum(1.0, 1.2, 0.5, 4.0, 4), NonConvergence);
    CHECK_THROWS_AS(gc_pw_sum(1.0, 1.2, 1.5, 4.0, 4), DomainError);
}

TEST_CASE("coincidence limit") {
    const auto reg = gc_coincident_regular(1.0, 4.0).value;
    CHECK(std::abs(reg - Complex(-0.000885384827, -0.100264592731)) < 1e-10);

    // Richardson extrapolation of gc(r, r + delta) + 1/(4 pi delta) over delta = 1e-2, 1e-3, 1e-4.
    auto f = [](double d) {
        return gc_closed({1, 0, 0}, {1 + d, 0, 0}, 4.0).value + 1.0 / (4 * pi * d);
    };
    const Complex f1 = f(1e-2), f2 = f(1e-3), f3 = f(1e-4);
    const Complex g1 = (10.0 * f2 - f1) / 9.0, g2 = (10.0 * f3 - f2) / 9.0;
    const Complex extrap = (100.0 * g2 - g1) / 99.0;
    CHECK(rel(reg, extrap) < 1e-5);

    for (double r : {0.1, 1.0, 7.0}) {
        const auto fr = gc_coincident_regular(r, 4.0, free_mode()).value;
        CHECK(std::abs(fr - Complex(0, -2.0 / (4 * pi))) < 1e-12);
    }
    CHECK(std::abs(gc_coincident_regular(1.3, -2.0).value.imag()) < 1e-10);
}

TEST_CASE("antipodal value") {
    const auto a = gc_antipodal(1.0, 4.0).value;
    CHECK(rel(a, gc_closed({0, 0, 1}, {0, 0, -1}, 4.0).value) < 1e-6);
    CHECK(std::abs(a - Complex(0.0147734878560, -0.0062835627301)) < 1e-11);
    for (double r : {0.2, 1.0, 9.0}) {
        const auto f = gc_antipodal(r, 4.0, free_mode()).value;
        CHECK(std::abs(std::abs(f) - 1.0 / (8 * pi * r)) < 1e-14);
        CHECK(rel(f, gc_closed({r, 0, 0}, {-r, 0, 0}, 4.0, free_mode()).value) < 1e-12);
    }
    const double m10 = std::abs(gc_antipodal(10.0, 4.0).value), m40 = std::abs(gc_antipodal(40.0, 4.0).value);
    CHECK(m40 / m10 == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("threshold suppression") {
    const auto g = gc_coincident_regular(1.0, 1e-5);
    CHECK(g.suppressed);
    CHECK(g.value.imag() == 0.0);
    // the real part is continuous through threshold
    const double below = gc_coincident_regular(1.0, -1e-5).value.real();
    CHECK(std::abs(g.value.real() - below) < 1e-4 * std::abs(below));
    const auto c = gc_closed({1, 0, 0}, {0, 2, 0}, 1e-6);
    CHECK(c.suppressed);
    CHECK(c.value.imag() == 0.0);
    CHECK(rel(c.value, gc_closed({1, 0, 0}, {0, 2, 0}, -1e-6).value) < 1e-4);
    CHECK_FALSE(gc_coincident_regular(1.0, 0.02).suppressed);
    CHECK(origin_density(1e-3) == 0.0);
    CHECK(origin_density(1.0) == doctest::Approx(1.0 / (pi * std::expm1(2 * pi))));
}
