#include "pairgf/pair_gf.hpp"

#include <algorithm>
#include <vector>

namespace pairgf::pair {

namespace {

bool is_zero(const Vec3& v) { return v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0; }

// K sin(K R12) / (2 pi^2 R12), continuous at R12 = 0.
double oscillatory_weight(double K, double R12) {
    const double x = K * R12;
    if (x < 1e-4) return K * K / (2.0 * pi * pi) * (1.0 - x * x / 6.0 + x * x * x * x / 120.0);
    return K * std::sin(x) / (2.0 * pi * pi * R12);
}

coulomb::CoulombOptions coulomb_options(const PairOptions& opt) {
    coulomb::CoulombOptions c;
    c.ck = opt.ck;
    c.interaction = opt.interaction;
    c.whittaker = opt.whittaker;
    return c;
}

quad::QuadratureSpec spec_for(const PairOptions& opt, double panel = 0.0) {
    quad::QuadratureSpec s;
    s.rel_tol = opt.rel_tol;
    s.abs_tol = opt.abs_tol;
    s.max_panel_width = panel;
    return s;
}

// Integral of w(K) gc(eps_K) over [k0, inf) where eps_K = E - cK K^2 < 0.
Complex evanescent_integral(const std::function<Complex(double)>& integrand, double k0, double E, double cK,
                            double ck, double R12, double d, const PairOptions& opt) {
    // Beyond K_c the integrand carries exp(-|k| d) < exp(-40).
    const double lam = 40.0 / d;
    const double kc = std::max(k0, std::sqrt((lam * lam * ck + E) / cK)) + 1.0;
    const double period = R12 > 0 ? pi / R12 : 0.0;
    const double panel = period > 0 ? std::max(period, (kc - k0) / 2000.0) : 0.0;
    Complex total = quad::integrate(integrand, k0, kc, spec_for(opt, panel)).value;
    quad::QuadratureSpec tail = spec_for(opt);
    tail.transform = quad::Transform::InverseTail;
    tail.abs_tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    total += quad::integrate(integrand, kc, 0.0, tail).value;
    return total;
}

}  // namespace

PairArgs PairArgs::from_relative(const Vec3& R1, const Vec3& r1, const Vec3& R2, const Vec3& r2, double cK) {
    PairArgs p;
    p.a1 = R1 + 0.5 * r1;
    p.b1 = R1 - 0.5 * r1;
    p.a2 = R2 + 0.5 * r2;
    p.b2 = R2 - 0.5 * r2;
    p.cK = cK;
    return p;
}

std::string to_string(const DivergenceClass& c) {
    std::string g;
    switch (c.group) {
        case Group::Regular: return "Regular";
        case Group::Group0: return "Group0";
        case Group::Group1: g = "Group1"; break;
        case Group::Group2: g = "Group2"; break;
    }
    switch (c.variant) {
        case Variant::None: break;
        case Variant::SameRelative: g += "(same relative)"; break;
        case Variant::SameRelativeShifted: g += "(same relative, shifted centre)"; break;
        case Variant::ExchangedRelative: g += "(exchanged relative)"; break;
        case Variant::ExchangedRelativeShifted: g += "(exchanged relative, shifted centre)"; break;
        case Variant::CoincidentCenters: g += "(coincident centres)"; break;
    }
    return g;
}

DivergenceClass classify_args(const PairArgs& p) {
    const Vec3 s1 = p.a1 + p.b1, s2 = p.a2 + p.b2;
    const Vec3 r1 = p.r1(), r2 = p.r2();
    const bool same_center = s1 == s2;
    const bool same_rel = r1 == r2;
    const bool exch_rel = r1 == -r2 && !is_zero(r1);
    if (!same_center && !same_rel && !exch_rel) return {};

    DivergenceClass c;
    std::vector<Vec3> distinct;
    for (const Vec3& v : {p.a1, p.b1, p.a2, p.b2}) {
        if (is_zero(v)) continue;
        const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                      [&](const Vec3& u) { return u == v || u == -v; });
        if (!seen) distinct.push_back(v);
    }
    if (distinct.empty()) {
        c.group = Group::Group0;
        return c;
    }
    c.group = distinct.size() == 1 ? Group::Group1 : Group::Group2;
    if (same_rel) c.variant = same_center ? Variant::SameRelative : Variant::SameRelativeShifted;
    else if (exch_rel) c.variant = same_center ? Variant::ExchangedRelative : Variant::ExchangedRelativeShifted;
    else c.variant = Variant::CoincidentCenters;
    return c;
}

Complex pair_gf(const PairArgs& p, double E, const PairOptions& opt) {
    const PairParts parts = pair_gf_parts(p, E, opt);
    return parts.propagating + parts.evanescent;
}

PairParts pair_gf_parts(const PairArgs& p, double E, const PairOptions& opt) {
    const DivergenceClass cls = classify_args(p);
    if (!cls.regular()) throw DivergentArguments("pair_gf: divergent arguments, " + to_string(cls), cls);
    if (!(p.cK > 0.0)) throw DomainError("pair_gf: c_K must be positive");
    if (!std::isfinite(E)) throw DomainError("pair_gf: energy must be finite");

    const Vec3 r1 = p.r1(), r2 = p.r2();
    const double R12 = p.R12();
    const double d = norm(r1 - r2);
    const double cK = p.cK;
    const coulomb::CoulombOptions copt = coulomb_options(opt);

    auto gc = [&](double eps) -> Complex {
        if (eps == 0.0) return 0.0;
        return coulomb::gc_closed(r1, r2, eps, copt).value;
    };
    const std::function<Complex(double)> evanescent = [&](double K) {
        return oscillatory_weight(K, R12) * gc(E - cK * K * K);
    };

    if (E <= 0.0) return {0.0, evanescent_integral(evanescent, 0.0, E, cK, opt.ck, R12, d, opt)};

    // Propagating part: K = K_m sin(theta), eps = E cos^2(theta).
    const double km = std::sqrt(E / cK);
    const double kmax = std::sqrt(E / opt.ck);
    const double a = norm(r1), b = norm(r2);
    const double phases = km * R12 + kmax * (a + b + d);
    const double panel = 0.5 * pi / (std::ceil(phases / pi) + 1.0);
    const std::function<Complex(double)> propagating = [&](double th) {
        const double K = km * std::sin(th), c = std::cos(th);
        return oscillatory_weight(K, R12) * gc(E * c * c) * (km * c);
    };
    return {quad::integrate(propagating, 0.0, 0.5 * pi, spec_for(opt, panel)).value,
            evanescent_integral(evanescent, km, E, cK, opt.ck, R12, d, opt)};
}

Complex pair_gf_channel(const PairArgs& p, double E, SpinChannel ch, const PairOptions& opt) {
    PairArgs ex = p;
    std::swap(ex.a2, ex.b2);
    for (const PairArgs* q : {&p, static_cast<const PairArgs*>(&ex)}) {
        const DivergenceClass cls = classify_args(*q);
        if (!cls.regular()) throw DivergentArguments("pair_gf_channel: divergent arguments, " + to_string(cls), cls);
    }
    const Complex direct = pair_gf(p, E, opt);
    const Complex exchange = pair_gf(ex, E, opt);
    return 0.5 * (direct + ch.exchange_sign() * exchange);
}

double g0_dos(double E, const DosOptions& opt) {
    if (!(opt.cK > 0.0) || !(opt.ck > 0.0)) throw DomainError("g0_dos: kinetic coefficients must be positive");
    if (!(E > 0.0)) return 0.0;
    const double kmax = std::sqrt(E / opt.ck);
    quad::QuadratureSpec s;
    s.rel_tol = opt.rel_tol;
    s.abs_tol = 1e-300;
    const double integral = quad::integrate_real(
        [&](double al) {
            const double c = std::cos(al);
            return coulomb::origin_density(kmax * std::sin(al)) * c * c;
        },
        0.0, 0.5 * pi, s);
    return E / (4.0 * pi * pi * std::sqrt(opt.cK * opt.cK * opt.cK * opt.ck)) * integral;
}

double g0_real(double E, std::optional<double> cutoff, const DosOptions& opt) {
    if (!cutoff) throw CutoffRequired("g0_real: a bandwidth cutoff W must be supplied");
    const double W = *cutoff;
    if (!(W > 0.0) || !std::isfinite(W)) throw DomainError("g0_real: cutoff must be positive");
    if (!std::isfinite(E)) throw DomainError("g0_real: energy must be finite");
    if (E == W) throw DomainError("g0_real: E at the cutoff edge is logarithmically divergent");
    const quad::RealIntegrand rho = [&](double x) { return g0_dos(x, opt); };
    quad::QuadratureSpec s;
    s.rel_tol = 1e-9;
    s.abs_tol = 1e-14;
    if (E > 0.0 && E < W) return -quad::principal_value(rho, E, 0.0, W, s);
    return quad::integrate_real([&](double x) { return rho(x) / (E - x); }, 0.0, W, s);
}

}  // namespace pairgf::pair
