#include "pairgf/coulomb_gf.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace pairgf::coulomb {

namespace {

using special::NormalizedPair;
using special::ScaledValue;
using special::WhittakerIndex;

// log(1e-300)
constexpr double suppression_log = -690.7755278982137;

struct Setup {
    CoulombParams p;
    Complex kappa;
    GfKind kind;
    bool suppressed;
};

Setup setup(double E, const CoulombOptions& opt) {
    Setup s;
    s.p = coulomb_params(E, opt.ck, opt.interaction);
    s.kappa = I * s.p.nu;
    s.kind = E < 0 ? GfKind::NegativeEnergyReal
                   : (opt.branch == Branch::Advanced ? GfKind::Advanced : GfKind::Retarded);
    s.suppressed = E > 0 && opt.interaction == Interaction::Repulsive &&
                   2.0 * special::lgamma(1.0 - I * s.p.nu).real() < suppression_log;
    return s;
}

// Below the Gamow threshold the imaginary part is under 1e-300 relative and is
// returned as exact zero; the real part stays continuous through E = 0.
GfValue finish(const Setup& s, Complex v) {
    if (!is_finite(v)) throw NumericalError("coulomb: non-finite Green's function value");
    if (s.suppressed) v = Complex(v.real(), 0.0);
    if (s.kind == GfKind::Advanced) v = std::conj(v);
    return {v, s.kind, s.suppressed};
}

}  // namespace

CoulombParams coulomb_params(double E, double ck, Interaction interaction) {
    if (!(ck > 0.0) || !std::isfinite(ck)) throw DomainError("coulomb_params: c_k must be positive");
    if (!std::isfinite(E)) throw DomainError("coulomb_params: energy must be finite");
    CoulombParams p;
    p.energy = E;
    p.ck = ck;
    if (E > 0) p.k = std::sqrt(E / ck);
    else p.k = Complex(0.0, std::sqrt(-E / ck));
    if (interaction == Interaction::Free) {
        p.nu = 0.0;
    } else {
        if (E == 0.0) throw DomainError("coulomb_params: E = 0 is the Coulomb threshold");
        p.nu = -1.0 / p.k;
    }
    return p;
}

GfValue gc_closed(const Vec3& r1, const Vec3& r2, double E, const CoulombOptions& opt) {
    const double d = norm(r1 - r2);
    if (d == 0.0) throw CoincidentArguments("gc_closed: r1 = r2");
    const Setup s = setup(E, opt);
    const double a = norm(r1), b = norm(r2);
    const Complex ik = I * s.p.k;
    const WhittakerIndex idx{s.kappa, 0.5};

    const NormalizedPair pu = special::whittaker_pair_normalized(idx, -ik * (a + b + d), opt.whittaker);
    const double v = std::max(a + b - d, 0.0);
    ScaledValue mv{0.0, 1.0, 0.0};  // M(0) = 0, M'(0) = 1
    if (v > 0.0) mv = special::whittaker_m(idx, -ik * v);

    const Complex bracket = (pu.w.value * mv.derivative - mv.value * pu.w.derivative) *
                            std::exp(pu.w.log_scale + mv.log_scale);
    return finish(s, -bracket / (4.0 * pi * d * s.p.ck));
}

GfValue gc_radial_l(int l, double r1, double r2, double E, const CoulombOptions& opt) {
    if (l < 0) throw DomainError("gc_radial_l: l must be non-negative");
    if (!(r1 > 0.0) || !(r2 > 0.0)) throw DomainError("gc_radial_l: radii must be positive");
    const Setup s = setup(E, opt);
    const double rl = std::min(r1, r2), rg = std::max(r1, r2);
    const Complex ik = I * s.p.k;
    const WhittakerIndex idx{s.kappa, l + 0.5};
    const NormalizedPair lo = special::whittaker_pair_normalized(idx, -2.0 * ik * rl, opt.whittaker);
    const NormalizedPair hi = special::whittaker_pair_normalized(idx, -2.0 * ik * rg, opt.whittaker);
    const Complex prod = lo.m.value * hi.w.value * std::exp(lo.m.log_scale + hi.w.log_scale);
    return finish(s, prod / (2.0 * ik * (r1 * r2) * s.p.ck));
}

GfValue gc_pw_sum(double r1, double r2, double cos_angle, double E, int l_max, Parity parity,
                  const CoulombOptions& opt, double tail_tol) {
    if (!(std::abs(cos_angle) <= 1.0)) throw DomainError("gc_pw_sum: |cos_angle| must not exceed 1");
    if (l_max < 0) throw DomainError("gc_pw_sum: l_max must be non-negative");
    const Setup s = setup(E, opt);

    Complex sum = 0.0;
    std::vector<double> mags;
    double p_prev = 0.0, p = 1.0;  // P_{l-1}, P_l
    for (int l = 0; l <= l_max; ++l) {
        if (l > 0) {
            const double next = ((2.0 * l - 1.0) * cos_angle * p - (l - 1.0) * p_prev) / l;
            p_prev = p;
            p = next;
        }
        const bool take = parity == Parity::All || (parity == Parity::EvenL) == (l % 2 == 0);
        if (!take) continue;
        const GfValue g = gc_radial_l(l, r1, r2, E, opt);
        const Complex gl = s.kind == GfKind::Advanced ? std::conj(g.value) : g.value;
        sum += (2.0 * l + 1.0) / (4.0 * pi) * p * gl;
        mags.push_back((2.0 * l + 1.0) / (4.0 * pi) * std::abs(gl));
    }
    // Tail bound from the geometric ratio of the last three magnitudes (|P_l| <= 1).
    const std::size_t n = mags.size();
    if (n >= 3 && mags[n - 1] > 0.0) {
        const double q = std::sqrt(mags[n - 1] / std::max(mags[n - 3], 1e-300));
        const double tail = q < 1.0 ? mags[n - 1] * q / (1.0 - q) : std::numeric_limits<double>::infinity();
        if (tail > tail_tol * std::max(std::abs(sum), 1e-300))
            throw NonConvergence("gc_pw_sum: partial-wave tail exceeds tolerance at l_max");
    }
    return finish(s, sum);
}

GfValue gc_coincident_regular(double r, double E, const CoulombOptions& opt) {
    if (!(r > 0.0)) throw DomainError("gc_coincident_regular: r must be positive");
    const Setup s = setup(E, opt);
    const Complex ik = I * s.p.k;
    const Complex z = -2.0 * ik * r;
    const NormalizedPair q = special::whittaker_pair_normalized({s.kappa, 0.5}, z, opt.whittaker);
    const Complex bracket = (2.0 * q.m.derivative * q.w.derivative +
                             2.0 * q.m.value * q.w.value * (s.kappa / z - 0.25)) *
                            std::exp(q.m.log_scale + q.w.log_scale);
    return finish(s, ik / (4.0 * pi * s.p.ck) * bracket);
}

GfValue gc_antipodal(double r, double E, const CoulombOptions& opt) {
    if (!(r > 0.0)) throw DomainError("gc_antipodal: r must be positive");
    const Setup s = setup(E, opt);
    const Complex ik = I * s.p.k;
    const NormalizedPair q = special::whittaker_pair_normalized({s.kappa, 0.5}, -4.0 * ik * r, opt.whittaker);
    return finish(s, -q.w.value * std::exp(q.w.log_scale) / (8.0 * pi * r * s.p.ck));
}

double origin_density(double k) {
    if (!(k > 0.0)) return 0.0;
    return k / (pi * std::expm1(2.0 * pi / k));
}

}  // namespace pairgf::coulomb
