#include "pairgf/special.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <limits>
#include <optional>

#include "pairgf/quadrature.hpp"

namespace pairgf::special {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double inf = std::numeric_limits<double>::infinity();

// Cancellation budgets for the convergent series.
constexpr double w_series_max_loss = 1e4;
constexpr double m_series_max_loss = 1e4;
constexpr double m_start_max_loss = 1e3;

std::atomic<long> g_warnings{0};

ScaledValue with_prefactor(Complex log_pre, Complex v, Complex d, double extra_log = 0.0) {
    const Complex phase = std::exp(Complex(0.0, log_pre.imag()));
    return {v * phase, d * phase, log_pre.real() + extra_log};
}

void renormalize(ScaledValue& s) {
    const double mag = std::max(std::abs(s.value), std::abs(s.derivative));
    if (mag > 1e100 || (mag > 0.0 && mag < 1e-100)) {
        s.value /= mag;
        s.derivative /= mag;
        s.log_scale += std::log(mag);
    }
}

// DLMF 13.19.3 multiplied by Gamma(1/2+mu-kappa). Empty unless the series
// reaches machine precision before its terms start to grow.
std::optional<ScaledValue> w_asymptotic(Complex kappa, double mu, Complex z) {
    const Complex a = 0.5 + mu - kappa;
    const Complex c = 0.5 - mu - kappa;
    Complex term = 1.0, sum = 1.0, dsum = 0.0;
    bool converged = false;
    for (int s = 1; s < 400; ++s) {
        const Complex next = term * (a + double(s - 1)) * (c + double(s - 1)) / (double(s) * -z);
        const double an = std::abs(next);
        if (an == 0.0) {
            converged = true;
            break;
        }
        if (s > 1 && an >= std::abs(term)) break;
        term = next;
        sum += term;
        dsum -= double(s) * term / z;
        if (an <= 0.5 * eps * std::abs(sum)) {
            converged = true;
            break;
        }
    }
    if (!converged) return std::nullopt;
    const Complex log_pre = lgamma(a) - 0.5 * z + kappa * std::log(z);
    return with_prefactor(log_pre, sum, (-0.5 + kappa / z) * sum + dsum);
}

// DLMF 13.2.9 multiplied by Gamma(a) (no gamma functions of a remain), written
// as z^{m-n} (n-1)! H(z) with H = z^n F / (n-1)!.
ScaledValue w_log_series(Complex kappa, double mu, Complex z, double& loss) {
    const int n = int(std::lround(2.0 * mu));
    const double m = mu + 0.5;
    const Complex a = m - kappa;
    constexpr double euler_gamma = 0.57721566490153286061;

    Complex log_c = 0.0;
    bool zero_c = false;
    for (int j = 0; j < n; ++j) {
        const Complex f = a - double(n) + double(j);
        if (f == 0.0) zero_c = true;
        else log_c += std::log(f);
    }
    log_c -= std::lgamma(double(n + 1)) + std::lgamma(double(n));
    const Complex c_hat = zero_c ? Complex(0.0) : ((n + 1) % 2 == 0 ? 1.0 : -1.0) * std::exp(log_c);

    double maxterm = 0.0;
    Complex h = 0.0, dh = 0.0;
    const Complex lz = std::log(z);

    if (c_hat != 0.0) {
        Complex tau = 1.0;
        Complex psi_a = digamma(a);
        double harm_k = 0.0, harm_nk = 0.0;
        for (int j = 1; j <= n; ++j) harm_nk += 1.0 / j;
        Complex zp = std::pow(z, n);  // z^{k+n}
        bool done = false;
        for (int k = 0; k < 4000; ++k) {
            const Complex l = lz + psi_a + 2.0 * euler_gamma - harm_k - harm_nk;
            const Complex t = c_hat * tau * zp;
            const Complex term = t * l;
            const Complex dterm = t / z * (double(k + n) * l + 1.0);
            h += term;
            dh += dterm;
            maxterm = std::max(maxterm, std::abs(term));
            const double ratio = std::abs((a + double(k)) * z / (double(n + 1 + k) * double(k + 1)));
            if (k > 2 && ratio < 0.5 && std::abs(term) + std::abs(dterm * z) <= 1e-18 * maxterm) {
                done = true;
                break;
            }
            tau *= (a + double(k)) / (double(n + 1 + k) * double(k + 1));
            zp *= z;
            psi_a += 1.0 / (a + double(k));
            harm_k += 1.0 / (k + 1);
            harm_nk += 1.0 / (n + k + 1);
        }
        if (!done) {
            loss = inf;
            return {};
        }
    }

    // Finite part: sum_{k=1}^{n} e_k z^{n-k}, e_n = 1.
    Complex e = 1.0;
    for (int k = n; k >= 1; --k) {
        if (k < n) e *= (1.0 - a + double(k)) / (double(k) * double(n - k));
        const Complex zpow = std::pow(z, n - k);
        const Complex term = e * zpow;
        h += term;
        if (n - k > 0) dh += e * double(n - k) * std::pow(z, n - k - 1);
        maxterm = std::max(maxterm, std::abs(term));
    }

    const double hm = std::abs(h);
    loss = hm > 0 ? maxterm / hm : inf;
    const Complex log_pre = -0.5 * z + (m - n) * lz + std::lgamma(double(n));
    return with_prefactor(log_pre, h, (-0.5 + (m - n) / z) * h + dh);
}

ScaledValue m_series(Complex kappa, double mu, Complex z, double& loss) {
    const int n = int(std::lround(2.0 * mu));
    const double m = mu + 0.5;
    const Complex a = m - kappa;
    const double b = n + 1;
    Complex term = 1.0, sum = 1.0, dsum = 0.0;
    double maxterm = 1.0, extra = 0.0;
    bool done = false;
    for (int k = 0; k < 20000; ++k) {
        term *= (a + double(k)) * z / ((b + k) * double(k + 1));
        sum += term;
        dsum += double(k + 1) * term / z;
        const double at = std::abs(term);
        maxterm = std::max(maxterm, at);
        if (at > 1e200) {
            term *= 1e-200;
            sum *= 1e-200;
            dsum *= 1e-200;
            maxterm *= 1e-200;
            extra += 200.0 * std::log(10.0);
        }
        const double ratio = std::abs((a + double(k + 1)) * z / ((b + k + 1) * double(k + 2)));
        if (at <= 1e-17 * std::abs(sum) && ratio < 0.5) {
            done = true;
            break;
        }
        if (at == 0.0) {
            done = true;
            break;
        }
    }
    const double sm = std::abs(sum);
    loss = (done && sm > 0) ? maxterm / sm : inf;
    const Complex log_pre = -0.5 * z + m * std::log(z) - std::lgamma(b);
    return with_prefactor(log_pre, sum, (-0.5 + m / z) * sum + dsum, extra);
}

// One Taylor step of z^2 f'' + (-z^2/4 + kappa z + c) f = 0 from z0 to z0 + h.
void taylor_step(Complex kappa, double c, Complex z0, Complex h, ScaledValue& s) {
    const Complex p0 = -0.25 * z0 * z0 + kappa * z0 + c;
    const Complex p1 = -0.5 * z0 + kappa;
    const double p2 = -0.25;
    const Complex z02 = z0 * z0;
    const Complex h2 = h * h, h3 = h2 * h, h4 = h3 * h;

    // Scaled coefficients b_n = a_n h^n in a rolling window b_{m-2} .. b_{m+1}.
    Complex bm2 = 0.0, bm1 = 0.0, bm = s.value, bp = s.derivative * h;
    Complex f = bm + bp;
    Complex df = bp;
    const double scale0 = std::max(std::abs(bm), std::abs(bp));
    for (int m = 0; m < 600; ++m) {
        const double md = m;
        const Complex next = -(2.0 * z0 * (md + 1.0) * md * bp * h + (md * (md - 1.0) + p0) * bm * h2 +
                               p1 * bm1 * h3 + p2 * bm2 * h4) /
                             (z02 * (md + 2.0) * (md + 1.0));
        f += next;
        df += (md + 2.0) * next;
        bm2 = bm1;
        bm1 = bm;
        bm = bp;
        bp = next;
        const double scale = std::max({std::abs(f), std::abs(df), scale0});
        if (m > 2 && std::abs(bp) + std::abs(bm) + std::abs(bm1) <= 1e-18 * scale) {
            s.value = f;
            s.derivative = df / h;
            return;
        }
    }
    throw NonConvergence("whittaker: Taylor continuation step failed to converge");
}

ScaledValue propagate(Complex kappa, double mu, ScaledValue s, Complex from, Complex to) {
    const double c = 0.25 - mu * mu;
    Complex pos = from;
    for (int guard = 0; guard < 2000000; ++guard) {
        const Complex rem = to - pos;
        const double dist = std::abs(rem);
        if (dist == 0.0) return s;
        const Complex q = -0.25 + kappa / pos + c / (pos * pos);
        const double hmax = std::min({0.45 * std::abs(pos), 2.5 / std::sqrt(std::abs(q)), 6.0});
        const bool last = dist <= hmax;
        const Complex h = last ? rem : rem * (hmax / dist);
        taylor_step(kappa, c, pos, h, s);
        pos = last ? to : pos + h;
        renormalize(s);
    }
    throw NonConvergence("whittaker: continuation path too long");
}

// DLMF 13.16.5 times Gamma(1/2+mu-kappa), on the ray t = e^{i phi} s with
// phi = -arg z so that e^{-zt} decays. Needs Re(1/2+mu-kappa) > 0. Used when
// |kappa| is large: the asymptotic series then starts near |z| ~ |kappa|^2.
std::optional<ScaledValue> w_laplace(Complex kappa, double mu, Complex z) {
    const Complex alpha = mu - kappa - 0.5, beta = mu + kappa - 0.5;
    if (!((alpha + 1.0).real() > 0.0)) return std::nullopt;
    const double az = std::abs(z), phi = -std::arg(z);
    if (std::abs(phi) >= pi) return std::nullopt;
    const Complex ray = std::exp(Complex(0.0, phi));
    // alpha log t + beta log(1+t) regrouped so that nothing of size |kappa| cancels.
    auto expo = [&](double x) {
        const Complex w = 1.0 / (ray * x);
        const Complex log1p_w(0.5 * std::log1p(2.0 * w.real() + std::norm(w)), std::atan2(w.imag(), 1.0 + w.real()));
        return -az * x + (alpha + beta) * (std::log(x) + Complex(0.0, phi)) + beta * log1p_w;
    };

    double peak = 1.0, shift = -inf;
    for (int i = 0; i <= 480; ++i) {
        const double x = std::pow(10.0, -12.0 + i * 0.05) / az;
        const double e = expo(x).real();
        if (e > shift) {
            shift = e;
            peak = x;
        }
    }
    if (!std::isfinite(shift)) return std::nullopt;

    quad::QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    spec.abs_tol = 1e-16 * peak;
    spec.max_evaluations = 400'000;
    auto f0 = [&](double x) { return x == 0.0 ? Complex(0.0) : std::exp(expo(x) - shift); };
    auto f1 = [&](double x) { return x * f0(x); };
    quad::QuadratureSpec tail = spec;
    tail.transform = quad::Transform::InverseTail;
    Complex i0, i1;
    try {
        i0 = ray * (quad::integrate(f0, 0.0, peak, spec).value + quad::integrate(f0, peak, inf, tail).value);
        i1 = ray * ray * (quad::integrate(f1, 0.0, peak, spec).value + quad::integrate(f1, peak, inf, tail).value);
    } catch (const NumericalError&) {
        return std::nullopt;
    }
    const double m = mu + 0.5;
    const Complex log_pre = m * std::log(z) - 0.5 * z;
    return with_prefactor(log_pre, i0, (m / z - 0.5) * i0 - i1, shift);
}

void check_finite(const ScaledValue& s, const char* what) {
    if (!is_finite(s.value) || !is_finite(s.derivative) || !std::isfinite(s.log_scale))
        throw NumericalError(std::string("whittaker: non-finite value for ") + what);
}

}  // namespace

void validate(const WhittakerIndex& idx) {
    const double two_mu = 2.0 * idx.mu;
    if (!(two_mu >= 1.0) || two_mu != std::floor(two_mu) || two_mu > 300.0)
        throw DomainError("whittaker: 2mu must be a positive integer");
    if (!is_finite(idx.kappa)) throw DomainError("whittaker: kappa is not finite");
}

ScaledValue whittaker_w_normalized(const WhittakerIndex& idx, Complex z) {
    validate(idx);
    if (z == 0.0 || !is_finite(z)) throw DomainError("whittaker: z must be finite and nonzero");
    const Complex kappa = idx.kappa;
    const double mu = idx.mu;

    if (auto s = w_asymptotic(kappa, mu, z)) {
        check_finite(*s, "W");
        return *s;
    }
    if (std::abs(z) <= 40.0) {
        double loss = inf;
        ScaledValue s = w_log_series(kappa, mu, z, loss);
        if (loss <= w_series_max_loss && is_finite(s.value) && is_finite(s.derivative)) return s;
    }
    if (std::abs(kappa) >= 30.0) {
        if (auto s = w_laplace(kappa, mu, z)) {
            check_finite(*s, "W");
            return *s;
        }
    }
    // Start where the asymptotic series converges and continue inward along the ray.
    const Complex dir = z / std::abs(z);
    double radius = std::max(2.0 * std::abs(z), 20.0);
    for (; radius < 2e5; radius *= 1.5) {
        const Complex start = radius * dir;
        if (auto s = w_asymptotic(kappa, mu, start)) {
            ScaledValue out = propagate(kappa, mu, *s, start, z);
            check_finite(out, "W");
            return out;
        }
    }
    throw NonConvergence("whittaker: no convergent starting point for W");
}

ScaledValue whittaker_m(const WhittakerIndex& idx, Complex z) {
    validate(idx);
    if (z == 0.0 || !is_finite(z)) throw DomainError("whittaker: z must be finite and nonzero");
    const Complex kappa = idx.kappa;
    const double mu = idx.mu;

    double loss = inf;
    ScaledValue s = m_series(kappa, mu, z, loss);
    if (loss <= m_series_max_loss) {
        check_finite(s, "M");
        return s;
    }
    // Start closer to the origin and continue outward along the ray.
    const Complex dir = z / std::abs(z);
    for (double rho = std::min(0.5 * std::abs(z), 8.0); rho > 1e-3; rho *= 0.5) {
        const Complex start = rho * dir;
        ScaledValue s0 = m_series(kappa, mu, start, loss);
        if (loss <= m_start_max_loss) {
            ScaledValue out = propagate(kappa, mu, s0, start, z);
            check_finite(out, "M");
            return out;
        }
    }
    throw NonConvergence("whittaker: no accurate starting point for M");
}

NormalizedPair whittaker_pair_normalized(const WhittakerIndex& idx, Complex z, const WhittakerOptions& opt) {
    NormalizedPair p{whittaker_w_normalized(idx, z), whittaker_m(idx, z), 0.0};
    const Complex wr =
        (p.w.value * p.m.derivative - p.m.value * p.w.derivative) * std::exp(p.w.log_scale + p.m.log_scale);
    p.wronskian_residual = std::abs(wr - 1.0);
    if (!(p.wronskian_residual <= opt.wronskian_tol)) {
        if (opt.mode == WronskianMode::Strict)
            throw WronskianViolation("whittaker: Wronskian residual exceeds tolerance", p.wronskian_residual);
        if (g_warnings.fetch_add(1) == 0)
            std::fprintf(stderr, "warning: Wronskian residual %.3e exceeds tolerance %.1e (further warnings counted)\n",
                         p.wronskian_residual, opt.wronskian_tol);
    }
    return p;
}

WhittakerEval whittaker_pair(const WhittakerIndex& idx, Complex z, const WhittakerOptions& opt) {
    const NormalizedPair p = whittaker_pair_normalized(idx, z, opt);
    const ScaledValue& w = p.w;
    const ScaledValue& m = p.m;

    // Undo the Gamma normalisation of W and balance the two exponents.
    const Complex lg = lgamma(0.5 + idx.mu - idx.kappa);
    const Complex phase = std::exp(Complex(0.0, -lg.imag()));
    const double sw = w.log_scale - lg.real();
    const double sm = m.log_scale;
    auto logmag = [](const ScaledValue& s) {
        const double mag = std::max(std::abs(s.value), std::abs(s.derivative));
        return mag > 0 ? std::log(mag) : 0.0;
    };
    const double s = 0.5 * ((sm + logmag(m)) - (sw + logmag(w)));

    WhittakerEval out;
    out.m = m.value * std::exp(sm - s);
    out.m_prime = m.derivative * std::exp(sm - s);
    out.w = w.value * phase * std::exp(sw + s);
    out.w_prime = w.derivative * phase * std::exp(sw + s);
    out.log_scale = s;
    out.wronskian_residual = p.wronskian_residual;
    return out;
}

long wronskian_warning_count() { return g_warnings.load(); }
void reset_wronskian_warning_count() { g_warnings.store(0); }

double bessel_j(int n, double x) {
    if (n < 0 || n > 2) throw DomainError("bessel_j: order must be 0, 1 or 2");
    if (!(x >= 0.0)) throw DomainError("bessel_j: argument must be non-negative");
    return std::cyl_bessel_j(double(n), x);
}

}  // namespace pairgf::special
