#include "pairgf/special.hpp"

#include <algorithm>
#include <limits>

namespace pairgf::special {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

bool nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Returns the series value and its estimated relative error. Summed in
// extended precision so moderate cancellation stays below double rounding.
std::pair<Complex, double> kummer_series(Complex a, Complex b, Complex z) {
    using LC = std::complex<long double>;
    const LC al(a), bl(b), zl(z);
    constexpr long double leps = std::numeric_limits<long double>::epsilon();
    LC term = 1.0L, sum = 1.0L;
    long double maxterm = 1.0L;
    for (int k = 0; k < 20000; ++k) {
        term *= (al + (long double)k) * zl / ((bl + (long double)k) * (long double)(k + 1));
        sum += term;
        const long double at = std::abs(term);
        maxterm = std::max(maxterm, at);
        if (at == 0.0L) break;
        const double ratio = std::abs((a + double(k + 1)) * z / ((b + double(k + 1)) * double(k + 2)));
        if (at <= leps * std::abs(sum) && ratio < 0.5) {
            const long double s = std::abs(sum);
            const double err = s > 0 ? double(2.0L * leps * maxterm / s) + eps : std::numeric_limits<double>::infinity();
            return {Complex(double(sum.real()), double(sum.imag())), err};
        }
        if (!std::isfinite(at)) break;
    }
    return {Complex(double(sum.real()), double(sum.imag())), std::numeric_limits<double>::infinity()};
}

// Sum of an asymptotic series truncated at its smallest term.
// term_{s+1} = term_s * (p + s)(q + s) / ((s+1) x)
std::pair<Complex, double> asymptotic_sum(Complex p, Complex q, Complex x) {
    Complex term = 1.0, sum = 1.0;
    double last = 1.0;
    for (int s = 0; s < 500; ++s) {
        const Complex next = term * (p + double(s)) * (q + double(s)) / (double(s + 1) * x);
        const double an = std::abs(next);
        if (an == 0.0) return {sum, 0.0};
        if (an >= last) return {sum, last};
        term = next;
        sum += term;
        last = an;
        if (an <= eps * std::abs(sum)) return {sum, an};
    }
    return {sum, last};
}

}  // namespace

Complex hyp1f1(Complex a, Complex b, Complex z, double tol) {
    if (nonpositive_integer(b)) throw PoleError("hyp1f1: b is a non-positive integer");
    if (z == 0.0) return 1.0;

    auto [series, series_err] = kummer_series(a, b, z);
    if (series_err <= tol && is_finite(series)) return series;

    // DLMF 13.7.2, upper sign for -pi/2 < ph z < 3pi/2.
    const double ph = std::arg(z);
    const Complex sgn = ph > -pi / 2 ? 1.0 : -1.0;
    const Complex lz = std::log(z);
    Complex t1 = 0.0, t2 = 0.0;
    double e1 = 0.0, e2 = 0.0;
    if (!nonpositive_integer(b - a)) {
        auto [s1, r1] = asymptotic_sum(a, a - b + 1.0, -z);
        const Complex pre = std::exp(sgn * I * pi * a - a * lz - lgamma(b - a) + lgamma(b));
        t1 = pre * s1;
        e1 = std::abs(pre) * r1;
    }
    if (!nonpositive_integer(a)) {
        auto [s2, r2] = asymptotic_sum(b - a, 1.0 - a, z);
        const Complex pre = std::exp(z + (a - b) * lz - lgamma(a) + lgamma(b));
        t2 = pre * s2;
        e2 = std::abs(pre) * r2;
    }
    const Complex value = t1 + t2;
    if (is_finite(value) && e1 + e2 <= tol * std::abs(value)) return value;
    throw NonConvergence("hyp1f1: neither the series nor the asymptotic expansion reached tolerance");
}

}  // namespace pairgf::special
