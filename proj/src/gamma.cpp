#include "pairgf/special.hpp"

#include <cmath>

namespace pairgf::special {

namespace {

// Lanczos g = 7, n = 9.
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log(sin(pi z)) without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
    const double y = z.imag();
    if (std::abs(y) < 20.0) return std::log(std::sin(pi * z));
    if (y > 0) return -I * pi * z + std::log(Complex(0.0, 0.5) * (1.0 - std::exp(2.0 * I * pi * z)));
    return I * pi * z + std::log((1.0 - std::exp(-2.0 * I * pi * z)) / Complex(0.0, 2.0));
}

Complex lgamma_lanczos(Complex z) {
    z -= 1.0;
    Complex x = lanczos_c[0];
    for (int i = 1; i < 9; ++i) x += lanczos_c[i] / (z + double(i));
    const Complex t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

Complex lgamma(Complex z) {
    if (is_pole(z)) throw PoleError("Gamma has a pole at a non-positive integer");
    if (z.real() < 0.5) return std::log(pi) - log_sin_pi(z) - lgamma_lanczos(1.0 - z);
    return lgamma_lanczos(z);
}

Complex cgamma(Complex z) {
    if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 171.0) return std::tgamma(z.real());
    return std::exp(lgamma(z));
}

Complex rgamma(Complex z) {
    if (is_pole(z)) return 0.0;
    return std::exp(-lgamma(z));
}

Complex digamma(Complex z) {
    if (is_pole(z)) throw PoleError("digamma has a pole at a non-positive integer");
    if (z.real() < 0.5) {
        // psi(z) = psi(1-z) - pi cot(pi z)
        Complex cot;
        if (std::abs(z.imag()) > 20.0)
            cot = z.imag() > 0 ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
        else
            cot = std::cos(pi * z) / std::sin(pi * z);
        return digamma(1.0 - z) - pi * cot;
    }
    Complex acc = 0.0;
    while (std::abs(z) < 12.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // Bernoulli tail B_2k / (2k z^2k)
    static constexpr double b[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                                   1.0 / 132, -691.0 / 32760, 1.0 / 12};
    const Complex iz2 = 1.0 / (z * z);
    Complex p = iz2, tail = 0.0;
    for (double c : b) {
        tail += c * p;
        p *= iz2;
    }
    return acc + std::log(z) - 0.5 / z - tail;
}

}  // namespace pairgf::special
