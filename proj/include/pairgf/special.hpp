#pragma once

#include "pairgf/common.hpp"

namespace pairgf::special {

// Gamma family. lgamma returns some branch of log Gamma; only exp(lgamma) is
// meaningful for complex arguments.
Complex cgamma(Complex z);
Complex lgamma(Complex z);
Complex rgamma(Complex z);
Complex digamma(Complex z);

// Kummer's function 1F1(a; b; z).
Complex hyp1f1(Complex a, Complex b, Complex z, double tol = 1e-12);

struct WhittakerIndex {
    Complex kappa;
    double mu = 0.5;
};

enum class WronskianMode { Strict, Scan };

struct WhittakerOptions {
    double wronskian_tol = 1e-8;
    WronskianMode mode = WronskianMode::Strict;
};

// A solution value and derivative carrying an exponent: the true values are
// exp(log_scale) * (value, derivative).
struct ScaledValue {
    Complex value;
    Complex derivative;
    double log_scale = 0.0;
};

// Buchholz M = M_standard / Gamma(2mu+1) and the standard W, with a shared
// balancing exponent: true M = exp(log_scale) * m, true W = exp(-log_scale) * w.
// Every product M*W, and hence the Wronskian, is independent of log_scale.
// wronskian_residual = |Gamma(1/2+mu-kappa) * (W M' - M W') - 1|.
struct WhittakerEval {
    Complex w;
    Complex w_prime;
    Complex m;
    Complex m_prime;
    double log_scale = 0.0;
    double wronskian_residual = 0.0;
};

void validate(const WhittakerIndex& idx);

// Gamma(1/2+mu-kappa) * W_{kappa,mu}(z), the solution recessive at infinity
// normalised so that its Wronskian with the Buchholz M is exactly 1.
ScaledValue whittaker_w_normalized(const WhittakerIndex& idx, Complex z);
ScaledValue whittaker_m(const WhittakerIndex& idx, Complex z);

// Both solutions with W kept Gamma-normalised, after applying the Wronskian
// monitor with the same policy as whittaker_pair.
struct NormalizedPair {
    ScaledValue w;
    ScaledValue m;
    double wronskian_residual = 0.0;
};
NormalizedPair whittaker_pair_normalized(const WhittakerIndex& idx, Complex z, const WhittakerOptions& opt = {});

WhittakerEval whittaker_pair(const WhittakerIndex& idx, Complex z, const WhittakerOptions& opt = {});

// Process-wide count of Wronskian violations tolerated in Scan mode.
long wronskian_warning_count();
void reset_wronskian_warning_count();

double bessel_j(int n, double x);

}  // namespace pairgf::special
