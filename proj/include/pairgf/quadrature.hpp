#pragma once

#include <functional>

#include "pairgf/common.hpp"

namespace pairgf::quad {

enum class Transform {
    None,
    SinEndpoint,  // x = a + (b-a) sin(theta): removes a square-root singularity at b
    InverseTail,  // [a, inf): x = a/t for a > 0, x = a + (1-t)/t otherwise
};

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_depth = 40;
    Transform transform = Transform::None;
    // Initial panels are no wider than this in the integration variable (0: one panel).
    double max_panel_width = 0.0;
    long max_evaluations = 5'000'000;
};

struct QuadratureResult {
    Complex value;
    double err_est = 0.0;
    long evaluations = 0;
};

using ComplexIntegrand = std::function<Complex(double)>;
using RealIntegrand = std::function<double(double)>;

void validate(const QuadratureSpec& spec);

// Globally adaptive Gauss-Kronrod (7, 15). Throws ToleranceNotMet when the
// subdivision budget runs out before the error estimate meets the tolerance.
QuadratureResult integrate(const ComplexIntegrand& f, double a, double b, const QuadratureSpec& spec = {});
double integrate_real(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec = {});

// Cauchy principal value of the integral of f(x)/(x - x0) over [a, b].
double principal_value(const RealIntegrand& f, double x0, double a, double b, const QuadratureSpec& spec = {});

}  // namespace pairgf::quad
