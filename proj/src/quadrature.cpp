#include "pairgf/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace pairgf::quad {

namespace {

// Kronrod 15 abscissae (non-negative half) with Kronrod and embedded Gauss 7 weights.
constexpr double xk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                          0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                          0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                          0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                          0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                          0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                          0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    Complex value;
    double err;
    int depth;
};

struct ByError {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.a > y.a;
    }
};

Panel gk15(const ComplexIntegrand& g, double a, double b, int depth) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const Complex fc = g(c);
    Complex k = wk[7] * fc, gs = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xk[j];
        const Complex f1 = g(c - dx), f2 = g(c + dx);
        k += wk[j] * (f1 + f2);
        if (j % 2 == 1) gs += wg[j / 2] * (f1 + f2);
    }
    k *= h;
    gs *= h;
    double err = std::abs(k - gs);
    if (!is_finite(k)) err = std::numeric_limits<double>::infinity();
    return {a, b, k, err, depth};
}

// Integrand in the mapped variable and its interval.
struct Mapped {
    ComplexIntegrand g;
    double lo, hi;
};

Mapped apply_transform(const ComplexIntegrand& f, double a, double b, Transform t) {
    switch (t) {
        case Transform::None:
            return {f, a, b};
        case Transform::SinEndpoint: {
            const double len = b - a;
            return {[f, a, len](double th) { return f(a + len * std::sin(th)) * (len * std::cos(th)); }, 0.0,
                    0.5 * pi};
        }
        case Transform::InverseTail:
            if (a > 0)
                return {[f, a](double t) { return f(a / t) * (a / (t * t)); }, 0.0, 1.0};
            return {[f, a](double t) { return f(a + (1.0 - t) / t) / (t * t); }, 0.0, 1.0};
    }
    return {f, a, b};
}

}  // namespace

void validate(const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) throw DomainError("quadrature: tolerances must be positive");
    if (spec.max_depth < 1) throw DomainError("quadrature: max_depth must be at least 1");
}

QuadratureResult integrate(const ComplexIntegrand& f, double a, double b, const QuadratureSpec& spec) {
    validate(spec);
    if (spec.transform == Transform::InverseTail) {
        if (!std::isfinite(a)) throw DomainError("quadrature: InverseTail needs a finite lower limit");
    } else if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("quadrature: need finite a < b");
    }
    const Mapped m = apply_transform(f, a, b, spec.transform);

    long evals = 0;
    const ComplexIntegrand counted = [&](double x) {
        ++evals;
        return m.g(x);
    };

    int panels = 1;
    if (spec.max_panel_width > 0.0) {
        const double n = std::ceil((m.hi - m.lo) / spec.max_panel_width);
        panels = int(std::clamp(n, 1.0, 100000.0));
    }

    std::priority_queue<Panel, std::vector<Panel>, ByError> work;
    std::vector<Panel> frozen;
    Complex total = 0.0;
    double total_err = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = m.lo + (m.hi - m.lo) * i / panels;
        const double x1 = i + 1 == panels ? m.hi : m.lo + (m.hi - m.lo) * (i + 1) / panels;
        Panel p = gk15(counted, x0, x1, 0);
        total += p.value;
        total_err += p.err;
        work.push(p);
    }

    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    while (total_err > tolerance() && !work.empty()) {
        if (evals > spec.max_evaluations) break;
        Panel p = work.top();
        work.pop();
        const double mid = 0.5 * (p.a + p.b);
        if (p.depth >= spec.max_depth || !(mid > p.a && mid < p.b)) {
            frozen.push_back(p);
            continue;
        }
        Panel l = gk15(counted, p.a, mid, p.depth + 1);
        Panel r = gk15(counted, mid, p.b, p.depth + 1);
        total += l.value + r.value - p.value;
        total_err += l.err + r.err - p.err;
        work.push(l);
        work.push(r);
    }

    // Re-sum in a fixed order so the result does not depend on heap history.
    std::vector<Panel> all = std::move(frozen);
    while (!work.empty()) {
        all.push_back(work.top());
        work.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    Complex value = 0.0;
    double err = 0.0;
    for (const Panel& p : all) {
        value += p.value;
        err += p.err;
    }

    QuadratureResult res{value, err, evals};
    if (!is_finite(value)) throw NumericalError("quadrature: integrand produced a non-finite value");
    if (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(value)))
        throw ToleranceNotMet("quadrature: tolerance not met", value, err);
    return res;
}

double integrate_real(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec) {
    return integrate([&f](double x) { return Complex(f(x), 0.0); }, a, b, spec).value.real();
}

double principal_value(const RealIntegrand& f, double x0, double a, double b, const QuadratureSpec& spec) {
    if (!(a < x0 && x0 < b)) throw DomainError("principal_value: need a < x0 < b");
    const double f0 = f(x0);
    if (!std::isfinite(f0)) throw NumericalError("principal_value: f(x0) is not finite");
    const RealIntegrand g = [&](double x) { return x == x0 ? 0.0 : (f(x) - f0) / (x - x0); };
    QuadratureSpec s = spec;
    s.transform = Transform::None;
    const double left = integrate_real(g, a, x0, s);
    const double right = integrate_real(g, x0, b, s);
    return left + right + f0 * std::log((b - x0) / (x0 - a));
}

}  // namespace pairgf::quad
