#include "pairgf/ldos.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "pairgf/quadrature.hpp"

namespace pairgf::ldos {

namespace {

// -(1/2 pi^3) Im of the K integral of g(eps_K) K^2 over (0, K_m), with K = K_m sin(theta).
double k_integral(const std::function<Complex(double)>& g, double E, double phase, const LdosOptions& opt) {
    const double km = std::sqrt(E / opt.cK);
    quad::QuadratureSpec s;
    s.rel_tol = opt.rel_tol;
    s.abs_tol = opt.abs_tol;
    s.max_panel_width = 0.5 * pi / (std::ceil(phase / pi) + 1.0);
    const double v = quad::integrate_real(
        [&](double th) {
            const double K = km * std::sin(th), c = std::cos(th);
            return g(E * c * c).imag() * K * K * km * c;
        },
        0.0, 0.5 * pi, s);
    return -v / (2.0 * pi * pi * pi);
}

}  // namespace

Components rho_components(double r, double E, const LdosOptions& opt) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("rho_components: r must be positive");
    if (!std::isfinite(E)) throw DomainError("rho_components: energy must be finite");
    if (!(opt.cK > 0.0) || !(opt.ck > 0.0)) throw DomainError("rho_components: kinetic coefficients must be positive");
    if (E <= 0.0) return {};

    coulomb::CoulombOptions c;
    c.ck = opt.ck;
    c.interaction = opt.interaction;
    c.whittaker = opt.whittaker;
    const double kr = std::sqrt(E / opt.ck) * r;
    auto reg = [&](double eps) { return coulomb::gc_coincident_regular(r, eps, c).value; };
    auto anti = [&](double eps) { return coulomb::gc_antipodal(r, eps, c).value; };
    return {k_integral(reg, E, 2.0 * kr, opt), k_integral(anti, E, 4.0 * kr, opt)};
}

LdosPoint rho_point(double r, double E, const LdosOptions& opt) {
    const Components c = rho_components(r, E, opt);
    LdosPoint p;
    p.r = r;
    p.E = E;
    p.rho_plus = c.rho_plus;
    p.rho_minus = c.rho_minus;
    p.rho_even = 0.5 * (c.rho_plus + c.rho_minus);
    p.rho_odd = 0.5 * (c.rho_plus - c.rho_minus);
    p.rho_total = 2.0 * c.rho_plus - c.rho_minus;
    p.rho_spinless = 2.0 * c.rho_plus;
    return p;
}

std::vector<LdosPoint> rho_grid(const std::vector<double>& r, const std::vector<double>& E, const LdosOptions& opt,
                                int threads) {
    const std::size_t n = r.size() * E.size();
    std::vector<LdosPoint> out(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = rho_point(r[i % r.size()], E[i / r.size()], opt);
            } catch (...) {
                std::lock_guard<std::mutex> g(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int nt = std::clamp(threads, 1, int(std::max<std::size_t>(n, 1)));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

double rho_free(double R, double r, double E) {
    if (!(R >= 0.0) || !(r >= 0.0)) throw DomainError("rho_free: distances must be non-negative");
    if (E <= 0.0) return 0.0;
    const double s = std::sqrt(4.0 * R * R + r * r);
    const double x = std::sqrt(E) * s;
    if (x < 1e-4) return E * E / (16.0 * pi * pi * pi) * (1.0 - x * x / 12.0);
    return E * std::cyl_bessel_j(2.0, x) / (2.0 * pi * pi * pi * s * s);
}

SingleRefs rho_single_refs(double E, double ck) {
    if (!(E > 0.0)) throw DomainError("rho_single_refs: E must be positive");
    if (!(ck > 0.0)) throw DomainError("rho_single_refs: c_k must be positive");
    const double k = std::sqrt(E / ck);
    return {coulomb::origin_density(k) / (2.0 * ck * k), k / (4.0 * pi * pi * ck)};
}

}  // namespace pairgf::ldos
