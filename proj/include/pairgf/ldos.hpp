#pragma once

#include <vector>

#include "pairgf/common.hpp"
#include "pairgf/coulomb_gf.hpp"

namespace pairgf::ldos {

// All densities in r_B^-6; single-particle references in r_B^-3.
struct LdosPoint {
    double r = 0.0;
    double E = 0.0;
    double rho_plus = 0.0;
    double rho_minus = 0.0;
    double rho_even = 0.0;
    double rho_odd = 0.0;
    double rho_total = 0.0;
    double rho_spinless = 0.0;
};

struct LdosOptions {
    double cK = 0.25;
    double ck = 1.0;
    coulomb::Interaction interaction = coulomb::Interaction::Repulsive;
    special::WhittakerOptions whittaker{};
    double rel_tol = 1e-7;
    double abs_tol = 1e-15;
};

struct Components {
    double rho_plus = 0.0;
    double rho_minus = 0.0;
};

// rho_+ and rho_- at inter-electron distance r, both zero for E <= 0.
Components rho_components(double r, double E, const LdosOptions& opt = {});

// Singlet weight 1, triplet weight 3: rho_total = 2 rho_+ - rho_-.
LdosPoint rho_point(double r, double E, const LdosOptions& opt = {});

// Row-major over (E, r); each point is independent so threads only change wall time.
std::vector<LdosPoint> rho_grid(const std::vector<double>& r, const std::vector<double>& E, const LdosOptions& opt = {},
                                int threads = 1);

// -(1/pi) Im of the free pair GF between (R, r) and the origin, c_K = 1/4, c_k = 1.
double rho_free(double R, double r, double E);

struct SingleRefs {
    double rho_c0 = 0.0;  // repulsive Coulomb particle at the origin
    double rho_e0 = 0.0;  // free particle
};
SingleRefs rho_single_refs(double E, double ck = 1.0);

}  // namespace pairgf::ldos
