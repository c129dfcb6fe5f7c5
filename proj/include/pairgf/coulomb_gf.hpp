#pragma once

#include "pairgf/common.hpp"
#include "pairgf/special.hpp"

namespace pairgf::coulomb {

// Free forces nu = 0 (the non-interacting reduction).
enum class Interaction { Repulsive, Free };
enum class Branch { Retarded, Advanced };
enum class GfKind { Retarded, Advanced, NegativeEnergyReal };
enum class Parity { All, EvenL, OddL };

struct CoulombParams {
    double energy = 0.0;
    double ck = 1.0;
    Complex k;   // Im k >= 0
    Complex nu;  // -1/k; real for E > 0, imaginary for E < 0
};

struct CoulombOptions {
    double ck = 1.0;
    Interaction interaction = Interaction::Repulsive;
    Branch branch = Branch::Retarded;
    special::WhittakerOptions whittaker{};
};

struct GfValue {
    Complex value;
    GfKind kind = GfKind::Retarded;
    bool suppressed = false;
};

CoulombParams coulomb_params(double E, double ck = 1.0, Interaction interaction = Interaction::Repulsive);

// Single-particle repulsive Coulomb GF and its reductions (atomic units, c_k = 1
// unless overridden). At E > 0 the imaginary part is exactly zero, with
// suppressed = true, once |Gamma(1 - i nu)|^2 drops below 1e-300.
GfValue gc_closed(const Vec3& r1, const Vec3& r2, double E, const CoulombOptions& opt = {});
GfValue gc_radial_l(int l, double r1, double r2, double E, const CoulombOptions& opt = {});
GfValue gc_pw_sum(double r1, double r2, double cos_angle, double E, int l_max, Parity parity = Parity::All,
                  const CoulombOptions& opt = {}, double tail_tol = 1e-6);
GfValue gc_coincident_regular(double r, double E, const CoulombOptions& opt = {});
GfValue gc_antipodal(double r, double E, const CoulombOptions& opt = {});

// Coulomb density at the origin per unit k: k / (pi (exp(2 pi / k) - 1)).
double origin_density(double k);

}  // namespace pairgf::coulomb
