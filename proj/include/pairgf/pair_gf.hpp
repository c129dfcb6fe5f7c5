#pragma once

#include <optional>
#include <string>

#include "pairgf/common.hpp"
#include "pairgf/coulomb_gf.hpp"
#include "pairgf/quadrature.hpp"

namespace pairgf::pair {

// Electron positions (a1, b1) and (a2, b2) of the two GF arguments.
struct PairArgs {
    Vec3 a1{}, b1{}, a2{}, b2{};
    double cK = 0.25;

    Vec3 R1() const { return 0.5 * (a1 + b1); }
    Vec3 R2() const { return 0.5 * (a2 + b2); }
    Vec3 r1() const { return a1 - b1; }
    Vec3 r2() const { return a2 - b2; }
    double R12() const { return norm(R1() - R2()); }

    static PairArgs from_relative(const Vec3& R1, const Vec3& r1, const Vec3& R2, const Vec3& r2, double cK = 0.25);
};

enum class Group { Regular, Group0, Group1, Group2 };

// Which degeneracy makes the K integral diverge.
enum class Variant {
    None,
    SameRelative,              // R1 = R2, r1 = r2        (x0x0, xyxy)
    SameRelativeShifted,       // R1 != R2, r1 = r2       (x00-x, xyy-x)
    ExchangedRelative,         // R1 = R2, r1 = -r2 != 0  (x00x, xyyx)
    ExchangedRelativeShifted,  // R1 != R2, r1 = -r2 != 0
    CoincidentCenters,         // R1 = R2 only
};

struct DivergenceClass {
    Group group = Group::Regular;
    Variant variant = Variant::None;
    bool regular() const { return group == Group::Regular; }
};

std::string to_string(const DivergenceClass& c);

class DivergentArguments : public DomainError {
  public:
    DivergentArguments(const std::string& what, DivergenceClass c) : DomainError(what), cls_(c) {}
    DivergenceClass divergence_class() const { return cls_; }

  private:
    DivergenceClass cls_;
};

enum class Channel { Singlet, Triplet };

struct SpinChannel {
    Channel channel = Channel::Singlet;
    int weight() const { return channel == Channel::Singlet ? 1 : 3; }
    double exchange_sign() const { return channel == Channel::Singlet ? 1.0 : -1.0; }
};

struct PairOptions {
    double ck = 1.0;
    coulomb::Interaction interaction = coulomb::Interaction::Repulsive;
    special::WhittakerOptions whittaker{};
    double rel_tol = 1e-9;
    double abs_tol = 1e-13;
};

DivergenceClass classify_args(const PairArgs& p);

// Two-electron GF from the centre-of-mass K integral (retarded for E > 0).
Complex pair_gf(const PairArgs& p, double E, const PairOptions& opt = {});

// propagating: K < K_m (eps_K > 0); evanescent: K > K_m, or everything when E <= 0.
struct PairParts {
    Complex propagating;
    Complex evanescent;
};
PairParts pair_gf_parts(const PairArgs& p, double E, const PairOptions& opt = {});

// (1/2)[g(a1,b1,a2,b2) +- g(a1,b1,b2,a2)]; + for singlet (even), - for triplet (odd).
Complex pair_gf_channel(const PairArgs& p, double E, SpinChannel ch, const PairOptions& opt = {});

struct DosOptions {
    double cK = 0.25;
    double ck = 1.0;
    double rel_tol = 1e-10;
};

// Spectral density at the coordinate origin, -(1/pi) Im g0(E).
double g0_dos(double E, const DosOptions& opt = {});

// PV integral of rho0(E') / (E - E') over [0, W]. W is model specific and has no default.
double g0_real(double E, std::optional<double> cutoff, const DosOptions& opt = {});

}  // namespace pairgf::pair
