#pragma once

#include "dqd/core.hpp"
#include "dqd/potentials.hpp"
#include "dqd/quadrature.hpp"

#include <memory>
#include <variant>

namespace dqd {

enum class OrbitalKind { FockDarwin, Caticha, CatichaGround, Combination };
/// Left is centred at -d, Right at +d.
enum class Side { Left, Right };

std::string to_string(OrbitalKind k);

struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Normalized single-particle basis function. Immutable, cheap to copy.
class Orbital {
public:
  /// Gaussian of width sqrt(hbar/(m omega0)) centred at -d (Left) / +d (Right).
  static Orbital fock_darwin(Side side, double d, double hbar_omega0,
                             const PhysParams &phys);
  /// Localized Caticha orbital, psi_L(x) ~ (1 + e^{-bx}) / W(x) and
  /// psi_R(x) = psi_L(-x), normalized numerically.
  static Orbital caticha(Side side, const CatichaParams &p);
  /// Exact (even) ground state cosh(bx) / W(x) of the Caticha potential,
  /// energy -a^2 hbar^2/2m.
  static Orbital caticha_ground(const CatichaParams &p);
  static Orbital combination(double alpha, const Orbital &p, double beta,
                             const Orbital &q);

  OrbitalKind kind() const;
  Side side() const { return side_; }

  double value(double x) const;
  Jet jet(double x) const;

  /// Smallest L with probability outside [-L, L] below tail_mass.
  double support_halfwidth(double tail_mass = 1e-10) const;

  /// Width a_FD and centre (FockDarwin only).
  double fd_width() const;
  double fd_center() const;
  /// 1/c: factor applied to the bare analytic expression.
  double normalization() const { return norm_; }

private:
  struct FD {
    double center, width;
  };
  struct CA {
    CatichaParams p;
    double sigma; // +1 Left, -1 Right
  };
  struct CAGround {
    CatichaParams p;
  };
  struct Combo {
    double alpha, beta;
    std::shared_ptr<const Orbital> p, q;
  };
  using Impl = std::variant<FD, CA, CAGround, Combo>;

  Orbital(Side side, Impl impl, double norm)
      : side_(side), impl_(std::move(impl)), norm_(norm) {}

  Jet bare_jet(double x) const;

  Side side_;
  Impl impl_;
  double norm_;
};

struct OverlapData {
  double l = 0.0;
  double g = 0.0;
};

/// g = (1 - sqrt(1 - l^2)) / l, with g(0) = 0.
double orthonormalization_coefficient(double l);

/// l = <L|R> by quadrature; |l| >= 1 - 1e-9 is a degenerate-overlap error.
OverlapData overlap(const Orbital &left, const Orbital &right,
                    const QuadratureSpec &quad);

/// Orthonormalized pair Phi_{L/R} = (psi_{L/R} - g psi_{R/L}) / N with
/// N = sqrt(1 - 2 l g + g^2).
struct HMOrbitalPair {
  Orbital phi_left;
  Orbital phi_right;
  OverlapData overlap;
  double cross = 0.0;     // <Phi_L|Phi_R> as checked by quadrature
  double norm_left = 0.0; // <Phi_L|Phi_L>
  double norm_right = 0.0;
};

HMOrbitalPair orthonormalize(const Orbital &left, const Orbital &right,
                             const OverlapData &ov, const QuadratureSpec &quad);

double inner_product(const Orbital &f, const Orbital &g,
                     const QuadratureSpec &quad);

} // namespace dqd
