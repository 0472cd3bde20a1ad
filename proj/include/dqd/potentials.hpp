#pragma once

#include "dqd/core.hpp"

#include <functional>
#include <string>

namespace dqd {

/// Parameters (a, b) of the exactly solvable double well, in nm^-1.
/// a > b > 0 is the double-well regime; anything else is rejected.
struct CatichaParams {
  double a = 0.0;
  double b = 0.0;

  CatichaParams() = default;
  CatichaParams(double a, double b);
  /// Figure-caption convention: values in inverse meters.
  static CatichaParams from_inverse_meters(double a_per_m, double b_per_m);
};

struct BiquadraticParams {
  double hbar_omega0 = 1.0; // meV
  double d = 0.0;           // nm
  double offset = 0.0;      // meV
};

/// d is the position of the right minimum (minima at +-d), depth_xi the
/// potential at the minima, barrier_height = V(0) - V(d).
struct WellGeometry {
  double d = 0.0;
  double depth_xi = 0.0;
  double barrier_height = 0.0;
};

/// Scaled Wronskian W(x) = a cosh(ax)cosh(bx) - b sinh(ax)sinh(bx) and its
/// first three derivatives, all multiplied by exp(-(a+b)|x|) so they stay
/// finite for any x.
struct CatichaW {
  double w0, w1, w2, w3;
  double p; // exp(-2a|x|)
  double q; // exp(-2b|x|)
  double s; // |x|
  double sign;
};
CatichaW caticha_w(double x, const CatichaParams &p);

double v_biquadratic(double x, const BiquadraticParams &p,
                     const PhysParams &phys);
double v_caticha(double x, const CatichaParams &p, const PhysParams &phys);
/// Analytic dV/dx of the Caticha potential, from V = -2 (hbar^2/2m) (ln W)''.
double dv_caticha(double x, const CatichaParams &p, const PhysParams &phys);

/// Exact bound-state energies of the Caticha potential: -a^2 and -b^2 in
/// units of hbar^2/2m.
double caticha_ground_energy(const CatichaParams &p, const PhysParams &phys);
double caticha_excited_energy(const CatichaParams &p, const PhysParams &phys);

WellGeometry geometry_of_caticha(const CatichaParams &p,
                                 const PhysParams &phys);

struct InverseOptions {
  double rel_tol = 1e-10;
  int max_iterations = 60;
};

struct InverseResult {
  CatichaParams params;
  WellGeometry geometry;
  double residual = 0.0; // max relative mismatch of (d, depth)
  int iterations = 0;
};

/// Finds (a, b) whose geometry matches (target_d, target_depth), with
/// target_depth < 0.
InverseResult caticha_for_geometry_detailed(double target_d,
                                            double target_depth,
                                            const PhysParams &phys,
                                            const InverseOptions &opt = {});
CatichaParams caticha_for_geometry(double target_d, double target_depth,
                                   const PhysParams &phys,
                                   const InverseOptions &opt = {});

/// Bi-quadratic well with the same d, depth and barrier height.
BiquadraticParams biquadratic_matching_caticha(const WellGeometry &g,
                                               const PhysParams &phys);

/// A confining potential V(x) in meV, type-erased.
class Potential {
public:
  using Fn = std::function<double(double)>;

  Potential(std::string name, Fn f) : name_(std::move(name)), f_(std::move(f)) {}

  static Potential caticha(const CatichaParams &p, const PhysParams &phys);
  static Potential biquadratic(const BiquadraticParams &p,
                               const PhysParams &phys);
  static Potential harmonic(double hbar_omega0, double center, double offset,
                            const PhysParams &phys);
  /// Zero inside |x| <= half_width, `wall` outside.
  static Potential box(double half_width, double wall);

  Potential shifted(double c) const;

  double operator()(double x) const { return f_(x); }
  const std::string &name() const { return name_; }

private:
  std::string name_;
  Fn f_;
};

} // namespace dqd
