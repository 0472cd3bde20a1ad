#pragma once

#include "dqd/grid_oracle.hpp"
#include "dqd/heitler_london.hpp"
#include "dqd/hund_mulliken.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dqd {

enum class Basis { FD, CA };
enum class PotentialKind { CA, BQ };

/// One basis / potential pairing, e.g. FD orbitals under the Caticha well.
struct Configuration {
  Basis basis = Basis::CA;
  PotentialKind potential = PotentialKind::CA;
  std::string label() const; // "CA/CA", "FD/BQ", ...
  bool operator==(const Configuration &) const = default;
};

Configuration configuration_from_string(const std::string &s);
/// CA/CA, FD/CA, FD/BQ
std::vector<Configuration> default_configurations();

struct NumericsConfig {
  QuadratureSpec quad{-1.0, 1.0, 512, Scheme::GaussLegendreComposite,
                      Refinement::Doubling, 1e-8, 64, 8};
  double tail_mass = 1e-10; // integration bounds from orbital tails
  double padding = 1.0;     // multiplies the automatic half-width
  KineticForm kinetic = KineticForm::QuadraticForm;
  WvForm wv_form = WvForm::Hamiltonian;
  HMMode hm_mode = HMMode::Verbatim;
  bool audit_hl = true; // direct <T|H|T> - <S|H|S> on every point
  ExecPolicy policy = ExecPolicy::Parallel;
};

/// Geometry anchor of one sweep point: target (d, |xi|), the Caticha
/// parameters reproducing it and the matched bi-quadratic well.
struct PointSetup {
  double d_target = 0.0;
  double xi_target = 0.0; // |xi|, meV
  CatichaParams ca;
  WellGeometry geometry;
  BiquadraticParams bq;
  double inverse_residual = 0.0;
};

PointSetup setup_point(double d, double abs_xi, const PhysParams &phys,
                       const InverseOptions &opt = {});
/// Anchor built directly from (a, b).
PointSetup setup_from_caticha(const CatichaParams &p, const PhysParams &phys);

Potential make_potential(PotentialKind k, const PointSetup &s,
                         const PhysParams &phys);
std::pair<Orbital, Orbital> make_orbitals(Basis b, const PointSetup &s,
                                          const PhysParams &phys);

/// Symmetric bounds [-L, L] covering both orbitals to tail_mass.
QuadratureSpec integration_spec(const Orbital &left, const Orbital &right,
                                const NumericsConfig &num);

struct ConfigResult {
  Configuration config;
  double bound = 0.0; // L
  HLResult hl;
  std::optional<HLDirect> hl_direct;
  HMResult hm;
  double hm_perturbative = 0.0;
};

ConfigResult compute_configuration(const Configuration &c,
                                   const PointSetup &s, const PhysParams &phys,
                                   const NumericsConfig &num);

} // namespace dqd
