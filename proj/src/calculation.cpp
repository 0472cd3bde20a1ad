#include "dqd/calculation.hpp"

#include "dqd/error.hpp"

#include <algorithm>

namespace dqd {

std::string Configuration::label() const {
  return std::string(basis == Basis::CA ? "CA" : "FD") + "/" +
         (potential == PotentialKind::CA ? "CA" : "BQ");
}

Configuration configuration_from_string(const std::string &s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos)
    throw ConfigError("configuration '" + s + "' must look like BASIS/POT");
  const std::string b = s.substr(0, slash), v = s.substr(slash + 1);
  Configuration c;
  if (b == "CA")
    c.basis = Basis::CA;
  else if (b == "FD")
    c.basis = Basis::FD;
  else
    throw ConfigError("unknown basis '" + b + "' (CA or FD)");
  if (v == "CA")
    c.potential = PotentialKind::CA;
  else if (v == "BQ")
    c.potential = PotentialKind::BQ;
  else
    throw ConfigError("unknown potential '" + v + "' (CA or BQ)");
  return c;
}

std::vector<Configuration> default_configurations() {
  return {{Basis::CA, PotentialKind::CA},
          {Basis::FD, PotentialKind::CA},
          {Basis::FD, PotentialKind::BQ}};
}

PointSetup setup_from_caticha(const CatichaParams &p, const PhysParams &phys) {
  PointSetup s;
  s.ca = p;
  s.geometry = geometry_of_caticha(p, phys);
  s.d_target = s.geometry.d;
  s.xi_target = -s.geometry.depth_xi;
  s.bq = biquadratic_matching_caticha(s.geometry, phys);
  return s;
}

PointSetup setup_point(double d, double abs_xi, const PhysParams &phys,
                       const InverseOptions &opt) {
  if (!(d > 0.0) || !(abs_xi > 0.0))
    throw ConfigError("sweep points need d > 0 and |xi| > 0");
  const InverseResult inv = caticha_for_geometry_detailed(d, -abs_xi, phys, opt);
  PointSetup s;
  s.d_target = d;
  s.xi_target = abs_xi;
  s.ca = inv.params;
  s.geometry = inv.geometry;
  s.inverse_residual = inv.residual;
  s.bq = biquadratic_matching_caticha(s.geometry, phys);
  return s;
}

Potential make_potential(PotentialKind k, const PointSetup &s,
                         const PhysParams &phys) {
  return k == PotentialKind::CA ? Potential::caticha(s.ca, phys)
                                : Potential::biquadratic(s.bq, phys);
}

std::pair<Orbital, Orbital> make_orbitals(Basis b, const PointSetup &s,
                                          const PhysParams &phys) {
  if (b == Basis::CA)
    return {Orbital::caticha(Side::Left, s.ca),
            Orbital::caticha(Side::Right, s.ca)};
  return {Orbital::fock_darwin(Side::Left, s.geometry.d, s.bq.hbar_omega0, phys),
          Orbital::fock_darwin(Side::Right, s.geometry.d, s.bq.hbar_omega0,
                               phys)};
}

QuadratureSpec integration_spec(const Orbital &left, const Orbital &right,
                                const NumericsConfig &num) {
  const double l = num.padding * std::max(left.support_halfwidth(num.tail_mass),
                                          right.support_halfwidth(num.tail_mass));
  return num.quad.with_bounds(-l, l);
}

ConfigResult compute_configuration(const Configuration &c,
                                   const PointSetup &s, const PhysParams &phys,
                                   const NumericsConfig &num) {
  ConfigResult r;
  r.config = c;
  auto [left, right] = make_orbitals(c.basis, s, phys);
  const QuadratureSpec quad = integration_spec(left, right, num);
  r.bound = quad.upper;
  const SingleParticleHamiltonian h(make_potential(c.potential, s, phys), phys);
  const CoulombKernel kernel{phys.coulomb_prefactor(), phys.softening_length()};

  HLInputs hl{left, right, h, kernel, quad, num.kinetic, num.wv_form,
              num.policy};
  if (c.basis != Basis::FD)
    hl.wv_form = WvForm::Hamiltonian;
  r.hl = j_heitler_london(hl);
  if (num.audit_hl)
    r.hl_direct = hl_direct(hl);

  HMInputs hm{left, right, h, kernel, quad, num.kinetic, num.hm_mode,
              num.policy};
  r.hm = j_hund_mulliken(hm);
  r.hm_perturbative = hm_perturbative_j(r.hm.el);
  return r;
}

} // namespace dqd
