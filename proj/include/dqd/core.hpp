#pragma once

#include <optional>
#include <string>

// Unit system used throughout: lengths in nm, energies in meV, masses in
// units of the free-electron mass.

namespace dqd {

namespace constants {
/// hbar^2 / (2 m_e) in meV nm^2 (CODATA 2018).
inline constexpr double hbar2_over_2me = 38.0998212;
/// e^2 / (4 pi eps_0) in meV nm (CODATA 2018).
inline constexpr double e2_over_4pi_eps0 = 1439.96454784;

inline constexpr double eps_si = 11.7;
inline constexpr double eps_sio2 = 3.9;
inline constexpr double kappa_gaas = 12.9;

inline constexpr double mass_sisio2 = 0.191;
inline constexpr double mass_gaas = 0.067;

inline constexpr double default_softening = 0.1; // nm
} // namespace constants

enum class Material { SiSiO2, GaAs, Custom };

std::string to_string(Material m);
Material material_from_string(const std::string &s);

/// Material selection plus optional overrides. For `Custom` both
/// `effective_mass` and `kappa` must be given.
struct MaterialSpec {
  Material tag = Material::SiSiO2;
  std::optional<double> effective_mass;
  std::optional<double> kappa;
  double eps_si = constants::eps_si;
  double eps_sio2 = constants::eps_sio2;
  double softening_length = constants::default_softening;
  double efield = 0.0; // meV/nm
};

/// Physical parameters of the two-electron problem. Immutable once built.
class PhysParams {
public:
  PhysParams(double effective_mass, double kappa, double softening_length,
             double efield = 0.0);

  double effective_mass() const { return effective_mass_; }
  double kappa() const { return kappa_; }
  /// e^2 / (4 pi eps_0 kappa), meV nm.
  double coulomb_prefactor() const { return coulomb_prefactor_; }
  /// hbar^2 / (2 m), meV nm^2.
  double kinetic_prefactor() const { return kinetic_prefactor_; }
  double softening_length() const { return softening_length_; }
  double efield() const { return efield_; }

  PhysParams with_softening(double lambda) const;
  PhysParams with_efield(double efield) const;
  /// Same material with the Coulomb interaction switched off.
  PhysParams non_interacting() const;

private:
  double effective_mass_;
  double kappa_;
  double softening_length_;
  double efield_;
  double coulomb_prefactor_;
  double kinetic_prefactor_;
};

PhysParams physparams_for(const MaterialSpec &spec);

} // namespace dqd
