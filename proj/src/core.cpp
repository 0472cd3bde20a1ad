#include "dqd/core.hpp"

#include "dqd/error.hpp"

#include <cmath>
#include <limits>

namespace dqd {

std::string to_string(Material m) {
  switch (m) {
  case Material::SiSiO2:
    return "SiSiO2";
  case Material::GaAs:
    return "GaAs";
  case Material::Custom:
    return "Custom";
  }
  return "?";
}

Material material_from_string(const std::string &s) {
  if (s == "SiSiO2" || s == "Si/SiO2" || s == "si")
    return Material::SiSiO2;
  if (s == "GaAs" || s == "gaas")
    return Material::GaAs;
  if (s == "Custom" || s == "custom")
    return Material::Custom;
  throw ConfigError("unknown material '" + s + "'");
}

PhysParams::PhysParams(double effective_mass, double kappa,
                       double softening_length, double efield)
    : effective_mass_(effective_mass), kappa_(kappa),
      softening_length_(softening_length), efield_(efield) {
  if (!(effective_mass > 0.0))
    throw ConfigError("effective_mass must be > 0");
  if (!(kappa > 0.0) && !std::isinf(kappa))
    throw ConfigError("kappa must be > 0");
  if (!(softening_length >= 0.0))
    throw ConfigError("softening_length must be >= 0");
  if (!std::isfinite(efield))
    throw ConfigError("efield must be finite");
  kinetic_prefactor_ = constants::hbar2_over_2me / effective_mass_;
  coulomb_prefactor_ =
      std::isinf(kappa_) ? 0.0 : constants::e2_over_4pi_eps0 / kappa_;
}

PhysParams PhysParams::with_softening(double lambda) const {
  return PhysParams(effective_mass_, kappa_, lambda, efield_);
}

PhysParams PhysParams::with_efield(double efield) const {
  return PhysParams(effective_mass_, kappa_, softening_length_, efield);
}

PhysParams PhysParams::non_interacting() const {
  return PhysParams(effective_mass_, std::numeric_limits<double>::infinity(),
                    softening_length_, efield_);
}

PhysParams physparams_for(const MaterialSpec &spec) {
  double mass = 0.0;
  double kappa = 0.0;
  switch (spec.tag) {
  case Material::SiSiO2:
    mass = constants::mass_sisio2;
    kappa = 0.5 * (spec.eps_si + spec.eps_sio2);
    break;
  case Material::GaAs:
    mass = constants::mass_gaas;
    kappa = constants::kappa_gaas;
    break;
  case Material::Custom:
    if (!spec.effective_mass)
      throw ConfigError("Custom material requires field 'effective_mass'");
    if (!spec.kappa)
      throw ConfigError("Custom material requires field 'kappa'");
    break;
  }
  if (spec.effective_mass)
    mass = *spec.effective_mass;
  if (spec.kappa)
    kappa = *spec.kappa;
  return PhysParams(mass, kappa, spec.softening_length, spec.efield);
}

} // namespace dqd
