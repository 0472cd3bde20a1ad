#pragma once

#include "dqd/core.hpp"
#include "dqd/orbitals.hpp"
#include "dqd/potentials.hpp"
#include "dqd/quadrature.hpp"

namespace dqd {

/// QuadraticForm uses K <f'|g'> (boundary terms vanish for localized
/// orbitals); SecondDerivative uses -K <f|g''>.
enum class KineticForm { QuadraticForm, SecondDerivative };

/// h = -(hbar^2/2m) d^2/dx^2 + V(x) + efield * x
class SingleParticleHamiltonian {
public:
  SingleParticleHamiltonian(Potential v, PhysParams phys)
      : v_(std::move(v)), phys_(std::move(phys)) {}

  /// Total one-body potential, including the field term.
  double potential(double x) const { return v_(x) + phys_.efield() * x; }

  double element(const Orbital &f, const Orbital &g,
                 const QuadratureSpec &quad,
                 KineticForm form = KineticForm::QuadraticForm) const;

  /// (h f)(x) / f(x)
  double local_energy(const Orbital &f, double x) const;

  SingleParticleHamiltonian shifted(double c) const {
    return {v_.shifted(c), phys_};
  }

  const Potential &confinement() const { return v_; }
  const PhysParams &phys() const { return phys_; }

private:
  Potential v_;
  PhysParams phys_;
};

} // namespace dqd
