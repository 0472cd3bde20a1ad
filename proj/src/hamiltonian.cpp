#include "dqd/hamiltonian.hpp"

namespace dqd {

double SingleParticleHamiltonian::element(const Orbital &f, const Orbital &g,
                                          const QuadratureSpec &quad,
                                          KineticForm form) const {
  const double k = phys_.kinetic_prefactor();
  if (form == KineticForm::QuadraticForm) {
    return integrate_1d(
        [&](double x) {
          const Jet jf = f.jet(x), jg = g.jet(x);
          return k * jf.d1 * jg.d1 + potential(x) * jf.value * jg.value;
        },
        quad);
  }
  return integrate_1d(
      [&](double x) {
        const Jet jf = f.jet(x), jg = g.jet(x);
        return jf.value * (-k * jg.d2 + potential(x) * jg.value);
      },
      quad);
}

double SingleParticleHamiltonian::local_energy(const Orbital &f,
                                               double x) const {
  const Jet j = f.jet(x);
  return (-phys_.kinetic_prefactor() * j.d2) / j.value + potential(x);
}

} // namespace dqd
