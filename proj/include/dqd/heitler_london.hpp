#pragma once

#include "dqd/hamiltonian.hpp"
#include "dqd/orbitals.hpp"
#include "dqd/quadrature.hpp"

#include <string>

namespace dqd {

/// Hamiltonian: W_v from one-body matrix elements of h.
/// FockDarwinShortcut: W_v from potential differences V - V_{L/R}, where
/// V_{L/R} is the harmonic well each FD orbital solves exactly.
enum class WvForm { Hamiltonian, FockDarwinShortcut };

struct HLInputs {
  Orbital left;
  Orbital right;
  SingleParticleHamiltonian hamiltonian;
  CoulombKernel kernel;
  QuadratureSpec quad; // bounds apply to both axes
  KineticForm kinetic = KineticForm::QuadraticForm;
  WvForm wv_form = WvForm::Hamiltonian;
  ExecPolicy policy = ExecPolicy::Parallel;
};

struct HLResult {
  double l = 0.0;
  double W_v = 0.0;
  double D0 = 0.0;
  double E0 = 0.0;
  double J_HL = 0.0;
  std::string basis;
  std::string potential;
};

/// 2 l^2 / (1 - l^4) * (W_v + D0 - E0 / l^2); 0 at l = 0.
double hl_exchange(double l, double W_v, double D0, double E0);

double hl_wv(const Orbital &left, const Orbital &right,
             const SingleParticleHamiltonian &h, const QuadratureSpec &quad,
             double l, KineticForm form = KineticForm::QuadraticForm);
double hl_wv_fd_shortcut(const Orbital &left, const Orbital &right,
                         const SingleParticleHamiltonian &h,
                         const QuadratureSpec &quad, double l);

double hl_d0(const Orbital &left, const Orbital &right,
             const CoulombKernel &kernel, const QuadratureSpec &quad,
             ExecPolicy policy = ExecPolicy::Parallel);
double hl_e0(const Orbital &left, const Orbital &right,
             const CoulombKernel &kernel, const QuadratureSpec &quad,
             ExecPolicy policy = ExecPolicy::Parallel);

HLResult j_heitler_london(const HLInputs &in);

/// Independent route: builds the normalized two-electron singlet and
/// triplet wavefunctions pointwise and returns <T|H|T> - <S|H|S> from
/// two-dimensional integrals, without the W_v / D0 / E0 decomposition.
struct HLDirect {
  double E_S = 0.0;
  double E_T = 0.0;
  double J = 0.0;
};
HLDirect hl_direct(const HLInputs &in);

} // namespace dqd
