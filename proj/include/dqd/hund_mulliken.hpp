#pragma once

#include "dqd/hamiltonian.hpp"
#include "dqd/orbitals.hpp"
#include "dqd/quadrature.hpp"

#include <array>
#include <string>

namespace dqd {

/// Symmetric 4x4 matrix, rows ordered S(2,0), S(0,2), S(1,1), T(1,1).
/// Stores the 10 independent entries; symmetric by construction.
class SymmetricMatrix4 {
public:
  double operator()(int i, int j) const { return v_[index(i, j)]; }
  void set(int i, int j, double x) { v_[index(i, j)] = x; }

private:
  static int index(int i, int j) {
    if (i > j)
      std::swap(i, j);
    return i * 4 - i * (i - 1) / 2 + (j - i);
  }
  std::array<double, 10> v_{};
};

/// Verbatim: the printed matrix (U -/+ eps, X, sqrt2 t, V_S, V_T), which
/// drops the common one-body offset eps_L + eps_R.
/// FullOffset: explicit one-body diagonal terms (2 eps_L + U_L, ...) and
/// separate left/right Coulomb-assisted hopping.
enum class HMMode { Verbatim, FullOffset };

std::string to_string(HMMode m);
HMMode hm_mode_from_string(const std::string &s);

struct HMElements {
  double eps_L = 0.0, eps_R = 0.0;
  double t_prime = 0.0;
  double U = 0.0, U_R = 0.0; // intradot, left and right
  double X = 0.0;
  double V_S = 0.0, V_T = 0.0;
  double w = 0.0, w_R = 0.0; // Coulomb hopping from S(2,0) and S(0,2)
};

struct HMResult {
  HMElements el;
  double eps = 0.0; // eps_R - eps_L
  double t = 0.0;   // t' + w
  std::array<double, 3> singlet_eigenvalues{};
  double triplet_energy = 0.0;
  double J_HM = 0.0;
  HMMode mode = HMMode::Verbatim;
  std::string basis;
  std::string potential;
};

struct HMInputs {
  Orbital left; // non-orthogonal psi_L, psi_R
  Orbital right;
  SingleParticleHamiltonian hamiltonian;
  CoulombKernel kernel;
  QuadratureSpec quad;
  KineticForm kinetic = KineticForm::QuadraticForm;
  HMMode mode = HMMode::Verbatim;
  ExecPolicy policy = ExecPolicy::Parallel;
};

double hm_single_particle(const Orbital &phi,
                          const SingleParticleHamiltonian &h,
                          const QuadratureSpec &quad,
                          KineticForm form = KineticForm::QuadraticForm);

/// U, U_R, X, V_S, V_T, w, w_R over the orthonormal two-electron basis.
HMElements hm_coulomb_elements(const HMOrbitalPair &pair,
                               const CoulombKernel &kernel,
                               const QuadratureSpec &quad,
                               ExecPolicy policy = ExecPolicy::Parallel);

HMElements hm_elements(const HMOrbitalPair &pair, const HMInputs &in);

SymmetricMatrix4 assemble_hm(const HMElements &el, HMMode mode);

/// Eigenvalues of the symmetric 3x3 block a (row-major upper triangle
/// a00 a01 a02 a11 a12 a22), ascending. Trigonometric cubic solution.
std::array<double, 3> symmetric3_eigenvalues(const std::array<double, 6> &a);

/// Cyclic Jacobi rotations, ascending eigenvalues. Throws on
/// non-convergence.
std::array<double, 3>
symmetric3_eigenvalues_jacobi(const std::array<double, 6> &a,
                              int max_sweeps = 50);

std::array<double, 6> singlet_block(const SymmetricMatrix4 &m);

HMResult hm_solve(const HMElements &el, HMMode mode);
HMResult j_hund_mulliken(const HMInputs &in);

/// Second-order estimate at eps = 0: V_T - V_S + 4 t^2 / (U + X - V_S).
double hm_perturbative_j(const HMElements &el);

} // namespace dqd
