#pragma once

#include "dqd/core.hpp"
#include "dqd/potentials.hpp"
#include "dqd/quadrature.hpp"

#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace dqd {

/// Nodes x_i = -L + i h, i = 0..n-1, h = 2L/(n-1); the wavefunction is
/// taken to vanish one step outside the grid.
struct GridSpec {
  double extent = 100.0; // L, nm
  int n = 256;

  double spacing() const { return 2.0 * extent / (n - 1); }
  double node(int i) const { return -extent + i * spacing(); }
  void validate() const;
  GridSpec with_n(int m) const { return {extent, m}; }
};

struct SingleParticleSolution {
  double energy = 0.0;  // ground
  double energy1 = 0.0; // first excited
  std::vector<double> x;
  std::vector<double> psi0; // normalized so that h * sum psi^2 = 1
  std::vector<double> psi1;
  std::vector<double> density;
};

/// Lowest two levels of -(hbar^2/2m) d^2/dx^2 + V + efield x on the grid.
/// Throws grid-too-small when the ground density at either end exceeds
/// tail_ratio times its peak.
SingleParticleSolution single_particle_ground(const Potential &v,
                                              const PhysParams &phys,
                                              const GridSpec &grid,
                                              double tail_ratio = 1e-10);

enum class Sector { Symmetric, Antisymmetric };

/// Two-electron Hamiltonian h(1) + h(2) + C(x1, x2) on the n x n product
/// grid, three-point Laplacian per coordinate, kernel sampled pointwise.
class TwoElectronGrid {
public:
  TwoElectronGrid(const Potential &v, const CoulombKernel &kernel,
                  const PhysParams &phys, const GridSpec &grid);

  int n() const { return grid_.n; }
  const GridSpec &grid() const { return grid_; }

  /// Sector basis: (|ij> + |ji>)/sqrt2 (i < j) and |ii> for Symmetric,
  /// (|ij> - |ji>)/sqrt2 (i < j) for Antisymmetric.
  std::size_t sector_dim(Sector s) const;
  Eigen::SparseMatrix<double> sector_matrix(Sector s) const;

  /// out = H v on the full product grid, v indexed as v[i * n + j].
  void apply_full(const std::vector<double> &v, std::vector<double> &out,
                  ExecPolicy policy = ExecPolicy::Parallel) const;

  /// Lowest k eigenvalues of a sector by shift-invert Lanczos; shift
  /// must lie below the sector spectrum.
  std::vector<double> lowest(Sector s, int k, double shift,
                             int *iterations = nullptr) const;

  /// Dense reference (small grids only).
  std::vector<double> lowest_dense(Sector s, int k) const;

private:
  GridSpec grid_;
  std::vector<double> diag_; // 2K/h^2 + V(x_i) + efield x_i
  double hop_;               // -K/h^2
  std::vector<double> coulomb_; // n x n
};

struct OracleLevel {
  int n = 0;
  double E_S = 0.0;
  double E_T = 0.0;
  double J = 0.0;
};

struct OracleResult {
  double E_S = 0.0; // finest grid
  double E_T = 0.0;
  double J_exact = 0.0;
  OracleLevel coarse; // n/2
  OracleLevel fine;   // n
  double J_richardson = 0.0;
  double J_error = 0.0; // |J_richardson - J(n)|
  double E_S_richardson = 0.0;
  double E_T_richardson = 0.0;
  std::vector<double> symmetric_levels; // lowest k, finest grid
  std::vector<double> antisymmetric_levels;
  double single_particle_e0 = 0.0;
  double single_particle_e1 = 0.0;
  bool degeneracy_warning = false;
  std::string warning;
  GridSpec grid;
};

OracleLevel two_electron_levels(const Potential &v, const CoulombKernel &kernel,
                                const PhysParams &phys, const GridSpec &grid,
                                int k = 1,
                                std::vector<double> *sym_levels = nullptr,
                                std::vector<double> *anti_levels = nullptr);

/// Fine grid n plus coarse grid n/2 with h^2 Richardson extrapolation.
OracleResult two_electron_spectrum(const Potential &v,
                                   const CoulombKernel &kernel,
                                   const PhysParams &phys,
                                   const GridSpec &grid, int k = 1);

} // namespace dqd
