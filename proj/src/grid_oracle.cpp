#include "dqd/grid_oracle.hpp"

#include "dqd/error.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dqd {

void GridSpec::validate() const {
  if (n < 32)
    throw ConfigError("oracle grid requires n >= 32");
  if (!(extent > 0.0))
    throw ConfigError("oracle grid requires extent > 0");
}

SingleParticleSolution single_particle_ground(const Potential &v,
                                              const PhysParams &phys,
                                              const GridSpec &grid,
                                              double tail_ratio) {
  grid.validate();
  const int n = grid.n;
  const double h = grid.spacing();
  const double k = phys.kinetic_prefactor() / (h * h);
  Eigen::VectorXd diag(n), sub(n - 1);
  SingleParticleSolution s;
  s.x.resize(n);
  for (int i = 0; i < n; ++i) {
    s.x[i] = grid.node(i);
    diag[i] = 2.0 * k + v(s.x[i]) + phys.efield() * s.x[i];
  }
  sub.setConstant(-k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigensolver-non-convergence",
                         "tridiagonal eigensolver failed");
  s.energy = es.eigenvalues()[0];
  s.energy1 = es.eigenvalues()[1];
  const double scale = 1.0 / std::sqrt(h);
  s.psi0.resize(n);
  s.psi1.resize(n);
  s.density.resize(n);
  for (int i = 0; i < n; ++i) {
    s.psi0[i] = es.eigenvectors()(i, 0) * scale;
    s.psi1[i] = es.eigenvectors()(i, 1) * scale;
    s.density[i] = s.psi0[i] * s.psi0[i];
  }
  const double peak = *std::max_element(s.density.begin(), s.density.end());
  const double edge = std::max(s.density.front(), s.density.back());
  if (edge > tail_ratio * peak) {
    std::ostringstream os;
    os << "ground-state density at the grid edge is " << edge / peak
       << " of its peak (limit " << tail_ratio << "); increase extent";
    throw NumericalError("grid-too-small", os.str());
  }
  return s;
}

TwoElectronGrid::TwoElectronGrid(const Potential &v,
                                 const CoulombKernel &kernel,
                                 const PhysParams &phys, const GridSpec &grid)
    : grid_(grid) {
  grid_.validate();
  const int n = grid_.n;
  const double h = grid_.spacing();
  const double k = phys.kinetic_prefactor() / (h * h);
  hop_ = -k;
  diag_.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = grid_.node(i);
    diag_[i] = 2.0 * k + v(x) + phys.efield() * x;
  }
  coulomb_.assign(static_cast<std::size_t>(n) * n, 0.0);
  if (kernel.prefactor != 0.0) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        coulomb_[i * n + j] = kernel(grid_.node(i), grid_.node(j));
  }
}

namespace {

// Packed index of the pair (i, j), i <= j (symmetric) or i < j
// (antisymmetric), row-major over i.
struct PairIndex {
  int n;
  bool strict;
  std::size_t operator()(int i, int j) const {
    const std::size_t ii = i, nn = n;
    if (!strict)
      return ii * nn - ii * (ii - 1) / 2 + (j - i);
    return ii * (nn - 1) - ii * (ii - 1) / 2 + (j - i - 1);
  }
};

} // namespace

std::size_t TwoElectronGrid::sector_dim(Sector s) const {
  const std::size_t n = grid_.n;
  return s == Sector::Symmetric ? n * (n + 1) / 2 : n * (n - 1) / 2;
}

Eigen::SparseMatrix<double> TwoElectronGrid::sector_matrix(Sector s) const {
  const int n = grid_.n;
  const bool anti = s == Sector::Antisymmetric;
  const PairIndex idx{n, anti};
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(sector_dim(s) * 5);
  const double r2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    for (int j = anti ? i + 1 : i; j < n; ++j) {
      const auto row = static_cast<int>(idx(i, j));
      if (i == j) {
        trip.emplace_back(row, row, 2.0 * diag_[i] + coulomb_[i * n + i]);
        // |ii> couples to (|ki> + |ik>)/sqrt2 with weight sqrt2 * hop
        for (int k : {i - 1, i + 1}) {
          if (k < 0 || k >= n)
            continue;
          const int a = std::min(i, k), b = std::max(i, k);
          trip.emplace_back(row, static_cast<int>(idx(a, b)), r2 * hop_);
        }
        continue;
      }
      trip.emplace_back(row, row, diag_[i] + diag_[j] + coulomb_[i * n + j]);
      // move either particle by one step
      for (int which = 0; which < 2; ++which) {
        const int moving = which == 0 ? i : j, other = which == 0 ? j : i;
        for (int k : {moving - 1, moving + 1}) {
          if (k < 0 || k >= n)
            continue;
          if (k == other) {
            if (!anti)
              trip.emplace_back(row, static_cast<int>(idx(k, k)), r2 * hop_);
            continue;
          }
          const int a = std::min(k, other), b = std::max(k, other);
          // antisymmetric states change sign when the order flips
          const double sign =
              anti && ((k < other) != (moving < other)) ? -1.0 : 1.0;
          trip.emplace_back(row, static_cast<int>(idx(a, b)), sign * hop_);
        }
      }
    }
  }
  const auto dim = static_cast<int>(sector_dim(s));
  Eigen::SparseMatrix<double> m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

void TwoElectronGrid::apply_full(const std::vector<double> &v,
                                 std::vector<double> &out,
                                 ExecPolicy policy) const {
  const int n = grid_.n;
  out.resize(static_cast<std::size_t>(n) * n);
  auto row = [&](int i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t p = static_cast<std::size_t>(i) * n + j;
      double r = (diag_[i] + diag_[j] + coulomb_[p]) * v[p];
      if (i > 0)
        r += hop_ * v[p - n];
      if (i + 1 < n)
        r += hop_ * v[p + n];
      if (j > 0)
        r += hop_ * v[p - 1];
      if (j + 1 < n)
        r += hop_ * v[p + 1];
      out[p] = r;
    }
  };
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
      row(i);
  } else {
    for (int i = 0; i < n; ++i)
      row(i);
  }
}

std::vector<double> TwoElectronGrid::lowest(Sector s, int k, double shift,
                                            int *iterations) const {
  using Vec = Eigen::VectorXd;
  Eigen::SparseMatrix<double> a = sector_matrix(s);
  const int dim = static_cast<int>(a.rows());
  if (k < 1 || k > dim)
    throw ConfigError("requested eigenvalue count out of range");
  Eigen::SparseMatrix<double> id(dim, dim);
  id.setIdentity();
  a = a - shift * id;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
  if (ldlt.info() != Eigen::Success)
    throw NumericalError("factorization-failed",
                         "sparse LDLT of the shifted sector matrix failed");

  // Lanczos on (H - shift)^{-1}, full reorthogonalization, deterministic
  // start vector.
  const int max_steps = std::min(dim, std::max(60, 8 * k + 40));
  std::vector<Vec> q;
  q.reserve(max_steps + 1);
  Vec v0(dim);
  for (int i = 0; i < dim; ++i)
    v0[i] = 1.0 + 0.1 * std::sin(0.37 * i);
  q.push_back(v0.normalized());
  std::vector<double> alpha, beta;
  std::vector<double> result;
  for (int m = 0; m < max_steps; ++m) {
    Vec w = ldlt.solve(q[m]);
    const double am = q[m].dot(w);
    alpha.push_back(am);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec &qi : q)
        w -= qi.dot(w) * qi;
    const double bm = w.norm();
    const int size = m + 1;
    if (size >= k) {
      Eigen::VectorXd d(size), e(std::max(1, size - 1));
      for (int i = 0; i < size; ++i)
        d[i] = alpha[i];
      for (int i = 0; i + 1 < size; ++i)
        e[i] = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      if (size == 1) {
        es.compute(Eigen::MatrixXd::Constant(1, 1, d[0]));
      } else {
        es.computeFromTridiagonal(d, e.head(size - 1),
                                  Eigen::ComputeEigenvectors);
      }
      // largest Ritz values of the inverse are the lowest levels
      bool done = true;
      result.clear();
      for (int r = 0; r < k; ++r) {
        const int c = size - 1 - r;
        const double theta = es.eigenvalues()[c];
        const double lam = shift + 1.0 / theta;
        const double resid = std::abs(bm * es.eigenvectors()(size - 1, c));
        result.push_back(lam);
        if (resid / (theta * theta) > 1e-12 * std::max(1.0, std::abs(lam)))
          done = false;
      }
      if (done || bm < 1e-300 || size == dim) {
        if (iterations)
          *iterations = size;
        std::sort(result.begin(), result.end());
        return result;
      }
    }
    beta.push_back(bm);
    q.push_back(w / bm);
  }
  throw NumericalError("eigensolver-non-convergence",
                       "shift-invert Lanczos did not converge");
}

std::vector<double> TwoElectronGrid::lowest_dense(Sector s, int k) const {
  const Eigen::MatrixXd m(sector_matrix(s));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(k);
  for (int i = 0; i < k; ++i)
    out[i] = es.eigenvalues()[i];
  return out;
}

OracleLevel two_electron_levels(const Potential &v, const CoulombKernel &kernel,
                                const PhysParams &phys, const GridSpec &grid,
                                int k, std::vector<double> *sym_levels,
                                std::vector<double> *anti_levels) {
  const SingleParticleSolution sp = single_particle_ground(v, phys, grid);
  const TwoElectronGrid h2(v, kernel, phys, grid);
  // The kernel is non-negative, so 2 e0 and e0 + e1 bound the sectors from
  // below.
  const auto sym = h2.lowest(Sector::Symmetric, k, 2.0 * sp.energy - 1.0);
  const auto anti =
      h2.lowest(Sector::Antisymmetric, k, sp.energy + sp.energy1 - 1.0);
  if (sym_levels)
    *sym_levels = sym;
  if (anti_levels)
    *anti_levels = anti;
  return {grid.n, sym[0], anti[0], anti[0] - sym[0]};
}

OracleResult two_electron_spectrum(const Potential &v,
                                   const CoulombKernel &kernel,
                                   const PhysParams &phys,
                                   const GridSpec &grid, int k) {
  grid.validate();
  OracleResult r;
  r.grid = grid;
  const SingleParticleSolution sp = single_particle_ground(v, phys, grid);
  r.single_particle_e0 = sp.energy;
  r.single_particle_e1 = sp.energy1;
  r.fine = two_electron_levels(v, kernel, phys, grid, k, &r.symmetric_levels,
                               &r.antisymmetric_levels);
  r.coarse = two_electron_levels(v, kernel, phys, grid.with_n(grid.n / 2));
  r.E_S = r.fine.E_S;
  r.E_T = r.fine.E_T;
  r.J_exact = r.fine.J;
  const double hf = grid.spacing(), hc = grid.with_n(grid.n / 2).spacing();
  auto extrapolate = [&](double fine, double coarse) {
    return (hc * hc * fine - hf * hf * coarse) / (hc * hc - hf * hf);
  };
  r.J_richardson = extrapolate(r.fine.J, r.coarse.J);
  r.E_S_richardson = extrapolate(r.fine.E_S, r.coarse.E_S);
  r.E_T_richardson = extrapolate(r.fine.E_T, r.coarse.E_T);
  r.J_error = std::abs(r.J_richardson - r.fine.J);
  if (r.J_exact < 0.0) {
    r.degeneracy_warning = true;
    r.warning = "antisymmetric level below symmetric level";
  } else if (r.J_exact <= 1e-12 * std::max(1.0, std::abs(r.E_S))) {
    r.degeneracy_warning = true;
    r.warning = "sectors degenerate to working precision";
  }
  return r;
}

} // namespace dqd
