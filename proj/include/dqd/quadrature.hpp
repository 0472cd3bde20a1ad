#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace dqd {

/// Serial kernels are the reference; parallel ones must reproduce them
/// bit for bit (per-node partials, fixed-order compensated reduction).
enum class ExecPolicy { Serial, Parallel };

/// Neumaier compensated summation.
class CompensatedSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

enum class Scheme { LeftRiemann, Trapezoid, GaussLegendreComposite };
enum class Refinement { Fixed, Doubling };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string &s);

struct QuadratureSpec {
  double lower = -1.0;
  double upper = 1.0;
  /// Total sample count. For GaussLegendreComposite the panel count is
  /// n_points / gl_order; below gl_order nodes, one panel of order n_points.
  int n_points = 512;
  Scheme scheme = Scheme::GaussLegendreComposite;
  Refinement refinement = Refinement::Fixed;
  double rel_tol = 1e-8;
  int gl_order = 64;
  int max_doublings = 8;

  void validate() const;
  QuadratureSpec with_bounds(double lo, double hi) const;
  QuadratureSpec doubled() const;
};

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
Rule gauss_legendre(int order);
Rule make_rule(const QuadratureSpec &spec);

using Func1 = std::function<double(double)>;
using Func2 = std::function<double(double, double)>;

/// Integral with its provenance (final sample count, refinement steps).
struct Integral {
  double value = 0.0;
  int n_points = 0;
  int doublings = 0;
};

Integral integrate_1d_detailed(const Func1 &f, const QuadratureSpec &spec);
double integrate_1d(const Func1 &f, const QuadratureSpec &spec);

/// Tensor-product integration over spec_x1 x spec_x2.
double integrate_2d(const Func2 &f, const QuadratureSpec &spec_x1,
                    const QuadratureSpec &spec_x2,
                    ExecPolicy policy = ExecPolicy::Parallel);

/// Soft-core Coulomb kernel prefactor / sqrt((x1-x2)^2 + lambda^2).
struct CoulombKernel {
  double prefactor = 0.0; // meV nm
  double softening = 0.1; // nm

  double operator()(double x1, double x2) const;
};

/// Two-body matrix element
///   \iint f_left(x1,x2) K(x1,x2) f_right(x1,x2) dx1 dx2.
///
/// With GaussLegendreComposite the inner x2 integral is taken in the
/// variable t, x2 = x1 + lambda sinh(t), which absorbs the kernel
/// (dx2 / sqrt((x2-x1)^2+lambda^2) = dt) and leaves a smooth integrand.
/// The other schemes use the plain tensor-product rule (fidelity mode:
/// the kernel is then sampled on the grid, as a fixed-step accumulation
/// would do). Requires lambda > 0.
double coulomb_element(const Func2 &f_left, const Func2 &f_right,
                       const CoulombKernel &kernel,
                       const QuadratureSpec &spec_x1,
                       const QuadratureSpec &spec_x2,
                       ExecPolicy policy = ExecPolicy::Parallel);

/// Single fixed-resolution evaluation (no doubling), exposed for tests
/// and benchmarks.
double coulomb_element_fixed(const Func2 &f_left, const Func2 &f_right,
                             const CoulombKernel &kernel,
                             const QuadratureSpec &spec_x1,
                             const QuadratureSpec &spec_x2,
                             ExecPolicy policy);

/// Integrand batch: writes m pair-function values (the products
/// f_left * f_right, kernel excluded) for the point (x1, x2) into out.
using PairBatch = std::function<void(double x1, double x2, double *out)>;

/// Several Coulomb elements sharing one set of nodes, so orbital values
/// are evaluated once per node. Doubling stops when every component has
/// converged.
std::vector<double> coulomb_elements(const PairBatch &f, std::size_t m,
                                     const CoulombKernel &kernel,
                                     const QuadratureSpec &spec_x1,
                                     const QuadratureSpec &spec_x2,
                                     ExecPolicy policy = ExecPolicy::Parallel);

} // namespace dqd
