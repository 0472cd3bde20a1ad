#include "dqd/quadrature.hpp"

#include "dqd/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>

namespace dqd {

std::string to_string(Scheme s) {
  switch (s) {
  case Scheme::LeftRiemann:
    return "left_riemann";
  case Scheme::Trapezoid:
    return "trapezoid";
  case Scheme::GaussLegendreComposite:
    return "gauss_legendre";
  }
  return "?";
}

Scheme scheme_from_string(const std::string &s) {
  if (s == "left_riemann" || s == "riemann")
    return Scheme::LeftRiemann;
  if (s == "trapezoid")
    return Scheme::Trapezoid;
  if (s == "gauss_legendre" || s == "gl")
    return Scheme::GaussLegendreComposite;
  throw ConfigError("unknown quadrature scheme '" + s + "'");
}

void QuadratureSpec::validate() const {
  if (!(lower < upper))
    throw ConfigError("quadrature bounds require lower < upper");
  if (n_points < 2)
    throw ConfigError("quadrature requires n_points >= 2");
  if (refinement == Refinement::Doubling && !(rel_tol > 0.0))
    throw ConfigError("adaptive quadrature requires rel_tol > 0");
  if (scheme == Scheme::GaussLegendreComposite && gl_order < 1)
    throw ConfigError("gl_order must be >= 1");
}

QuadratureSpec QuadratureSpec::with_bounds(double lo, double hi) const {
  QuadratureSpec s = *this;
  s.lower = lo;
  s.upper = hi;
  return s;
}

QuadratureSpec QuadratureSpec::doubled() const {
  QuadratureSpec s = *this;
  s.n_points *= 2;
  return s;
}

Rule gauss_legendre(int order) {
  Rule r;
  r.x.resize(order);
  r.w.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= order; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16)
        break;
    }
    // recompute derivative at the converged root
    {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= order; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = -z;
    r.x[order - 1 - i] = z;
    r.w[i] = w;
    r.w[order - 1 - i] = w;
  }
  if (order % 2 == 1)
    r.x[order / 2] = 0.0;
  return r;
}

namespace {

Rule composite_gl(double lo, double hi, int panels, int order) {
  const Rule base = gauss_legendre(order);
  Rule r;
  r.x.reserve(static_cast<std::size_t>(panels) * order);
  r.w.reserve(static_cast<std::size_t>(panels) * order);
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    const double half = 0.5 * width;
    for (int k = 0; k < order; ++k) {
      r.x.push_back(a + half * (base.x[k] + 1.0));
      r.w.push_back(half * base.w[k]);
    }
  }
  return r;
}

// Fewer nodes than one panel holds become a single panel of that order, so
// every doubling changes the rule.
int gl_order_used(const QuadratureSpec &spec) {
  return std::max(1, std::min(spec.gl_order, spec.n_points));
}

int gl_panels(const QuadratureSpec &spec) {
  return std::max(1, spec.n_points / gl_order_used(spec));
}

void check_finite(double v, double x) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "non-finite integrand value at x = " << x;
    throw IntegrationError(os.str(), x);
  }
}

void check_finite(double v, double x1, double x2) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "non-finite integrand value at (x1, x2) = (" << x1 << ", " << x2
       << ")";
    throw IntegrationError(os.str(), x1);
  }
}

struct Sum1 {
  double value;
  double l1;
};

Sum1 apply_rule(const Func1 &f, const Rule &r) {
  CompensatedSum s, a;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double v = f(r.x[i]);
    check_finite(v, r.x[i]);
    s.add(r.w[i] * v);
    a.add(std::abs(r.w[i] * v));
  }
  return {s.value(), a.value()};
}

// Rows are evaluated independently and reduced in index order, so the
// parallel branch returns exactly the serial value.
template <class RowFn>
Sum1 reduce_rows(std::size_t rows, RowFn &&row, ExecPolicy policy) {
  std::vector<double> part(rows), part_abs(rows);
  if (policy == ExecPolicy::Parallel) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rows); ++i) {
      try {
        const Sum1 s = row(static_cast<std::size_t>(i));
        part[i] = s.value;
        part_abs[i] = s.l1;
      } catch (...) {
#pragma omp critical(dqd_quadrature_error)
        if (!err)
          err = std::current_exception();
      }
    }
    if (err)
      std::rethrow_exception(err);
  } else {
    for (std::size_t i = 0; i < rows; ++i) {
      const Sum1 s = row(i);
      part[i] = s.value;
      part_abs[i] = s.l1;
    }
  }
  CompensatedSum s, a;
  for (std::size_t i = 0; i < rows; ++i) {
    s.add(part[i]);
    a.add(part_abs[i]);
  }
  return {s.value(), a.value()};
}

bool converged(double prev, double next, double l1, double rel_tol) {
  const double scale = std::max(std::abs(next), l1);
  return std::abs(next - prev) <= rel_tol * scale;
}

} // namespace

Rule make_rule(const QuadratureSpec &spec) {
  spec.validate();
  Rule r;
  const double lo = spec.lower, hi = spec.upper;
  switch (spec.scheme) {
  case Scheme::LeftRiemann: {
    // Start at the lower boundary, evaluate, step, accumulate; stop when
    // the position reaches the upper boundary.
    const int n = spec.n_points;
    const double h = (hi - lo) / n;
    r.x.resize(n);
    r.w.assign(n, h);
    for (int k = 0; k < n; ++k)
      r.x[k] = lo + k * h;
    break;
  }
  case Scheme::Trapezoid: {
    const int n = spec.n_points;
    const double h = (hi - lo) / (n - 1);
    r.x.resize(n);
    r.w.assign(n, h);
    for (int k = 0; k < n; ++k)
      r.x[k] = lo + k * h;
    r.x[n - 1] = hi;
    r.w.front() *= 0.5;
    r.w.back() *= 0.5;
    break;
  }
  case Scheme::GaussLegendreComposite:
    r = composite_gl(lo, hi, gl_panels(spec), gl_order_used(spec));
    break;
  }
  return r;
}

Integral integrate_1d_detailed(const Func1 &f, const QuadratureSpec &spec) {
  spec.validate();
  Sum1 cur = apply_rule(f, make_rule(spec));
  Integral out{cur.value, spec.n_points, 0};
  if (spec.refinement == Refinement::Fixed)
    return out;
  QuadratureSpec s = spec;
  for (int k = 1; k <= spec.max_doublings; ++k) {
    s = s.doubled();
    const Sum1 next = apply_rule(f, make_rule(s));
    out = {next.value, s.n_points, k};
    if (converged(cur.value, next.value, next.l1, spec.rel_tol))
      return out;
    cur = next;
  }
  throw NumericalError("non-convergence",
                       "1D quadrature did not reach rel_tol after " +
                           std::to_string(spec.max_doublings) + " doublings");
}

double integrate_1d(const Func1 &f, const QuadratureSpec &spec) {
  return integrate_1d_detailed(f, spec).value;
}

namespace {

Sum1 tensor_2d(const Func2 &f, const Rule &r1, const Rule &r2,
               ExecPolicy policy) {
  auto row = [&](std::size_t i) {
    CompensatedSum s, a;
    const double x1 = r1.x[i];
    for (std::size_t j = 0; j < r2.size(); ++j) {
      const double v = f(x1, r2.x[j]);
      check_finite(v, x1, r2.x[j]);
      s.add(r2.w[j] * v);
      a.add(std::abs(r2.w[j] * v));
    }
    return Sum1{r1.w[i] * s.value(), std::abs(r1.w[i]) * a.value()};
  };
  return reduce_rows(r1.size(), row, policy);
}

bool adaptive(const QuadratureSpec &a, const QuadratureSpec &b) {
  return a.refinement == Refinement::Doubling ||
         b.refinement == Refinement::Doubling;
}

} // namespace

double integrate_2d(const Func2 &f, const QuadratureSpec &spec_x1,
                    const QuadratureSpec &spec_x2, ExecPolicy policy) {
  spec_x1.validate();
  spec_x2.validate();
  Sum1 cur = tensor_2d(f, make_rule(spec_x1), make_rule(spec_x2), policy);
  if (!adaptive(spec_x1, spec_x2))
    return cur.value;
  const double tol = std::min(spec_x1.rel_tol, spec_x2.rel_tol);
  const int max_k = std::max(spec_x1.max_doublings, spec_x2.max_doublings);
  QuadratureSpec s1 = spec_x1, s2 = spec_x2;
  for (int k = 1; k <= max_k; ++k) {
    s1 = s1.doubled();
    s2 = s2.doubled();
    const Sum1 next = tensor_2d(f, make_rule(s1), make_rule(s2), policy);
    if (converged(cur.value, next.value, next.l1, tol))
      return next.value;
    cur = next;
  }
  throw NumericalError("non-convergence",
                       "2D quadrature did not reach rel_tol");
}

double CoulombKernel::operator()(double x1, double x2) const {
  const double dx = x1 - x2;
  return prefactor / std::sqrt(dx * dx + softening * softening);
}

namespace {

Sum1 coulomb_sum(const Func2 &fl, const Func2 &fr, const CoulombKernel &k,
                 const QuadratureSpec &s1, const QuadratureSpec &s2,
                 ExecPolicy policy) {
  const Rule r1 = make_rule(s1);
  if (s2.scheme != Scheme::GaussLegendreComposite) {
    const Rule r2 = make_rule(s2);
    auto f = [&](double x1, double x2) {
      return fl(x1, x2) * k(x1, x2) * fr(x1, x2);
    };
    return tensor_2d(f, r1, r2, policy);
  }
  const double lam = k.softening;
  const Rule base = gauss_legendre(gl_order_used(s2));
  const int panels = gl_panels(s2);
  auto row = [&](std::size_t i) {
    const double x1 = r1.x[i];
    const double t0 = std::asinh((s2.lower - x1) / lam);
    const double t1 = std::asinh((s2.upper - x1) / lam);
    const double width = (t1 - t0) / panels;
    CompensatedSum s, a;
    for (int p = 0; p < panels; ++p) {
      const double lo = t0 + p * width;
      const double half = 0.5 * width;
      for (std::size_t q = 0; q < base.size(); ++q) {
        const double t = lo + half * (base.x[q] + 1.0);
        const double x2 = x1 + lam * std::sinh(t);
        const double v = fl(x1, x2) * fr(x1, x2);
        check_finite(v, x1, x2);
        s.add(half * base.w[q] * v);
        a.add(std::abs(half * base.w[q] * v));
      }
    }
    return Sum1{r1.w[i] * k.prefactor * s.value(),
                std::abs(r1.w[i] * k.prefactor) * a.value()};
  };
  return reduce_rows(r1.size(), row, policy);
}

void check_kernel(const CoulombKernel &k) {
  if (!(k.softening > 0.0))
    throw ConfigError("coulomb_element requires softening_length > 0");
}

} // namespace

double coulomb_element_fixed(const Func2 &f_left, const Func2 &f_right,
                             const CoulombKernel &kernel,
                             const QuadratureSpec &spec_x1,
                             const QuadratureSpec &spec_x2,
                             ExecPolicy policy) {
  check_kernel(kernel);
  spec_x1.validate();
  spec_x2.validate();
  return coulomb_sum(f_left, f_right, kernel, spec_x1, spec_x2, policy).value;
}

double coulomb_element(const Func2 &f_left, const Func2 &f_right,
                       const CoulombKernel &kernel,
                       const QuadratureSpec &spec_x1,
                       const QuadratureSpec &spec_x2, ExecPolicy policy) {
  check_kernel(kernel);
  spec_x1.validate();
  spec_x2.validate();
  if (kernel.prefactor == 0.0)
    return 0.0;
  Sum1 cur = coulomb_sum(f_left, f_right, kernel, spec_x1, spec_x2, policy);
  if (!adaptive(spec_x1, spec_x2))
    return cur.value;
  const double tol = std::min(spec_x1.rel_tol, spec_x2.rel_tol);
  const int max_k = std::max(spec_x1.max_doublings, spec_x2.max_doublings);
  QuadratureSpec s1 = spec_x1, s2 = spec_x2;
  for (int k = 1; k <= max_k; ++k) {
    s1 = s1.doubled();
    s2 = s2.doubled();
    const Sum1 next = coulomb_sum(f_left, f_right, kernel, s1, s2, policy);
    if (converged(cur.value, next.value, next.l1, tol))
      return next.value;
    cur = next;
  }
  throw NumericalError("non-convergence",
                       "Coulomb element did not reach rel_tol");
}

namespace {

struct BatchSum {
  std::vector<double> value, l1;
};

BatchSum coulomb_batch_sum(const PairBatch &f, std::size_t m,
                           const CoulombKernel &k, const QuadratureSpec &s1,
                           const QuadratureSpec &s2, ExecPolicy policy) {
  const Rule r1 = make_rule(s1);
  const bool mapped = s2.scheme == Scheme::GaussLegendreComposite;
  const Rule base = gauss_legendre(gl_order_used(s2));
  const Rule r2 = mapped ? Rule{} : make_rule(s2);
  const int panels = gl_panels(s2);
  const double lam = k.softening;
  const std::size_t rows = r1.size();
  std::vector<double> part(rows * m), part_abs(rows * m);

  auto row = [&](std::size_t i) {
    const double x1 = r1.x[i];
    std::vector<CompensatedSum> s(m), a(m);
    std::vector<double> out(m);
    auto add = [&](double x2, double wt) {
      f(x1, x2, out.data());
      for (std::size_t c = 0; c < m; ++c) {
        check_finite(out[c], x1, x2);
        s[c].add(wt * out[c]);
        a[c].add(std::abs(wt * out[c]));
      }
    };
    if (mapped) {
      const double t0 = std::asinh((s2.lower - x1) / lam);
      const double t1 = std::asinh((s2.upper - x1) / lam);
      const double width = (t1 - t0) / panels;
      for (int p = 0; p < panels; ++p) {
        const double lo = t0 + p * width;
        const double half = 0.5 * width;
        for (std::size_t q = 0; q < base.size(); ++q) {
          const double t = lo + half * (base.x[q] + 1.0);
          add(x1 + lam * std::sinh(t), half * base.w[q]);
        }
      }
    } else {
      for (std::size_t j = 0; j < r2.size(); ++j)
        add(r2.x[j], r2.w[j] * k(x1, r2.x[j]));
    }
    const double scale = mapped ? k.prefactor : 1.0;
    for (std::size_t c = 0; c < m; ++c) {
      part[i * m + c] = r1.w[i] * scale * s[c].value();
      part_abs[i * m + c] = std::abs(r1.w[i] * scale) * a[c].value();
    }
  };

  if (policy == ExecPolicy::Parallel) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rows); ++i) {
      try {
        row(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(dqd_quadrature_error)
        if (!err)
          err = std::current_exception();
      }
    }
    if (err)
      std::rethrow_exception(err);
  } else {
    for (std::size_t i = 0; i < rows; ++i)
      row(i);
  }
  BatchSum out{std::vector<double>(m), std::vector<double>(m)};
  for (std::size_t c = 0; c < m; ++c) {
    CompensatedSum s, a;
    for (std::size_t i = 0; i < rows; ++i) {
      s.add(part[i * m + c]);
      a.add(part_abs[i * m + c]);
    }
    out.value[c] = s.value();
    out.l1[c] = a.value();
  }
  return out;
}

} // namespace

std::vector<double> coulomb_elements(const PairBatch &f, std::size_t m,
                                     const CoulombKernel &kernel,
                                     const QuadratureSpec &spec_x1,
                                     const QuadratureSpec &spec_x2,
                                     ExecPolicy policy) {
  check_kernel(kernel);
  spec_x1.validate();
  spec_x2.validate();
  if (kernel.prefactor == 0.0 || m == 0)
    return std::vector<double>(m, 0.0);
  BatchSum cur = coulomb_batch_sum(f, m, kernel, spec_x1, spec_x2, policy);
  if (!adaptive(spec_x1, spec_x2))
    return cur.value;
  const double tol = std::min(spec_x1.rel_tol, spec_x2.rel_tol);
  const int max_k = std::max(spec_x1.max_doublings, spec_x2.max_doublings);
  QuadratureSpec s1 = spec_x1, s2 = spec_x2;
  for (int k = 1; k <= max_k; ++k) {
    s1 = s1.doubled();
    s2 = s2.doubled();
    BatchSum next = coulomb_batch_sum(f, m, kernel, s1, s2, policy);
    bool done = true;
    for (std::size_t c = 0; c < m; ++c)
      done = done && converged(cur.value[c], next.value[c], next.l1[c], tol);
    if (done)
      return next.value;
    cur = std::move(next);
  }
  throw NumericalError("non-convergence",
                       "Coulomb elements did not reach rel_tol");
}

} // namespace dqd
