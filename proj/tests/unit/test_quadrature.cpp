#include "dqd/error.hpp"
#include "dqd/orbitals.hpp"
#include "dqd/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace dqd;

namespace {

QuadratureSpec spec(double lo, double hi, int n = 512,
                    Scheme s = Scheme::GaussLegendreComposite,
                    Refinement r = Refinement::Fixed) {
  QuadratureSpec q;
  q.lower = lo;
  q.upper = hi;
  q.n_points = n;
  q.scheme = s;
  q.refinement = r;
  return q;
}

double gauss(double x) { return std::exp(-x * x); }

// \int N(u; mu, var) * P / sqrt(u^2 + lam^2) du, split at the kernel peak
double gaussian_coulomb_reference(double mu, double var, double pref,
                                  double lam) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double sd = std::sqrt(var);
  auto f = [&](double u) {
    return std::exp(-(u - mu) * (u - mu) / (2.0 * var)) /
           std::sqrt(2.0 * std::numbers::pi * var) * pref /
           std::sqrt(u * u + lam * lam);
  };
  const double lo = std::min(0.0, mu) - 40.0 * sd;
  const double hi = std::max(0.0, mu) + 40.0 * sd;
  return ts.integrate(f, lo, 0.0) + ts.integrate(f, 0.0, hi);
}

} // namespace

TEST_CASE("Gauss-Legendre nodes") {
  for (int n : {1, 2, 5, 16, 64}) {
    const Rule r = gauss_legendre(n);
    double sw = 0.0;
    for (double w : r.w)
      sw += w;
    CHECK(sw == Catch::Approx(2.0).epsilon(1e-14));
    // exact up to degree 2n - 1
    double m = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
      m += r.w[i] * std::pow(r.x[i], 2 * n - 2);
    CHECK(m == Catch::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
    CHECK(std::is_sorted(r.x.begin(), r.x.end()));
  }
}

TEST_CASE("simple integrals") {
  CHECK(integrate_1d([](double) { return 1.0; },
                     spec(0, 1, 17, Scheme::Trapezoid)) == 1.0);
  auto g2 = [](double x) {
    return std::exp(-x * x) / std::sqrt(std::numbers::pi);
  };
  CHECK(std::abs(integrate_1d(g2, spec(-20, 20)) - 1.0) < 1e-10);
  auto odd = [](double x) { return x * std::exp(-x * x) * std::cos(x); };
  CHECK(std::abs(integrate_1d(odd, spec(-15, 15))) < 1e-12);
  CHECK(std::abs(integrate_1d(odd, spec(-15, 15, 400, Scheme::Trapezoid))) <
        1e-12);
}

TEST_CASE("doubling from fewer nodes than one Gauss-Legendre panel") {
  // 32 and 64 nodes must be different rules
  CHECK(make_rule(spec(-60, 60, 32)).size() == 32);
  CHECK(make_rule(spec(-60, 60, 64)).size() == 64);
  QuadratureSpec q = spec(-60, 60, 32, Scheme::GaussLegendreComposite,
                          Refinement::Doubling);
  q.rel_tol = 1e-9;
  q.max_doublings = 14;
  const double exact = std::sqrt(std::numbers::pi / 0.3);
  CHECK(integrate_1d([](double x) { return std::exp(-0.3 * x * x); }, q) ==
        Catch::Approx(exact).epsilon(1e-9));
}

TEST_CASE("left Riemann rule is the left-endpoint accumulation") {
  const Rule r = make_rule(spec(0.0, 1.0, 4, Scheme::LeftRiemann));
  REQUIRE(r.size() == 4);
  CHECK(r.x == std::vector<double>{0.0, 0.25, 0.5, 0.75});
  CHECK(integrate_1d([](double x) { return x; },
                     spec(0.0, 1.0, 4, Scheme::LeftRiemann)) ==
        Catch::Approx(0.375));
}

TEST_CASE("non-finite integrands report the abscissa") {
  auto bad = [](double x) { return x > 0.5 ? NAN : 1.0; };
  try {
    integrate_1d(bad, spec(0, 1, 8, Scheme::Trapezoid));
    FAIL("expected an integration error");
  } catch (const IntegrationError &e) {
    CHECK(e.abscissa() > 0.5);
    CHECK(e.code() == "integration");
  }
  auto inf2 = [](double x1, double) { return x1 > 0 ? INFINITY : 0.0; };
  CHECK_THROWS_AS(integrate_2d(inf2, spec(-1, 1, 8), spec(-1, 1, 8)),
                  IntegrationError);
}

TEST_CASE("invalid specs and non-convergence") {
  CHECK_THROWS_AS(integrate_1d(gauss, spec(1, 0)), ConfigError);
  CHECK_THROWS_AS(integrate_1d(gauss, spec(0, 1, 1)), ConfigError);
  QuadratureSpec q = spec(0, 1, 8, Scheme::Trapezoid, Refinement::Doubling);
  q.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate_1d(gauss, q), ConfigError);
  q.rel_tol = 1e-300;
  q.max_doublings = 2;
  try {
    integrate_1d(gauss, q);
    FAIL("expected non-convergence");
  } catch (const NumericalError &e) {
    CHECK(e.code() == "non-convergence");
  }
  CHECK_THROWS_AS(scheme_from_string("simpson"), ConfigError);
}

TEST_CASE("schemes agree once converged") {
  auto f = [](double x) { return std::exp(-0.3 * x * x) * (1.0 + 0.2 * x); };
  const double tol = 1e-8;
  double v[3];
  int i = 0;
  for (Scheme s :
       {Scheme::LeftRiemann, Scheme::Trapezoid, Scheme::GaussLegendreComposite}) {
    QuadratureSpec q = spec(-12, 12, 16, s, Refinement::Doubling);
    q.gl_order = 8;
    q.rel_tol = tol;
    q.max_doublings = 12;
    v[i++] = integrate_1d(f, q);
  }
  const double exact = std::sqrt(std::numbers::pi / 0.3);
  for (double x : v)
    CHECK(std::abs(x - exact) <= 10 * tol * exact);
}

TEST_CASE("trapezoid error is second order") {
  auto f = [](double x) { return std::exp(x); };
  const double exact = std::exp(1.0) - 1.0;
  std::vector<double> lh, le;
  for (int n : {9, 17, 33, 65, 129}) {
    lh.push_back(std::log(1.0 / (n - 1)));
    le.push_back(std::log(std::abs(
        integrate_1d(f, spec(0, 1, n, Scheme::Trapezoid)) - exact)));
  }
  // least-squares slope
  const double n = lh.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lh.size(); ++i) {
    sx += lh[i];
    sy += le[i];
    sxx += lh[i] * lh[i];
    sxy += lh[i] * le[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(slope - 2.0) < 0.2);
}

TEST_CASE("two-dimensional integrals") {
  auto g = [](double x) { return std::exp(-x * x) * (2.0 + std::sin(x)); };
  auto h = [](double x) { return 1.0 / (1.0 + x * x); };
  const QuadratureSpec s1 = spec(-8, 8), s2 = spec(-5, 6);
  const double prod = integrate_1d(g, s1) * integrate_1d(h, s2);
  const double two = integrate_2d(
      [&](double a, double b) { return g(a) * h(b); }, s1, s2);
  CHECK(std::abs(two - prod) <= 1e-10 * std::abs(prod));

  auto f = [](double a, double b) {
    return std::exp(-a * a - 2 * b * b + 0.5 * a * b) * (1 + a);
  };
  const double serial = integrate_2d(f, s1, s1, ExecPolicy::Serial);
  const double parallel = integrate_2d(f, s1, s1, ExecPolicy::Parallel);
  CHECK(serial == parallel);
}

TEST_CASE("Coulomb kernel") {
  const CoulombKernel k{3.5, 1.0};
  CHECK(k(2.0, 2.0) == 3.5);
  CHECK(k(0.0, 3.0) == Catch::Approx(3.5 / std::sqrt(10.0)));
  const QuadratureSpec s = spec(-5, 5);
  auto one = [](double, double) { return 1.0; };
  CHECK_THROWS_AS(coulomb_element(one, one, CoulombKernel{1.0, 0.0}, s, s),
                  ConfigError);
  CHECK(coulomb_element(one, one, CoulombKernel{0.0, 0.1}, s, s) == 0.0);
}

TEST_CASE("Gaussian Coulomb elements match 1D reference integrals") {
  const PhysParams phys(0.191, 7.8, 0.1);
  const double d = 12.0, hw = 4.0;
  const Orbital l = Orbital::fock_darwin(Side::Left, d, hw, phys);
  const Orbital r = Orbital::fock_darwin(Side::Right, d, hw, phys);
  const double a = l.fd_width();
  const double L = d + 12.0 * a;
  QuadratureSpec q = spec(-L, L, 512, Scheme::GaussLegendreComposite,
                          Refinement::Doubling);
  q.rel_tol = 1e-10;
  const double pref = phys.coulomb_prefactor();
  for (double lam : {0.1, 1.0}) {
    const CoulombKernel k{pref, lam};
    auto d0 = [&](double x1, double x2) {
      const double v = l.value(x1) * r.value(x2);
      return v * v;
    };
    auto e0 = [&](double x1, double x2) {
      return l.value(x1) * r.value(x2) * r.value(x1) * l.value(x2);
    };
    auto one = [](double, double) { return 1.0; };
    // |psi|^2 of each FD orbital is N(centre, a^2/2); the separation
    // x1 - x2 is then N(-2d, a^2). The overlap density is l N(0, a^2/2).
    const double ref_d0 = gaussian_coulomb_reference(-2 * d, a * a, pref, lam);
    const double ov = std::exp(-d * d / (a * a));
    const double ref_e0 =
        ov * ov * gaussian_coulomb_reference(0.0, a * a, pref, lam);
    CHECK(coulomb_element(d0, one, k, q, q) ==
          Catch::Approx(ref_d0).epsilon(1e-9));
    CHECK(coulomb_element(e0, one, k, q, q) ==
          Catch::Approx(ref_e0).epsilon(1e-9));
  }
}

TEST_CASE("Coulomb elements: swap symmetry, lambda monotonicity, batching") {
  const PhysParams phys(0.191, 7.8, 0.1);
  const Orbital l = Orbital::fock_darwin(Side::Left, 10.0, 5.0, phys);
  const Orbital r = Orbital::fock_darwin(Side::Right, 10.0, 5.0, phys);
  const QuadratureSpec q = spec(-45, 45, 512, Scheme::GaussLegendreComposite,
                                Refinement::Doubling);
  auto one = [](double, double) { return 1.0; };
  auto e0 = [&](double x1, double x2) {
    return l.value(x1) * r.value(x2) * r.value(x1) * l.value(x2);
  };
  auto e0_swapped = [&](double x1, double x2) { return e0(x2, x1); };
  const CoulombKernel k{phys.coulomb_prefactor(), 0.1};
  const double a = coulomb_element(e0, one, k, q, q);
  const double b = coulomb_element(e0_swapped, one, k, q, q);
  CHECK(std::abs(a - b) <= 1e-8 * std::abs(a));

  auto d0 = [&](double x1, double x2) {
    const double v = l.value(x1) * r.value(x2);
    return v * v;
  };
  double prev_d = INFINITY, prev_e = INFINITY;
  for (double lam : {0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0}) {
    const CoulombKernel kk{phys.coulomb_prefactor(), lam};
    const double vd = coulomb_element(d0, one, kk, q, q);
    const double ve = coulomb_element(e0, one, kk, q, q);
    CHECK(vd <= prev_d);
    CHECK(ve <= prev_e);
    CHECK(vd > 0.0);
    prev_d = vd;
    prev_e = ve;
  }

  const auto batch = coulomb_elements(
      [&](double x1, double x2, double *out) {
        out[0] = d0(x1, x2);
        out[1] = e0(x1, x2);
      },
      2, k, q, q);
  CHECK(batch[1] == Catch::Approx(a).epsilon(1e-12));
  CHECK(batch[0] ==
        Catch::Approx(coulomb_element(d0, one, k, q, q)).epsilon(1e-12));

  QuadratureSpec fixed = q;
  fixed.refinement = Refinement::Fixed;
  CHECK(coulomb_element_fixed(d0, one, k, fixed, fixed, ExecPolicy::Serial) ==
        coulomb_element_fixed(d0, one, k, fixed, fixed, ExecPolicy::Parallel));
}

TEST_CASE("compensated summation") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i)
    s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == Catch::Approx(1e-13).epsilon(1e-10));
}
