#include "dqd/potentials.hpp"

#include "dqd/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace dqd {

CatichaParams::CatichaParams(double a_, double b_) : a(a_), b(b_) {
  if (!(b_ > 0.0) || !(a_ > b_) || !std::isfinite(a_)) {
    std::ostringstream os;
    os << "Caticha parameters require a > b > 0 (got a = " << a_
       << ", b = " << b_ << ")";
    throw ConfigError(os.str());
  }
}

CatichaParams CatichaParams::from_inverse_meters(double a_per_m,
                                                 double b_per_m) {
  return CatichaParams(a_per_m * 1e-9, b_per_m * 1e-9);
}

CatichaW caticha_w(double x, const CatichaParams &cp) {
  const double a = cp.a, b = cp.b;
  CatichaW w{};
  w.s = std::abs(x);
  w.sign = x < 0.0 ? -1.0 : 1.0;
  w.p = std::exp(-2.0 * a * w.s);
  w.q = std::exp(-2.0 * b * w.s);
  const double p = w.p, q = w.q;
  const double amb = a - b, apb = a + b, a2mb2 = amb * apb;
  w.w0 = 0.25 * (amb * (1.0 + p * q) + apb * (p + q));
  w.w1 = 0.25 * w.sign * a2mb2 * (1.0 - p) * (1.0 + q);
  w.w2 = 0.25 * a2mb2 * (a * (1.0 + p) * (1.0 + q) + b * (1.0 - p) * (1.0 - q));
  w.w3 = 0.25 * w.sign * a2mb2 *
         ((a * a + b * b) * (1.0 - p) * (1.0 + q) +
          2.0 * a * b * (1.0 + p) * (1.0 - q));
  return w;
}

double v_biquadratic(double x, const BiquadraticParams &p,
                     const PhysParams &phys) {
  // (1/2) m omega0^2 = (hbar omega0)^2 / (4 hbar^2/2m)
  const double k = p.hbar_omega0 * p.hbar_omega0 /
                   (4.0 * phys.kinetic_prefactor());
  const double l = x + p.d, r = x - p.d;
  return p.offset + k * std::min(l * l, r * r);
}

double v_caticha(double x, const CatichaParams &cp, const PhysParams &phys) {
  const CatichaW w = caticha_w(x, cp);
  const double a = cp.a, b = cp.b;
  const double num = a * a * w.p * (1.0 + w.q) * (1.0 + w.q) +
                     b * b * w.q * (1.0 - w.p) * (1.0 - w.p);
  return -2.0 * phys.kinetic_prefactor() * (a - b) * (a + b) * num /
         (4.0 * w.w0 * w.w0);
}

double dv_caticha(double x, const CatichaParams &cp, const PhysParams &phys) {
  const CatichaW w = caticha_w(x, cp);
  const double r1 = w.w1 / w.w0;
  const double lnw3 = w.w3 / w.w0 - 3.0 * (w.w2 / w.w0) * r1 + 2.0 * r1 * r1 * r1;
  return -2.0 * phys.kinetic_prefactor() * lnw3;
}

double caticha_ground_energy(const CatichaParams &p, const PhysParams &phys) {
  return -p.a * p.a * phys.kinetic_prefactor();
}

double caticha_excited_energy(const CatichaParams &p, const PhysParams &phys) {
  return -p.b * p.b * phys.kinetic_prefactor();
}

WellGeometry geometry_of_caticha(const CatichaParams &cp,
                                 const PhysParams &phys) {
  const double a = cp.a, b = cp.b;
  auto dv = [&](double x) { return dv_caticha(x, cp, phys); };
  // Wells sit roughly where (a-b) e^{(a+b)x} ~ 2(a+b).
  const double x0 = std::max(0.0, std::log(4.0 * (a + b) / (a - b)) / (a + b));
  const double x_hi = 2.0 * x0 + 40.0 / (a + b);
  constexpr int n_scan = 600;
  const double step = x_hi / n_scan;
  double lo = step;
  if (dv(lo) >= 0.0)
    throw GeometryError("degenerate-geometry",
                        "Caticha potential has no central barrier (single well)");
  double hi = lo;
  bool found = false;
  for (int k = 2; k <= n_scan; ++k) {
    hi = k * step;
    if (dv(hi) > 0.0) {
      found = true;
      break;
    }
    lo = hi;
  }
  if (!found)
    throw GeometryError("degenerate-geometry",
                        "no interior minimum found for Caticha potential");
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (dv(mid) > 0.0 ? hi : lo) = mid;
  }
  // Newton polish on dV/dx with a central-difference second derivative.
  double x = 0.5 * (lo + hi);
  constexpr double h = 1e-4;
  for (int it = 0; it < 20; ++it) {
    const double d2 = (dv(x + h) - dv(x - h)) / (2.0 * h);
    if (!(d2 > 0.0))
      break;
    const double dx = dv(x) / d2;
    const double xn = x - dx;
    if (xn < lo || xn > hi)
      break;
    x = xn;
    if (std::abs(dx) < 1e-10)
      break;
  }
  WellGeometry g;
  g.d = x;
  g.depth_xi = v_caticha(x, cp, phys);
  g.barrier_height = v_caticha(0.0, cp, phys) - g.depth_xi;
  return g;
}

namespace {

// (a, b) -> (s a, s b) maps x -> x / s and V -> s^2 V, so the shape is set by
// delta = (a - b) / a alone and the dimensionless product
//   Lambda = |depth| d^2 / (hbar^2/2m)
// depends only on delta.
struct Shape {
  bool valid = false;
  double d1 = 0.0;      // d at a = 1
  double depth1 = 0.0;  // depth at a = 1 (meV)
  double lambda = 0.0;  // 0 outside the double-well region
};

Shape shape_at(double log_delta, const PhysParams &phys) {
  Shape s;
  const double delta = std::exp(log_delta);
  if (!(delta > 0.0) || !(delta < 1.0))
    return s;
  try {
    const CatichaParams cp(1.0, 1.0 - delta);
    const WellGeometry g = geometry_of_caticha(cp, phys);
    s.valid = true;
    s.d1 = g.d;
    s.depth1 = g.depth_xi;
    s.lambda = -g.depth_xi * g.d * g.d / phys.kinetic_prefactor();
  } catch (const GeometryError &) {
  }
  return s;
}

CatichaParams params_from(double a, double log_delta) {
  return CatichaParams(a, a - a * std::exp(log_delta));
}

double residual_of(const WellGeometry &g, double d, double depth) {
  return std::max(std::abs(g.d / d - 1.0), std::abs(g.depth_xi / depth - 1.0));
}

} // namespace

InverseResult caticha_for_geometry_detailed(double target_d,
                                            double target_depth,
                                            const PhysParams &phys,
                                            const InverseOptions &opt) {
  if (!(target_d > 0.0))
    throw ConfigError("target interdot distance must be > 0");
  if (!(target_depth < 0.0))
    throw ConfigError("target well depth must be < 0 (V -> 0 at infinity)");
  const double target_lambda =
      -target_depth * target_d * target_d / phys.kinetic_prefactor();

  // Coarse scan in log(delta) from the single-well boundary towards a ~ b.
  constexpr double log_hi = -1e-3;  // delta ~ 0.999
  constexpr double log_lo = -34.0;  // delta ~ 1.7e-15, below which b rounds to a
  constexpr int n_grid = 96;
  double prev_u = log_hi;
  Shape prev = shape_at(prev_u, phys);
  double bracket_lo = 0.0, bracket_hi = 0.0;
  bool found = false;
  for (int k = 1; k <= n_grid; ++k) {
    const double u = log_hi + (log_lo - log_hi) * k / n_grid;
    const Shape cur = shape_at(u, phys);
    if (cur.valid && cur.lambda >= target_lambda &&
        (!prev.valid || prev.lambda < target_lambda)) {
      bracket_lo = u;      // lambda above target
      bracket_hi = prev_u; // lambda below target (or outside the region)
      found = true;
      break;
    }
    prev = cur;
    prev_u = u;
  }
  if (!found) {
    std::ostringstream os;
    os << "target (d = " << target_d << " nm, depth = " << target_depth
       << " meV) lies outside the reachable Caticha region";
    throw GeometryError("infeasible-target", os.str());
  }
  for (int it = 0; it < 200 && bracket_hi - bracket_lo > 1e-15; ++it) {
    const double mid = 0.5 * (bracket_lo + bracket_hi);
    const Shape s = shape_at(mid, phys);
    if (s.valid && s.lambda >= target_lambda)
      bracket_lo = mid;
    else
      bracket_hi = mid;
  }
  double u = bracket_lo;
  const Shape s = shape_at(u, phys);
  // A bracket against the single-well boundary only contains the target if
  // Lambda actually comes down to it there.
  if (!s.valid || std::abs(s.lambda / target_lambda - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "target (d = " << target_d << " nm, depth = " << target_depth
       << " meV) is too shallow for a double well at this separation";
    throw GeometryError("infeasible-target", os.str());
  }
  double a = s.d1 / target_d;

  InverseResult out;
  out.params = params_from(a, u);
  out.geometry = geometry_of_caticha(out.params, phys);
  out.residual = residual_of(out.geometry, target_d, target_depth);

  // Damped Newton polish on (log a, log delta) with a finite-difference
  // Jacobian.
  auto resid = [&](double la, double ld, std::array<double, 2> &r) {
    const CatichaParams cp = params_from(std::exp(la), ld);
    const WellGeometry g = geometry_of_caticha(cp, phys);
    r = {g.d / target_d - 1.0, g.depth_xi / target_depth - 1.0};
  };
  double la = std::log(a), ld = u;
  int it = 0;
  for (; it < opt.max_iterations && out.residual > opt.rel_tol; ++it) {
    std::array<double, 2> r0{}, rp{}, rm{};
    resid(la, ld, r0);
    constexpr double eps = 1e-6;
    double jac[2][2];
    resid(la + eps, ld, rp);
    resid(la - eps, ld, rm);
    jac[0][0] = (rp[0] - rm[0]) / (2 * eps);
    jac[1][0] = (rp[1] - rm[1]) / (2 * eps);
    resid(la, ld + eps, rp);
    resid(la, ld - eps, rm);
    jac[0][1] = (rp[0] - rm[0]) / (2 * eps);
    jac[1][1] = (rp[1] - rm[1]) / (2 * eps);
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    if (!(std::abs(det) > 0.0))
      break;
    const double dla = -(jac[1][1] * r0[0] - jac[0][1] * r0[1]) / det;
    const double dld = -(-jac[1][0] * r0[0] + jac[0][0] * r0[1]) / det;
    double damp = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls, damp *= 0.5) {
      const double nla = la + damp * dla, nld = ld + damp * dld;
      if (!(nld < 0.0))
        continue;
      try {
        const CatichaParams cp = params_from(std::exp(nla), nld);
        const WellGeometry g = geometry_of_caticha(cp, phys);
        const double res = residual_of(g, target_d, target_depth);
        if (res < out.residual) {
          la = nla;
          ld = nld;
          out.params = cp;
          out.geometry = g;
          out.residual = res;
          improved = true;
          break;
        }
      } catch (const Error &) {
      }
    }
    if (!improved)
      break;
  }
  out.iterations = it;
  // Below ~1e-9 the remaining mismatch is set by the spacing of
  // representable b values, not by the solver.
  if (out.residual > std::max(opt.rel_tol, 1e-6)) {
    std::ostringstream os;
    os << "inverse geometry did not converge (residual " << out.residual
       << ")";
    throw GeometryError("non-convergence", os.str(), out.residual);
  }
  return out;
}

CatichaParams caticha_for_geometry(double target_d, double target_depth,
                                   const PhysParams &phys,
                                   const InverseOptions &opt) {
  return caticha_for_geometry_detailed(target_d, target_depth, phys, opt)
      .params;
}

BiquadraticParams biquadratic_matching_caticha(const WellGeometry &g,
                                               const PhysParams &phys) {
  if (!(g.d > 0.0))
    throw GeometryError("degenerate-geometry",
                        "bi-quadratic matching needs d > 0");
  if (!(g.barrier_height >= 0.0))
    throw GeometryError("degenerate-geometry",
                        "bi-quadratic matching needs a non-negative barrier");
  BiquadraticParams p;
  p.d = g.d;
  p.offset = g.depth_xi;
  p.hbar_omega0 =
      2.0 * std::sqrt(phys.kinetic_prefactor() * g.barrier_height) / g.d;
  return p;
}

Potential Potential::caticha(const CatichaParams &p, const PhysParams &phys) {
  return Potential("caticha", [p, phys](double x) { return v_caticha(x, p, phys); });
}

Potential Potential::biquadratic(const BiquadraticParams &p,
                                 const PhysParams &phys) {
  return Potential("biquadratic",
                   [p, phys](double x) { return v_biquadratic(x, p, phys); });
}

Potential Potential::harmonic(double hbar_omega0, double center, double offset,
                              const PhysParams &phys) {
  const double k = hbar_omega0 * hbar_omega0 / (4.0 * phys.kinetic_prefactor());
  return Potential("harmonic", [=](double x) {
    const double u = x - center;
    return offset + k * u * u;
  });
}

Potential Potential::box(double half_width, double wall) {
  return Potential("box", [=](double x) {
    return std::abs(x) <= half_width ? 0.0 : wall;
  });
}

Potential Potential::shifted(double c) const {
  auto f = f_;
  return Potential(name_ + "+shift", [f, c](double x) { return f(x) + c; });
}

} // namespace dqd
