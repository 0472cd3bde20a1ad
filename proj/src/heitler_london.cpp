#include "dqd/heitler_london.hpp"

#include "dqd/error.hpp"

#include <cmath>
#include <vector>

namespace dqd {

double hl_exchange(double l, double W_v, double D0, double E0) {
  if (l == 0.0)
    return 0.0;
  const double l2 = l * l;
  return 2.0 * l2 / (1.0 - l2 * l2) * (W_v + D0 - E0 / l2);
}

double hl_wv(const Orbital &left, const Orbital &right,
             const SingleParticleHamiltonian &h, const QuadratureSpec &quad,
             double l, KineticForm form) {
  const double hll = h.element(left, left, quad, form);
  const double hrr = h.element(right, right, quad, form);
  const double hlr = h.element(left, right, quad, form);
  return hll + hrr - 2.0 * hlr / l;
}

double hl_wv_fd_shortcut(const Orbital &left, const Orbital &right,
                         const SingleParticleHamiltonian &h,
                         const QuadratureSpec &quad, double l) {
  if (left.kind() != OrbitalKind::FockDarwin ||
      right.kind() != OrbitalKind::FockDarwin)
    throw ConfigError("the W_v potential-difference form needs FD orbitals");
  const double k = h.phys().kinetic_prefactor();
  // FD of width a solves the harmonic well with m w0^2 / 2 = K / a^4
  auto v_hat = [&](const Orbital &o, double x) {
    const double a = o.fd_width();
    const double u = x - o.fd_center();
    return h.potential(x) - k * u * u / (a * a * a * a);
  };
  auto sandwich = [&](const Orbital &bra, const Orbital &op,
                      const Orbital &ket) {
    return integrate_1d(
        [&](double x) { return bra.value(x) * v_hat(op, x) * ket.value(x); },
        quad);
  };
  // v = V(1) + V(2) - V_L(1) - V_R(2) between L(1)R(2) and R(1)L(2)
  const double direct = sandwich(left, left, left) + sandwich(right, right, right);
  const double exchange =
      l * (sandwich(left, left, right) + sandwich(right, right, left));
  return direct - exchange / (l * l);
}

namespace {

struct Tab {
  std::vector<double> x, w, l, dl, r, dr, v;
};

Tab tabulate(const HLInputs &in, const QuadratureSpec &spec) {
  const Rule rule = make_rule(spec);
  Tab t;
  t.x = rule.x;
  t.w = rule.w;
  const std::size_t n = rule.size();
  t.l.resize(n);
  t.dl.resize(n);
  t.r.resize(n);
  t.dr.resize(n);
  t.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Jet jl = in.left.jet(t.x[i]), jr = in.right.jet(t.x[i]);
    t.l[i] = jl.value;
    t.dl[i] = jl.d1;
    t.r[i] = jr.value;
    t.dr[i] = jr.d1;
    t.v[i] = in.hamiltonian.potential(t.x[i]);
  }
  return t;
}

struct OneBody {
  double norm_s, norm_t, h_s, h_t;
};

// Unnormalized S~ = L1 R2 + R1 L2 and T~ = L1 R2 - R1 L2 on the tensor
// product rule; quadratic-form kinetic energy in both coordinates.
OneBody one_body(const Tab &t, double k, ExecPolicy policy) {
  const std::size_t n = t.x.size();
  std::vector<double> ns(n), nt(n), hs(n), ht(n);
  auto row = [&](std::size_t i) {
    CompensatedSum a, b, c, d;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = t.w[i] * t.w[j];
      const double p = t.l[i] * t.r[j], q = t.r[i] * t.l[j];
      const double p1 = t.dl[i] * t.r[j], q1 = t.dr[i] * t.l[j];
      const double p2 = t.l[i] * t.dr[j], q2 = t.r[i] * t.dl[j];
      const double vv = t.v[i] + t.v[j];
      const double s = p + q, tt = p - q;
      const double s1 = p1 + q1, s2 = p2 + q2;
      const double t1 = p1 - q1, t2 = p2 - q2;
      a.add(w * s * s);
      b.add(w * tt * tt);
      c.add(w * (k * (s1 * s1 + s2 * s2) + vv * s * s));
      d.add(w * (k * (t1 * t1 + t2 * t2) + vv * tt * tt));
    }
    ns[i] = a.value();
    nt[i] = b.value();
    hs[i] = c.value();
    ht[i] = d.value();
  };
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
      row(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i)
      row(i);
  }
  CompensatedSum a, b, c, d;
  for (std::size_t i = 0; i < n; ++i) {
    a.add(ns[i]);
    b.add(nt[i]);
    c.add(hs[i]);
    d.add(ht[i]);
  }
  return {a.value(), b.value(), c.value(), d.value()};
}

} // namespace

double hl_d0(const Orbital &left, const Orbital &right,
             const CoulombKernel &kernel, const QuadratureSpec &quad,
             ExecPolicy policy) {
  auto f = [&](double x1, double x2) {
    const double v = left.value(x1) * right.value(x2);
    return v * v;
  };
  return coulomb_element(f, [](double, double) { return 1.0; }, kernel, quad,
                         quad, policy);
}

double hl_e0(const Orbital &left, const Orbital &right,
             const CoulombKernel &kernel, const QuadratureSpec &quad,
             ExecPolicy policy) {
  auto f = [&](double x1, double x2) {
    return left.value(x1) * right.value(x2) * right.value(x1) *
           left.value(x2);
  };
  return coulomb_element(f, [](double, double) { return 1.0; }, kernel, quad,
                         quad, policy);
}

HLResult j_heitler_london(const HLInputs &in) {
  HLResult r;
  r.basis = to_string(in.left.kind());
  r.potential = in.hamiltonian.confinement().name();
  const OverlapData ov = overlap(in.left, in.right, in.quad);
  r.l = ov.l;
  if (r.l == 0.0)
    throw NumericalError("zero-overlap",
                         "orbitals do not overlap at working precision");
  r.W_v = in.wv_form == WvForm::Hamiltonian
              ? hl_wv(in.left, in.right, in.hamiltonian, in.quad, r.l,
                      in.kinetic)
              : hl_wv_fd_shortcut(in.left, in.right, in.hamiltonian, in.quad,
                                  r.l);
  // D0 and E0 share nodes and orbital evaluations
  const auto c = coulomb_elements(
      [&](double x1, double x2, double *out) {
        const double l1 = in.left.value(x1), r1 = in.right.value(x1);
        const double l2 = in.left.value(x2), r2 = in.right.value(x2);
        const double p = l1 * r2;
        out[0] = p * p;
        out[1] = p * r1 * l2;
      },
      2, in.kernel, in.quad, in.quad, in.policy);
  r.D0 = c[0];
  r.E0 = c[1];
  r.J_HL = hl_exchange(r.l, r.W_v, r.D0, r.E0);
  return r;
}

HLDirect hl_direct(const HLInputs &in) {
  const double k = in.hamiltonian.phys().kinetic_prefactor();
  auto evaluate = [&](const QuadratureSpec &spec) {
    return one_body(tabulate(in, spec), k, in.policy);
  };
  QuadratureSpec spec = in.quad;
  OneBody ob = evaluate(spec);
  if (spec.refinement == Refinement::Doubling) {
    bool done = false;
    for (int i = 0; i < spec.max_doublings && !done; ++i) {
      spec = spec.doubled();
      const OneBody next = evaluate(spec);
      const double ds = std::abs(next.h_s / next.norm_s - ob.h_s / ob.norm_s);
      const double dt = std::abs(next.h_t / next.norm_t - ob.h_t / ob.norm_t);
      const double scale = std::abs(next.h_s / next.norm_s);
      done = std::max(ds, dt) <= spec.rel_tol * scale;
      ob = next;
    }
    if (!done)
      throw NumericalError("non-convergence",
                           "direct HL one-body integrals did not converge");
  }
  const auto c = coulomb_elements(
      [&](double x1, double x2, double *out) {
        const double p = in.left.value(x1) * in.right.value(x2);
        const double q = in.right.value(x1) * in.left.value(x2);
        out[0] = (p + q) * (p + q);
        out[1] = (p - q) * (p - q);
      },
      2, in.kernel, in.quad, in.quad, in.policy);
  HLDirect d;
  d.E_S = (ob.h_s + c[0]) / ob.norm_s;
  d.E_T = (ob.h_t + c[1]) / ob.norm_t;
  d.J = d.E_T - d.E_S;
  return d;
}

} // namespace dqd
