#include "dqd/hund_mulliken.hpp"

#include "dqd/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dqd {

std::string to_string(HMMode m) {
  return m == HMMode::Verbatim ? "verbatim" : "full_offset";
}

HMMode hm_mode_from_string(const std::string &s) {
  if (s == "verbatim")
    return HMMode::Verbatim;
  if (s == "full_offset" || s == "full-offset")
    return HMMode::FullOffset;
  throw ConfigError("unknown hm_mode '" + s + "'");
}

double hm_single_particle(const Orbital &phi,
                          const SingleParticleHamiltonian &h,
                          const QuadratureSpec &quad, KineticForm form) {
  return h.element(phi, phi, quad, form);
}

HMElements hm_coulomb_elements(const HMOrbitalPair &pair,
                               const CoulombKernel &kernel,
                               const QuadratureSpec &quad,
                               ExecPolicy policy) {
  const Orbital &pl = pair.phi_left, &pr = pair.phi_right;
  const double r2 = std::numbers::sqrt2;
  const auto c = coulomb_elements(
      [&](double x1, double x2, double *out) {
        const double a = pl.value(x1), b = pr.value(x1);
        const double c = pl.value(x2), e = pr.value(x2);
        const double dl = a * c, dr = b * e;
        const double s = (a * e + c * b) / r2, t = (a * e - c * b) / r2;
        out[0] = dl * dl;
        out[1] = dr * dr;
        out[2] = dl * dr;
        out[3] = s * s;
        out[4] = t * t;
        out[5] = dl * s / r2;
        out[6] = dr * s / r2;
      },
      7, kernel, quad, quad, policy);
  HMElements el;
  el.U = c[0];
  el.U_R = c[1];
  el.X = c[2];
  el.V_S = c[3];
  el.V_T = c[4];
  el.w = c[5];
  el.w_R = c[6];
  return el;
}

HMElements hm_elements(const HMOrbitalPair &pair, const HMInputs &in) {
  HMElements el = hm_coulomb_elements(pair, in.kernel, in.quad, in.policy);
  el.eps_L = hm_single_particle(pair.phi_left, in.hamiltonian, in.quad,
                                in.kinetic);
  el.eps_R = hm_single_particle(pair.phi_right, in.hamiltonian, in.quad,
                                in.kinetic);
  el.t_prime = in.hamiltonian.element(pair.phi_left, pair.phi_right, in.quad,
                                      in.kinetic);
  return el;
}

SymmetricMatrix4 assemble_hm(const HMElements &el, HMMode mode) {
  SymmetricMatrix4 m;
  const double r2 = std::numbers::sqrt2;
  if (mode == HMMode::Verbatim) {
    const double eps = el.eps_R - el.eps_L;
    const double t = el.t_prime + el.w;
    m.set(0, 0, el.U - eps);
    m.set(1, 1, el.U + eps);
    m.set(0, 1, el.X);
    m.set(0, 2, r2 * t);
    m.set(1, 2, r2 * t);
    m.set(2, 2, el.V_S);
    m.set(3, 3, el.V_T);
  } else {
    m.set(0, 0, 2.0 * el.eps_L + el.U);
    m.set(1, 1, 2.0 * el.eps_R + el.U_R);
    m.set(0, 1, el.X);
    m.set(0, 2, r2 * (el.t_prime + el.w));
    m.set(1, 2, r2 * (el.t_prime + el.w_R));
    m.set(2, 2, el.eps_L + el.eps_R + el.V_S);
    m.set(3, 3, el.eps_L + el.eps_R + el.V_T);
  }
  return m;
}

std::array<double, 6> singlet_block(const SymmetricMatrix4 &m) {
  return {m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2)};
}

namespace {

std::array<double, 3> trig_eigenvalues(const std::array<double, 6> &a) {
  const double a00 = a[0], a01 = a[1], a02 = a[2], a11 = a[3], a12 = a[4],
               a22 = a[5];
  const double p1 = a01 * a01 + a02 * a02 + a12 * a12;
  std::array<double, 3> ev;
  if (p1 == 0.0) {
    ev = {a00, a11, a22};
    std::sort(ev.begin(), ev.end());
    return ev;
  }
  const double q = (a00 + a11 + a22) / 3.0;
  const double b00 = a00 - q, b11 = a11 - q, b22 = a22 - q;
  const double p2 = b00 * b00 + b11 * b11 + b22 * b22 + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  // det(B / p) / 2
  const double det = b00 * (b11 * b22 - a12 * a12) -
                     a01 * (a01 * b22 - a12 * a02) +
                     a02 * (a01 * a12 - b11 * a02);
  const double r = std::clamp(det / (2.0 * p * p * p), -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e_hi = q + 2.0 * p * std::cos(phi);
  const double e_lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  ev = {e_lo, 3.0 * q - e_lo - e_hi, e_hi};
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Eigenvalues of [[d, c], [c, e]] in ascending order.
std::array<double, 2> symmetric2_eigenvalues(double d, double c, double e) {
  const double mid = 0.5 * (d + e);
  const double rad = std::hypot(0.5 * (d - e), c);
  const double hi = mid >= 0.0 ? mid + rad : mid - rad;
  if (hi == 0.0)
    return {0.0, 0.0};
  // the root of larger magnitude is exact; the other follows from the determinant
  const double other = (d * e - c * c) / hi;
  return mid >= 0.0 ? std::array<double, 2>{other, hi}
                    : std::array<double, 2>{hi, other};
}

} // namespace

// The trigonometric formula loses half the digits when two roots nearly
// coincide, so its roots are polished on the secular equation of the
// arrowhead form obtained by one rotation of the leading 2x2 block.
std::array<double, 3> symmetric3_eigenvalues(const std::array<double, 6> &a) {
  const std::array<double, 3> guess = trig_eigenvalues(a);
  if (a[1] == 0.0 && a[2] == 0.0 && a[4] == 0.0)
    return guess;

  double d0 = a[0], d1 = a[3], c0 = a[2], c1 = a[4];
  if (a[1] != 0.0) {
    const double theta = (a[3] - a[0]) / (2.0 * a[1]);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double cs = 1.0 / std::sqrt(t * t + 1.0), sn = t * cs;
    d0 = a[0] - t * a[1];
    d1 = a[3] + t * a[1];
    c0 = cs * a[2] - sn * a[4];
    c1 = sn * a[2] + cs * a[4];
  }
  const double e = a[5];
  if (d0 > d1) {
    std::swap(d0, d1);
    std::swap(c0, c1);
  }

  std::array<double, 3> ev;
  if (d0 == d1) {
    const auto pair = symmetric2_eigenvalues(d0, std::hypot(c0, c1), e);
    ev = {d0, pair[0], pair[1]};
    std::sort(ev.begin(), ev.end());
    return ev;
  }
  if (c0 == 0.0 || c1 == 0.0) {
    // one pole decouples exactly
    const double dk = c0 == 0.0 ? d0 : d1;
    const double dj = c0 == 0.0 ? d1 : d0;
    const double cj = c0 == 0.0 ? c1 : c0;
    const auto pair = symmetric2_eigenvalues(dj, cj, e);
    ev = {dk, pair[0], pair[1]};
    std::sort(ev.begin(), ev.end());
    return ev;
  }

  // f is strictly decreasing between poles, one root per interval
  const double w0 = c0 * c0, w1 = c1 * c1;
  auto f = [&](double x) { return e - x - w0 / (d0 - x) - w1 / (d1 - x); };
  auto fp = [&](double x) {
    return -1.0 - w0 / ((d0 - x) * (d0 - x)) - w1 / ((d1 - x) * (d1 - x));
  };
  const double reach = std::abs(e) + std::abs(d0) + std::abs(d1) +
                       std::abs(c0) + std::abs(c1) + 1.0;
  const std::array<std::pair<double, double>, 3> brackets{
      {{-reach - std::abs(d1 - d0), d0}, {d0, d1}, {d1, reach + std::abs(d1 - d0)}}};
  for (int i = 0; i < 3; ++i) {
    double lo = brackets[i].first, hi = brackets[i].second;
    double x = guess[i];
    if (!(x > lo && x < hi))
      x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      const double fx = f(x);
      if (fx == 0.0)
        break;
      if (fx > 0.0)
        lo = x;
      else
        hi = x;
      double next = x - fx / fp(x);
      if (!(next > lo && next < hi))
        next = 0.5 * (lo + hi);
      if (next == x || hi <= std::nextafter(lo, hi))
        break;
      x = next;
    }
    ev[i] = x;
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::array<double, 3>
symmetric3_eigenvalues_jacobi(const std::array<double, 6> &a, int max_sweeps) {
  double m[3][3] = {{a[0], a[1], a[2]}, {a[1], a[3], a[4]}, {a[2], a[4], a[5]}};
  auto off = [&] {
    return m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
  };
  const double scale = std::abs(m[0][0]) + std::abs(m[1][1]) +
                       std::abs(m[2][2]) + std::sqrt(off());
  int sweep = 0;
  for (; sweep < max_sweeps && off() > 0.0; ++sweep) {
    if (std::sqrt(off()) <= 1e-18 * scale)
      break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (m[p][q] == 0.0)
          continue;
        const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < 3; ++k) {
          const double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
    }
  }
  if (sweep == max_sweeps && std::sqrt(off()) > 1e-18 * scale)
    throw NumericalError("eigensolver-non-convergence",
                         "Jacobi rotations did not converge");
  std::array<double, 3> ev{m[0][0], m[1][1], m[2][2]};
  std::sort(ev.begin(), ev.end());
  return ev;
}

double hm_perturbative_j(const HMElements &el) {
  const double t = el.t_prime + el.w;
  return el.V_T - el.V_S + 4.0 * t * t / (el.U + el.X - el.V_S);
}

HMResult hm_solve(const HMElements &el, HMMode mode) {
  HMResult r;
  r.el = el;
  r.mode = mode;
  r.eps = el.eps_R - el.eps_L;
  r.t = el.t_prime + el.w;
  // In full-offset mode the levels carry eps_L + eps_R, which can dwarf J.
  // Diagonalize relative to the mean one-body energy and add it back.
  HMElements rel = el;
  double offset = 0.0;
  if (mode == HMMode::FullOffset) {
    const double mean = 0.5 * (el.eps_L + el.eps_R);
    offset = 2.0 * mean;
    rel.eps_L = 0.5 * (el.eps_L - el.eps_R);
    rel.eps_R = -rel.eps_L;
  }
  const SymmetricMatrix4 m = assemble_hm(rel, mode);
  const auto ev = symmetric3_eigenvalues(singlet_block(m));
  r.J_HM = m(3, 3) - ev[0];
  for (int i = 0; i < 3; ++i)
    r.singlet_eigenvalues[i] = ev[i] + offset;
  r.triplet_energy = m(3, 3) + offset;
  return r;
}

HMResult j_hund_mulliken(const HMInputs &in) {
  const OverlapData ov = overlap(in.left, in.right, in.quad);
  const HMOrbitalPair pair = orthonormalize(in.left, in.right, ov, in.quad);
  HMResult r = hm_solve(hm_elements(pair, in), in.mode);
  r.basis = to_string(in.left.kind());
  r.potential = in.hamiltonian.confinement().name();
  return r;
}

} // namespace dqd
