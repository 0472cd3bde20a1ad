#include "dqd/orbitals.hpp"

#include "dqd/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dqd {

std::string to_string(OrbitalKind k) {
  switch (k) {
  case OrbitalKind::FockDarwin:
    return "FD";
  case OrbitalKind::Caticha:
    return "CA";
  case OrbitalKind::CatichaGround:
    return "CA-ground";
  case OrbitalKind::Combination:
    return "combination";
  }
  return "?";
}

namespace {

// phi = f/W and derivatives given the scaled numerator f*E and the scaled
// Wronskian (same E = exp(-(a+b)|y|)).
Jet quotient_jet(double f, double f1, double f2, const CatichaW &w) {
  const double r1 = w.w1 / w.w0;
  Jet j;
  j.value = f / w.w0;
  j.d1 = (f1 - f * r1) / w.w0;
  j.d2 = (f2 - 2.0 * f1 * r1 - f * (w.w2 / w.w0) + 2.0 * f * r1 * r1) / w.w0;
  return j;
}

Jet caticha_bare(double x, const CatichaParams &p, double sigma) {
  const double y = sigma * x;
  const CatichaW w = caticha_w(y, p);
  const double a = p.a, b = p.b, s = w.s;
  const double e = std::exp(-(a + b) * s);
  // e^{-b y} E, split by the sign of y to avoid overflow
  const double g = y >= 0.0 ? std::exp(-(a + 2.0 * b) * s) : std::exp(-a * s);
  Jet j = quotient_jet(e + g, -b * g, b * b * g, w);
  j.d1 *= sigma;
  return j;
}

Jet caticha_ground_bare(double x, const CatichaParams &p) {
  const CatichaW w = caticha_w(x, p);
  const double ea = std::exp(-p.a * w.s);
  const double c = 0.5 * ea * (1.0 + w.q);           // cosh(bx) E
  const double sh = 0.5 * w.sign * ea * (1.0 - w.q); // sinh(bx) E
  return quotient_jet(c, p.b * sh, p.b * p.b * c, w);
}

double caticha_support(const CatichaParams &p) {
  const double x0 =
      std::max(0.0, std::log(4.0 * (p.a + p.b) / (p.a - p.b)) / (p.a + p.b));
  return x0 + 40.0 / p.a;
}

double numeric_norm(const Func1 &bare, double half_width) {
  QuadratureSpec q;
  q.lower = -half_width;
  q.upper = half_width;
  q.gl_order = 64;
  q.n_points = 16 * 64;
  q.refinement = Refinement::Doubling;
  q.rel_tol = 1e-14;
  q.max_doublings = 6;
  const double mass = integrate_1d([&](double x) {
    const double v = bare(x);
    return v * v;
  }, q);
  return 1.0 / std::sqrt(mass);
}

} // namespace

Orbital Orbital::fock_darwin(Side side, double d, double hbar_omega0,
                             const PhysParams &phys) {
  if (!(hbar_omega0 > 0.0))
    throw ConfigError("Fock-Darwin orbital requires hbar_omega0 > 0");
  const double width = std::sqrt(2.0 * phys.kinetic_prefactor() / hbar_omega0);
  const double center = side == Side::Left ? -d : d;
  const double norm = 1.0 / std::sqrt(width * std::sqrt(std::numbers::pi));
  return Orbital(side, FD{center, width}, norm);
}

Orbital Orbital::caticha(Side side, const CatichaParams &p) {
  const double sigma = side == Side::Left ? 1.0 : -1.0;
  const double norm = numeric_norm(
      [&](double x) { return caticha_bare(x, p, sigma).value; },
      caticha_support(p));
  return Orbital(side, CA{p, sigma}, norm);
}

Orbital Orbital::caticha_ground(const CatichaParams &p) {
  const double norm = numeric_norm(
      [&](double x) { return caticha_ground_bare(x, p).value; },
      caticha_support(p));
  return Orbital(Side::Left, CAGround{p}, norm);
}

Orbital Orbital::combination(double alpha, const Orbital &p, double beta,
                             const Orbital &q) {
  return Orbital(p.side(),
                 Combo{alpha, beta, std::make_shared<const Orbital>(p),
                       std::make_shared<const Orbital>(q)},
                 1.0);
}

OrbitalKind Orbital::kind() const {
  switch (impl_.index()) {
  case 0:
    return OrbitalKind::FockDarwin;
  case 1:
    return OrbitalKind::Caticha;
  case 2:
    return OrbitalKind::CatichaGround;
  default:
    return OrbitalKind::Combination;
  }
}

Jet Orbital::bare_jet(double x) const {
  if (const auto *fd = std::get_if<FD>(&impl_)) {
    const double u = x - fd->center;
    const double a2 = fd->width * fd->width;
    const double v = std::exp(-0.5 * u * u / a2);
    return {v, -u / a2 * v, (u * u / (a2 * a2) - 1.0 / a2) * v};
  }
  if (const auto *ca = std::get_if<CA>(&impl_))
    return caticha_bare(x, ca->p, ca->sigma);
  if (const auto *g = std::get_if<CAGround>(&impl_))
    return caticha_ground_bare(x, g->p);
  const auto &c = std::get<Combo>(impl_);
  const Jet jp = c.p->jet(x), jq = c.q->jet(x);
  return {c.alpha * jp.value + c.beta * jq.value,
          c.alpha * jp.d1 + c.beta * jq.d1, c.alpha * jp.d2 + c.beta * jq.d2};
}

Jet Orbital::jet(double x) const {
  Jet j = bare_jet(x);
  j.value *= norm_;
  j.d1 *= norm_;
  j.d2 *= norm_;
  return j;
}

double Orbital::value(double x) const {
  if (const auto *fd = std::get_if<FD>(&impl_)) {
    const double u = (x - fd->center) / fd->width;
    return norm_ * std::exp(-0.5 * u * u);
  }
  if (const auto *c = std::get_if<Combo>(&impl_))
    return c->alpha * c->p->value(x) + c->beta * c->q->value(x);
  return jet(x).value;
}

double Orbital::fd_width() const {
  if (const auto *fd = std::get_if<FD>(&impl_))
    return fd->width;
  throw ConfigError("fd_width requested for a non-Fock-Darwin orbital");
}

double Orbital::fd_center() const {
  if (const auto *fd = std::get_if<FD>(&impl_))
    return fd->center;
  throw ConfigError("fd_center requested for a non-Fock-Darwin orbital");
}

double Orbital::support_halfwidth(double tail_mass) const {
  if (const auto *fd = std::get_if<FD>(&impl_)) {
    // density is N(center, a^2/2): P(|x - c| > t) = erfc(t / a)
    double t = fd->width;
    while (std::erfc(t / fd->width) > tail_mass)
      t += 0.25 * fd->width;
    return std::abs(fd->center) + t;
  }
  if (const auto *c = std::get_if<Combo>(&impl_))
    return std::max(c->p->support_halfwidth(tail_mass),
                    c->q->support_halfwidth(tail_mass));
  // Both Caticha kinds decay at least as e^{-a|x|} beyond the wells, so
  // the tail mass beyond L is bounded by psi(L)^2 / (2a) on each side.
  const CatichaParams p = std::holds_alternative<CA>(impl_)
                              ? std::get<CA>(impl_).p
                              : std::get<CAGround>(impl_).p;
  const double x0 =
      std::max(0.0, std::log(4.0 * (p.a + p.b) / (p.a - p.b)) / (p.a + p.b));
  double l = x0 + 1.0 / p.a;
  for (int it = 0; it < 10000; ++it) {
    const double vl = value(-l), vr = value(l);
    if ((vl * vl + vr * vr) / (2.0 * p.a) < tail_mass)
      break;
    l += 0.25 / p.a;
  }
  return l;
}

double orthonormalization_coefficient(double l) {
  return l / (1.0 + std::sqrt(1.0 - l * l));
}

double inner_product(const Orbital &f, const Orbital &g,
                     const QuadratureSpec &quad) {
  return integrate_1d([&](double x) { return f.value(x) * g.value(x); }, quad);
}

OverlapData overlap(const Orbital &left, const Orbital &right,
                    const QuadratureSpec &quad) {
  OverlapData ov;
  ov.l = inner_product(left, right, quad);
  if (std::abs(ov.l) >= 1.0 - 1e-9) {
    std::ostringstream os;
    os << "degenerate overlap l = " << ov.l << " (wells effectively merged)";
    throw NumericalError("degenerate-overlap", os.str());
  }
  ov.g = orthonormalization_coefficient(ov.l);
  return ov;
}

HMOrbitalPair orthonormalize(const Orbital &left, const Orbital &right,
                             const OverlapData &ov,
                             const QuadratureSpec &quad) {
  const double l = ov.l, g = ov.g;
  const double n2 = 1.0 - 2.0 * l * g + g * g;
  if (!(n2 > 0.0))
    throw NumericalError("normalization-breakdown",
                         "orthonormalization denominator is not positive");
  const double inv = 1.0 / std::sqrt(n2);
  HMOrbitalPair pair{Orbital::combination(inv, left, -g * inv, right),
                     Orbital::combination(inv, right, -g * inv, left), ov};
  pair.cross = inner_product(pair.phi_left, pair.phi_right, quad);
  pair.norm_left = inner_product(pair.phi_left, pair.phi_left, quad);
  pair.norm_right = inner_product(pair.phi_right, pair.phi_right, quad);
  if (std::abs(pair.cross) > 1e-6 || std::abs(pair.norm_left - 1.0) > 1e-6 ||
      std::abs(pair.norm_right - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "orthonormalization self-check failed: <L|R> = " << pair.cross
       << ", <L|L> = " << pair.norm_left;
    throw NumericalError("normalization-breakdown", os.str());
  }
  return pair;
}

} // namespace dqd
