#include "dqd/sweeps.hpp"

#include "dqd/error.hpp"

#include <cmath>
#include <exception>
#include <limits>

namespace dqd {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string describe(const std::exception &e) {
  if (const auto *d = dynamic_cast<const Error *>(&e))
    return d->code() + ": " + d->what();
  return std::string("error: ") + e.what();
}

} // namespace

std::vector<std::string> sweep_columns() {
  return {"config",   "basis",   "potential", "d_target", "xi_target",
          "a",        "b",       "d",         "depth_xi", "barrier",
          "hbar_omega0", "lambda", "efield",  "bound",    "scheme",
          "n_points", "rel_tol", "hm_mode",   "l",        "W_v",
          "D0",       "E0",      "J_HL",      "J_HL_direct", "eps_L",
          "eps_R",    "eps",     "t_prime",   "w",        "w_R",
          "t",        "U",       "U_R",       "X",        "V_S",
          "V_T",      "E_S1",    "E_S2",      "E_S3",     "E_T",
          "J_HM",     "J_HM_pt", "error"};
}

std::vector<Cell> sweep_cells(const SweepRow &r, const RunConfig &cfg) {
  const Configuration c = configuration_from_string(r.config);
  const auto &s = r.setup;
  const auto &q = cfg.numerics.quad;
  const bool geo = s.ca.a > 0.0;
  auto g = [&](double v) { return geo ? v : nan; };
  auto o = [&](double v) { return r.ok() ? v : nan; };
  const auto &hl = r.result.hl;
  const auto &hm = r.result.hm;
  const auto &el = hm.el;
  const double direct = r.ok() && r.result.hl_direct ? r.result.hl_direct->J : nan;
  return {r.config,
          std::string(c.basis == Basis::CA ? "CA" : "FD"),
          std::string(c.potential == PotentialKind::CA ? "CA" : "BQ"),
          r.d_target,
          r.xi_target,
          g(s.ca.a),
          g(s.ca.b),
          g(s.geometry.d),
          g(s.geometry.depth_xi),
          g(s.geometry.barrier_height),
          g(s.bq.hbar_omega0),
          r.lambda,
          cfg.material.efield,
          o(r.result.bound),
          to_string(q.scheme),
          static_cast<long>(q.n_points),
          q.rel_tol,
          to_string(cfg.numerics.hm_mode),
          o(hl.l),
          o(hl.W_v),
          o(hl.D0),
          o(hl.E0),
          o(hl.J_HL),
          direct,
          o(el.eps_L),
          o(el.eps_R),
          o(hm.eps),
          o(el.t_prime),
          o(el.w),
          o(el.w_R),
          o(hm.t),
          o(el.U),
          o(el.U_R),
          o(el.X),
          o(el.V_S),
          o(el.V_T),
          o(hm.singlet_eigenvalues[0]),
          o(hm.singlet_eigenvalues[1]),
          o(hm.singlet_eigenvalues[2]),
          o(hm.triplet_energy),
          o(hm.J_HM),
          o(r.result.hm_perturbative),
          r.error};
}

std::vector<SweepRow> run_points(const std::vector<SweepPoint> &points,
                                 const RunConfig &cfg) {
  const PhysParams phys = cfg.phys();
  const std::size_t nc = cfg.configurations.size();
  std::vector<SweepRow> rows(points.size() * nc);
  NumericsConfig inner = cfg.numerics;
  const bool outer_parallel =
      cfg.numerics.policy == ExecPolicy::Parallel && points.size() > 1;
  if (outer_parallel)
    inner.policy = ExecPolicy::Serial;

  auto eval = [&](std::size_t i) {
    const SweepPoint p = points[i];
    PointSetup setup;
    std::string setup_error;
    try {
      setup = setup_point(p.d, p.xi, phys, cfg.inverse);
    } catch (const std::exception &e) {
      setup_error = describe(e);
    }
    for (std::size_t k = 0; k < nc; ++k) {
      SweepRow &r = rows[i * nc + k];
      r.config = cfg.configurations[k].label();
      r.d_target = p.d;
      r.xi_target = p.xi;
      r.lambda = phys.softening_length();
      r.setup = setup;
      if (!setup_error.empty()) {
        r.error = setup_error;
        continue;
      }
      try {
        r.result = compute_configuration(cfg.configurations[k], setup, phys,
                                         inner);
      } catch (const std::exception &e) {
        r.error = describe(e);
      }
    }
  };
  if (outer_parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(points.size());
         ++i)
      eval(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < points.size(); ++i)
      eval(i);
  }
  return rows;
}

Table rows_table(const std::string &title, const std::vector<SweepRow> &rows,
                 const RunConfig &cfg) {
  Table t;
  t.title = title;
  t.header = cfg.resolved();
  t.columns = sweep_columns();
  long failed = 0;
  for (const auto &r : rows) {
    t.rows.push_back(sweep_cells(r, cfg));
    failed += r.ok() ? 0 : 1;
  }
  t.summary.emplace_back("rows", static_cast<long>(rows.size()));
  t.summary.emplace_back("failed_rows", failed);
  return t;
}

Table sweep_distance(const RunConfig &cfg) {
  std::vector<SweepPoint> pts;
  for (double d : cfg.d_range.values())
    pts.push_back({d, cfg.sweep_depth});
  return rows_table("sweep-distance", run_points(pts, cfg), cfg);
}

Table sweep_depth(const RunConfig &cfg) {
  std::vector<SweepPoint> pts;
  for (double xi : cfg.xi_range.values())
    pts.push_back({cfg.sweep_distance, xi});
  return rows_table("sweep-depth", run_points(pts, cfg), cfg);
}

Table map2d(const RunConfig &cfg) {
  RunConfig c = cfg;
  c.configurations = {{Basis::CA, PotentialKind::CA}};
  std::vector<SweepPoint> pts;
  for (double d : c.d_range.values())
    for (double xi : c.xi_range.values())
      pts.push_back({d, xi});
  const auto rows = run_points(pts, c);
  Table t = rows_table("map2d", rows, c);
  const SweepRow *best = nullptr, *best_abs = nullptr;
  for (const auto &r : rows) {
    if (!r.ok())
      continue;
    if (!best || r.result.hm.J_HM > best->result.hm.J_HM)
      best = &r;
    if (!best_abs ||
        std::abs(r.result.hm.J_HM) > std::abs(best_abs->result.hm.J_HM))
      best_abs = &r;
  }
  if (best) {
    t.summary.emplace_back("argmax_J_HM.d", best->d_target);
    t.summary.emplace_back("argmax_J_HM.xi", best->xi_target);
    t.summary.emplace_back("argmax_J_HM.J_HM", best->result.hm.J_HM);
    t.summary.emplace_back("argmax_abs_J_HM.d", best_abs->d_target);
    t.summary.emplace_back("argmax_abs_J_HM.xi", best_abs->xi_target);
    t.summary.emplace_back("argmax_abs_J_HM.J_HM", best_abs->result.hm.J_HM);
  }
  return t;
}

Table single_point(const RunConfig &cfg) {
  return rows_table("point", run_points({{cfg.point_d, cfg.point_xi}}, cfg),
                    cfg);
}

namespace {

void add_setup_summary(Table &t, const PointSetup &s) {
  t.summary.emplace_back("a", s.ca.a);
  t.summary.emplace_back("b", s.ca.b);
  t.summary.emplace_back("d", s.geometry.d);
  t.summary.emplace_back("depth_xi", s.geometry.depth_xi);
  t.summary.emplace_back("barrier", s.geometry.barrier_height);
  t.summary.emplace_back("hbar_omega0", s.bq.hbar_omega0);
}

} // namespace

Table dump_orbitals(const RunConfig &cfg) {
  const PhysParams phys = cfg.phys();
  const PointSetup s = setup_from_caticha({cfg.dump_a, cfg.dump_b}, phys);
  const auto [cl, cr] = make_orbitals(Basis::CA, s, phys);
  const auto [fl, fr] = make_orbitals(Basis::FD, s, phys);
  const Orbital ground = Orbital::caticha_ground(s.ca);
  Table t;
  t.title = "dump-orbitals";
  t.header = cfg.resolved();
  t.columns = {"x", "psi_CA_L", "psi_CA_R", "psi_FD_L", "psi_FD_R",
               "psi_CA_ground"};
  for (double x : cfg.x_range.values())
    t.rows.push_back({x, cl.value(x), cr.value(x), fl.value(x), fr.value(x),
                      ground.value(x)});
  add_setup_summary(t, s);
  return t;
}

Table dump_potential(const RunConfig &cfg) {
  const PhysParams phys = cfg.phys();
  const PointSetup s = setup_from_caticha({cfg.dump_a, cfg.dump_b}, phys);
  Table t;
  t.title = "dump-potential";
  t.header = cfg.resolved();
  t.columns = {"x", "V_CA", "V_BQ"};
  for (double x : cfg.x_range.values())
    t.rows.push_back({x, v_caticha(x, s.ca, phys),
                      v_biquadratic(x, s.bq, phys)});
  add_setup_summary(t, s);
  return t;
}

double oracle_extent_for(const PointSetup &s, PotentialKind k,
                         const PhysParams &phys) {
  if (k == PotentialKind::CA)
    return s.geometry.d + 13.0 / s.ca.a;
  const double width = std::sqrt(2.0 * phys.kinetic_prefactor() /
                                 s.bq.hbar_omega0);
  return s.geometry.d + 6.0 * width;
}

OracleRun run_oracle(const RunConfig &cfg) {
  const PhysParams phys = cfg.phys();
  OracleRun out;
  out.setup = setup_point(cfg.point_d, cfg.point_xi, phys, cfg.inverse);
  const Potential v = make_potential(cfg.oracle_potential, out.setup, phys);
  const CoulombKernel kernel{phys.coulomb_prefactor(), phys.softening_length()};
  double extent = cfg.oracle_extent > 0.0
                      ? cfg.oracle_extent
                      : oracle_extent_for(out.setup, cfg.oracle_potential, phys);
  out.oracle = two_electron_spectrum(v, kernel, phys, {extent, cfg.oracle_n},
                                     cfg.oracle_levels);
  if (cfg.oracle_compare) {
    NumericsConfig num = cfg.numerics;
    num.hm_mode = HMMode::FullOffset;
    const Configuration c{cfg.oracle_potential == PotentialKind::CA ? Basis::CA
                                                                   : Basis::FD,
                          cfg.oracle_potential};
    out.comparison = compute_configuration(c, out.setup, phys, num);
    out.compared = true;
  }
  return out;
}

Table oracle_table(const OracleRun &run, const RunConfig &cfg) {
  const auto &o = run.oracle;
  Table t;
  t.title = "oracle";
  t.header = cfg.resolved();
  t.columns = {"n", "extent", "h", "E_S", "E_T", "J"};
  t.rows.push_back({static_cast<long>(o.coarse.n), o.grid.extent,
                    o.grid.with_n(o.coarse.n).spacing(), o.coarse.E_S,
                    o.coarse.E_T, o.coarse.J});
  t.rows.push_back({static_cast<long>(o.fine.n), o.grid.extent,
                    o.grid.spacing(), o.fine.E_S, o.fine.E_T, o.fine.J});
  add_setup_summary(t, run.setup);
  t.summary.emplace_back("E_S", o.E_S);
  t.summary.emplace_back("E_T", o.E_T);
  t.summary.emplace_back("J_exact", o.J_exact);
  t.summary.emplace_back("J_richardson", o.J_richardson);
  t.summary.emplace_back("J_error", o.J_error);
  t.summary.emplace_back("E_S_richardson", o.E_S_richardson);
  t.summary.emplace_back("E_T_richardson", o.E_T_richardson);
  t.summary.emplace_back("single_particle_e0", o.single_particle_e0);
  t.summary.emplace_back("single_particle_e1", o.single_particle_e1);
  for (std::size_t i = 0; i < o.symmetric_levels.size(); ++i)
    t.summary.emplace_back("symmetric_level_" + std::to_string(i),
                           o.symmetric_levels[i]);
  for (std::size_t i = 0; i < o.antisymmetric_levels.size(); ++i)
    t.summary.emplace_back("antisymmetric_level_" + std::to_string(i),
                           o.antisymmetric_levels[i]);
  t.summary.emplace_back("degeneracy_warning",
                         std::string(o.degeneracy_warning ? "true" : "false"));
  if (!o.warning.empty())
    t.summary.emplace_back("warning", o.warning);
  if (run.compared) {
    const auto &c = run.comparison;
    t.summary.emplace_back("compare.config", c.config.label());
    t.summary.emplace_back("compare.hm_singlet_energy",
                           c.hm.singlet_eigenvalues[0]);
    t.summary.emplace_back("compare.hm_triplet_energy", c.hm.triplet_energy);
    t.summary.emplace_back("compare.J_HM", c.hm.J_HM);
    t.summary.emplace_back("compare.J_HL", c.hl.J_HL);
    t.summary.emplace_back(
        "compare.variational_ok",
        std::string(o.E_S <= c.hm.singlet_eigenvalues[0] ? "true" : "false"));
  }
  return t;
}

Table run(const RunConfig &cfg) {
  validate(cfg);
  switch (cfg.mode) {
  case Mode::DumpOrbitals:
    return dump_orbitals(cfg);
  case Mode::DumpPotential:
    return dump_potential(cfg);
  case Mode::SweepDistance:
    return sweep_distance(cfg);
  case Mode::SweepDepth:
    return sweep_depth(cfg);
  case Mode::Map2d:
    return map2d(cfg);
  case Mode::Oracle:
    return oracle_table(run_oracle(cfg), cfg);
  case Mode::Point:
    return single_point(cfg);
  }
  throw ConfigError("unhandled mode");
}

} // namespace dqd
