#include "dqd/config.hpp"

#include "dqd/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dqd {

namespace {

const std::pair<Mode, const char *> mode_names[] = {
    {Mode::DumpOrbitals, "dump-orbitals"}, {Mode::DumpPotential, "dump-potential"},
    {Mode::SweepDistance, "sweep-distance"}, {Mode::SweepDepth, "sweep-depth"},
    {Mode::Map2d, "map2d"}, {Mode::Oracle, "oracle"}, {Mode::Point, "point"}};

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string &key, const std::string &v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception &) {
    pos = 0;
  }
  if (pos != v.size() || v.empty() || !std::isfinite(x))
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string &key, const std::string &v) {
  const double x = to_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 1e9)
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return static_cast<int>(x);
}

bool to_bool(const std::string &key, const std::string &v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on")
    return true;
  if (v == "false" || v == "0" || v == "no" || v == "off")
    return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string kinetic_str(KineticForm k) {
  return k == KineticForm::QuadraticForm ? "quadratic" : "second_derivative";
}

std::string wv_str(WvForm w) {
  return w == WvForm::Hamiltonian ? "hamiltonian" : "fd_shortcut";
}

} // namespace

std::string to_string(Mode m) {
  for (const auto &[k, name] : mode_names)
    if (k == m)
      return name;
  return "?";
}

Mode mode_from_string(const std::string &s) {
  for (const auto &[k, name] : mode_names)
    if (s == name)
      return k;
  if (s == "single-point")
    return Mode::Point;
  throw ConfigError("unknown mode '" + s + "'");
}

std::vector<double> Range::values() const {
  if (!(step > 0.0) || max < min)
    throw ConfigError("range needs step > 0 and max >= min");
  std::vector<double> out;
  const auto count =
      static_cast<long>(std::floor((max - min) / step + 1e-6)) + 1;
  for (long i = 0; i < count; ++i)
    out.push_back(min + i * step);
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

void apply_setting(RunConfig &c, const std::string &key,
                   const std::string &raw) {
  const std::string v = trim(raw);
  auto &m = c.material;
  auto &n = c.numerics;
  auto &q = n.quad;
  if (key == "mode")
    c.mode = mode_from_string(v);
  else if (key == "material")
    m.tag = material_from_string(v);
  else if (key == "effective_mass")
    m.effective_mass = to_double(key, v);
  else if (key == "kappa")
    m.kappa = to_double(key, v);
  else if (key == "eps_si")
    m.eps_si = to_double(key, v);
  else if (key == "eps_sio2")
    m.eps_sio2 = to_double(key, v);
  else if (key == "softening_length")
    m.softening_length = to_double(key, v);
  else if (key == "efield")
    m.efield = to_double(key, v);
  else if (key == "quad.scheme")
    q.scheme = scheme_from_string(v);
  else if (key == "quad.n_points")
    q.n_points = to_int(key, v);
  else if (key == "quad.gl_order")
    q.gl_order = to_int(key, v);
  else if (key == "quad.rel_tol")
    q.rel_tol = to_double(key, v);
  else if (key == "quad.max_doublings")
    q.max_doublings = to_int(key, v);
  else if (key == "quad.refinement") {
    if (v == "fixed")
      q.refinement = Refinement::Fixed;
    else if (v == "doubling")
      q.refinement = Refinement::Doubling;
    else
      throw ConfigError("key 'quad.refinement': expected fixed or doubling");
  } else if (key == "quad.tail_mass")
    n.tail_mass = to_double(key, v);
  else if (key == "quad.padding")
    n.padding = to_double(key, v);
  else if (key == "kinetic_form") {
    if (v == "quadratic")
      n.kinetic = KineticForm::QuadraticForm;
    else if (v == "second_derivative")
      n.kinetic = KineticForm::SecondDerivative;
    else
      throw ConfigError("key 'kinetic_form': expected quadratic or "
                        "second_derivative");
  } else if (key == "wv_form") {
    if (v == "hamiltonian")
      n.wv_form = WvForm::Hamiltonian;
    else if (v == "fd_shortcut")
      n.wv_form = WvForm::FockDarwinShortcut;
    else
      throw ConfigError("key 'wv_form': expected hamiltonian or fd_shortcut");
  } else if (key == "hm_mode")
    n.hm_mode = hm_mode_from_string(v);
  else if (key == "audit")
    n.audit_hl = to_bool(key, v);
  else if (key == "parallel")
    n.policy = to_bool(key, v) ? ExecPolicy::Parallel : ExecPolicy::Serial;
  else if (key == "inverse.rel_tol")
    c.inverse.rel_tol = to_double(key, v);
  else if (key == "inverse.max_iterations")
    c.inverse.max_iterations = to_int(key, v);
  else if (key == "configurations") {
    c.configurations.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trim(item).empty())
        c.configurations.push_back(configuration_from_string(trim(item)));
  } else if (key == "d_min")
    c.d_range.min = to_double(key, v);
  else if (key == "d_max")
    c.d_range.max = to_double(key, v);
  else if (key == "d_step")
    c.d_range.step = to_double(key, v);
  else if (key == "xi_min")
    c.xi_range.min = to_double(key, v);
  else if (key == "xi_max")
    c.xi_range.max = to_double(key, v);
  else if (key == "xi_step")
    c.xi_range.step = to_double(key, v);
  else if (key == "sweep.depth")
    c.sweep_depth = to_double(key, v);
  else if (key == "sweep.distance")
    c.sweep_distance = to_double(key, v);
  else if (key == "point.d")
    c.point_d = to_double(key, v);
  else if (key == "point.xi")
    c.point_xi = to_double(key, v);
  else if (key == "dump.a")
    c.dump_a = to_double(key, v);
  else if (key == "dump.b")
    c.dump_b = to_double(key, v);
  else if (key == "x_min")
    c.x_range.min = to_double(key, v);
  else if (key == "x_max")
    c.x_range.max = to_double(key, v);
  else if (key == "x_step")
    c.x_range.step = to_double(key, v);
  else if (key == "oracle.potential") {
    if (v == "CA")
      c.oracle_potential = PotentialKind::CA;
    else if (v == "BQ")
      c.oracle_potential = PotentialKind::BQ;
    else
      throw ConfigError("key 'oracle.potential': expected CA or BQ");
  } else if (key == "oracle.n")
    c.oracle_n = to_int(key, v);
  else if (key == "oracle.extent")
    c.oracle_extent = to_double(key, v);
  else if (key == "oracle.levels")
    c.oracle_levels = to_int(key, v);
  else if (key == "oracle.compare")
    c.oracle_compare = to_bool(key, v);
  else if (key == "format")
    c.format = v;
  else if (key == "out")
    c.out = v;
  else
    throw ConfigError("unknown configuration key '" + key + "'");
}

void apply_config_text(RunConfig &cfg, const std::string &text,
                       const std::string &origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError &e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
}

void apply_config_file(RunConfig &cfg, const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  apply_config_text(cfg, ss.str(), path);
}

void apply_override(RunConfig &cfg, const std::string &assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--set expects key=value, got '" + assignment + "'");
  apply_setting(cfg, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void validate(const RunConfig &c) {
  (void)c.phys();
  c.numerics.quad.validate();
  if (c.numerics.quad.refinement == Refinement::Doubling &&
      !(c.numerics.quad.rel_tol > 0.0))
    throw ConfigError("key 'quad.rel_tol' must be > 0");
  if (!(c.numerics.tail_mass > 0.0 && c.numerics.tail_mass < 1.0))
    throw ConfigError("key 'quad.tail_mass' must lie in (0, 1)");
  if (!(c.numerics.padding >= 1.0))
    throw ConfigError("key 'quad.padding' must be >= 1");
  if (c.configurations.empty())
    throw ConfigError("key 'configurations' is empty");
  if (c.format != "csv" && c.format != "json")
    throw ConfigError("key 'format': expected csv or json");
  (void)c.d_range.values();
  (void)c.xi_range.values();
  (void)c.x_range.values();
  if (c.oracle_n < 64)
    throw ConfigError("key 'oracle.n' must be >= 64 (coarse grid n/2 >= 32)");
  if (c.oracle_levels < 1)
    throw ConfigError("key 'oracle.levels' must be >= 1");
  if (c.oracle_extent < 0.0)
    throw ConfigError("key 'oracle.extent' must be >= 0");
  if (!(c.dump_a > c.dump_b && c.dump_b > 0.0))
    throw ConfigError("keys 'dump.a', 'dump.b' need a > b > 0");
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  const PhysParams p = phys();
  const auto &q = numerics.quad;
  std::string confs;
  for (const auto &c : configurations)
    confs += (confs.empty() ? "" : ",") + c.label();
  return {
      {"mode", to_string(mode)},
      {"material", to_string(material.tag)},
      {"effective_mass", format_number(p.effective_mass())},
      {"kappa", format_number(p.kappa())},
      {"eps_si", format_number(material.eps_si)},
      {"eps_sio2", format_number(material.eps_sio2)},
      {"hbar2_over_2me", format_number(constants::hbar2_over_2me)},
      {"e2_over_4pi_eps0", format_number(constants::e2_over_4pi_eps0)},
      {"kinetic_prefactor", format_number(p.kinetic_prefactor())},
      {"coulomb_prefactor", format_number(p.coulomb_prefactor())},
      {"softening_length", format_number(p.softening_length())},
      {"efield", format_number(p.efield())},
      {"quad.scheme", to_string(q.scheme)},
      {"quad.n_points", std::to_string(q.n_points)},
      {"quad.gl_order", std::to_string(q.gl_order)},
      {"quad.refinement",
       q.refinement == Refinement::Fixed ? "fixed" : "doubling"},
      {"quad.rel_tol", format_number(q.rel_tol)},
      {"quad.max_doublings", std::to_string(q.max_doublings)},
      {"quad.tail_mass", format_number(numerics.tail_mass)},
      {"quad.padding", format_number(numerics.padding)},
      {"kinetic_form", kinetic_str(numerics.kinetic)},
      {"wv_form", wv_str(numerics.wv_form)},
      {"hm_mode", to_string(numerics.hm_mode)},
      {"audit", bool_str(numerics.audit_hl)},
      {"inverse.rel_tol", format_number(inverse.rel_tol)},
      {"inverse.max_iterations", std::to_string(inverse.max_iterations)},
      {"configurations", confs},
      {"d_min", format_number(d_range.min)},
      {"d_max", format_number(d_range.max)},
      {"d_step", format_number(d_range.step)},
      {"xi_min", format_number(xi_range.min)},
      {"xi_max", format_number(xi_range.max)},
      {"xi_step", format_number(xi_range.step)},
      {"sweep.depth", format_number(sweep_depth)},
      {"sweep.distance", format_number(sweep_distance)},
      {"point.d", format_number(point_d)},
      {"point.xi", format_number(point_xi)},
      {"dump.a", format_number(dump_a)},
      {"dump.b", format_number(dump_b)},
      {"x_min", format_number(x_range.min)},
      {"x_max", format_number(x_range.max)},
      {"x_step", format_number(x_range.step)},
      {"oracle.potential",
       oracle_potential == PotentialKind::CA ? "CA" : "BQ"},
      {"oracle.n", std::to_string(oracle_n)},
      {"oracle.extent", format_number(oracle_extent)},
      {"oracle.levels", std::to_string(oracle_levels)},
      {"oracle.compare", bool_str(oracle_compare)},
  };
}

} // namespace dqd
