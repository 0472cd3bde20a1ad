#pragma once

#include "dqd/calculation.hpp"
#include "dqd/core.hpp"

#include <map>
#include <string>
#include <vector>

namespace dqd {

enum class Mode {
  DumpOrbitals,
  DumpPotential,
  SweepDistance,
  SweepDepth,
  Map2d,
  Oracle,
  Point
};

std::string to_string(Mode m);
Mode mode_from_string(const std::string &s);

struct Range {
  double min = 0.0, max = 0.0, step = 1.0;
  std::vector<double> values() const; // inclusive of max within step/1e6
};

/// Everything a run needs; `resolved()` lists every key with its value so
/// output files can carry the full configuration.
struct RunConfig {
  Mode mode = Mode::Point;
  MaterialSpec material;
  NumericsConfig numerics;
  InverseOptions inverse;
  std::vector<Configuration> configurations = default_configurations();

  Range d_range{15.0, 60.0, 1.0};
  Range xi_range{2.0, 30.0, 0.5};
  double sweep_depth = 10.0;    // |xi| for sweep-distance
  double sweep_distance = 20.0; // d for sweep-depth
  double point_d = 20.0;
  double point_xi = 10.0;

  // dump-orbitals / dump-potential: Caticha (a, b) in nm^-1
  double dump_a = 0.22361;
  double dump_b = 0.22305;
  Range x_range{-60.0, 60.0, 0.25};

  // oracle
  PotentialKind oracle_potential = PotentialKind::CA;
  int oracle_n = 256;
  double oracle_extent = 0.0; // 0: automatic
  int oracle_levels = 1;
  bool oracle_compare = true; // also run HM/CA at the same point

  std::string format = "csv";
  std::string out; // empty: stdout

  PhysParams phys() const { return physparams_for(material); }
  std::vector<std::pair<std::string, std::string>> resolved() const;
};

/// Parse "key = value" lines; '#' starts a comment. Unknown keys and
/// malformed values are configuration errors naming the key.
void apply_setting(RunConfig &cfg, const std::string &key,
                   const std::string &value);
void apply_config_text(RunConfig &cfg, const std::string &text,
                       const std::string &origin = "<config>");
void apply_config_file(RunConfig &cfg, const std::string &path);
/// "key=value"
void apply_override(RunConfig &cfg, const std::string &assignment);

void validate(const RunConfig &cfg);

std::string format_number(double v); // 12 significant digits, scientific

} // namespace dqd
