#pragma once

#include "dqd/calculation.hpp"
#include "dqd/config.hpp"
#include "dqd/grid_oracle.hpp"
#include "dqd/output.hpp"

#include <string>
#include <vector>

namespace dqd {

/// One (point, configuration) record. Numeric fields are NaN when `error`
/// is set.
struct SweepRow {
  std::string config;
  double d_target = 0.0, xi_target = 0.0;
  PointSetup setup;
  double lambda = 0.0;
  ConfigResult result;
  std::string error; // empty on success
  bool ok() const { return error.empty(); }
};

std::vector<std::string> sweep_columns();
std::vector<Cell> sweep_cells(const SweepRow &r, const RunConfig &cfg);

struct SweepPoint {
  double d, xi;
};

/// Evaluates every point for every configuration in cfg. Points run in
/// parallel; rows come back in input order (point-major).
std::vector<SweepRow> run_points(const std::vector<SweepPoint> &points,
                                 const RunConfig &cfg);

Table rows_table(const std::string &title, const std::vector<SweepRow> &rows,
                 const RunConfig &cfg);

Table sweep_distance(const RunConfig &cfg);
Table sweep_depth(const RunConfig &cfg);
/// CA/CA only; the summary carries the argmax of J_HM and of |J_HM|.
Table map2d(const RunConfig &cfg);
Table single_point(const RunConfig &cfg);

Table dump_orbitals(const RunConfig &cfg);
Table dump_potential(const RunConfig &cfg);

/// Grid half-width meeting the oracle tail criterion for this point.
double oracle_extent_for(const PointSetup &s, PotentialKind k,
                         const PhysParams &phys);

struct OracleRun {
  PointSetup setup;
  OracleResult oracle;
  bool compared = false;
  ConfigResult comparison; // HM full-offset at the same point
};
OracleRun run_oracle(const RunConfig &cfg);
Table oracle_table(const OracleRun &run, const RunConfig &cfg);

Table run(const RunConfig &cfg);

} // namespace dqd
