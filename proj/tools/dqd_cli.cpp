// Command-line front end: dqd <subcommand> [--config FILE] [--set k=v]...
//                              [--out PATH] [--format csv|json]
#include "dqd/config.hpp"
#include "dqd/error.hpp"
#include "dqd/output.hpp"
#include "dqd/sweeps.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

int fail(const std::string &code, const std::string &message, int status) {
  nlohmann::ordered_json j;
  j["error"]["code"] = code;
  j["error"]["message"] = message;
  std::cerr << j.dump() << "\n";
  return status;
}

void check_output_path(const std::string &path) {
  if (path.empty())
    return;
  const auto parent = std::filesystem::absolute(path).parent_path();
  if (!std::filesystem::is_directory(parent))
    throw dqd::ConfigError("output directory '" + parent.string() +
                           "' does not exist");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exchange interaction of a two-electron double quantum dot"};
  app.require_subcommand(1);

  std::string config_file, out, format;
  std::vector<std::string> sets;
  const std::pair<dqd::Mode, const char *> modes[] = {
      {dqd::Mode::DumpOrbitals, "single-particle orbitals on an x grid"},
      {dqd::Mode::DumpPotential, "Caticha and matched bi-quadratic potentials"},
      {dqd::Mode::SweepDistance, "J versus interdot distance at fixed depth"},
      {dqd::Mode::SweepDepth, "J versus well depth at fixed distance"},
      {dqd::Mode::Map2d, "J over a (d, |xi|) grid, CA/CA only"},
      {dqd::Mode::Oracle, "two-electron exact diagonalization on a grid"},
      {dqd::Mode::Point, "all configurations at one (d, |xi|) point"}};
  std::vector<std::pair<CLI::App *, dqd::Mode>> subs;
  for (const auto &[mode, help] : modes) {
    CLI::App *sub = app.add_subcommand(dqd::to_string(mode), help);
    sub->add_option("--config", config_file, "key = value config file")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output path (default: stdout)");
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--set", sets, "override one key: key=value");
    subs.emplace_back(sub, mode);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0)
      return app.exit(e);
    return fail("usage", e.what(), 2);
  }

  try {
    dqd::RunConfig cfg;
    if (!config_file.empty())
      dqd::apply_config_file(cfg, config_file);
    for (const auto &s : sets)
      dqd::apply_override(cfg, s);
    for (const auto &[sub, mode] : subs)
      if (sub->parsed())
        cfg.mode = mode;
    if (!out.empty())
      cfg.out = out;
    if (!format.empty())
      cfg.format = format;
    dqd::validate(cfg);
    check_output_path(cfg.out);

    const dqd::Table table = dqd::run(cfg);

    std::ofstream file;
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      if (!file)
        throw dqd::ConfigError("cannot open '" + cfg.out + "' for writing");
    }
    std::ostream &os = cfg.out.empty() ? std::cout : file;
    if (cfg.format == "json")
      dqd::write_json(os, table);
    else
      dqd::write_csv(os, table);
    return 0;
  } catch (const dqd::ConfigError &e) {
    return fail(e.code(), e.what(), 2);
  } catch (const dqd::Error &e) {
    return fail(e.code(), e.what(), 1);
  } catch (const std::exception &e) {
    return fail("internal", e.what(), 1);
  }
}
