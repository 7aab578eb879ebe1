// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
//
// Thin CLI over the hgpurify C API: reads a JSON experiment config, writes
// the result document into the output directory.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hgpurify.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int status_to_exit(hgp_status st) {
  switch (st) {
    case HGP_OK: return 0;
    case HGP_INVALID_ARGUMENT:
    case HGP_PARSE_ERROR: return kExitConfig;
    default: return kExitNumeric;
  }
}

int run_config_command(const std::string& expected_command, const std::string& config_path,
                       const std::string& out_dir, bool has_seed, std::uint64_t seed, int workers) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read config file " << config_path << "\n";
    return kExitConfig;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string config = buf.str();

  // The config must name the same command as the CLI invocation; a cheap
  // check here avoids silently running the wrong experiment.
  if (config.find("\"" + expected_command + "\"") == std::string::npos) {
    std::cerr << "error: config does not request command \"" << expected_command << "\"\n";
    return kExitConfig;
  }

  char* filename = nullptr;
  char* content = nullptr;
  const hgp_status st = hgp_run_experiment(config.c_str(), seed, has_seed ? 1 : 0, workers, &filename, &content);
  if (st != HGP_OK) {
    std::cerr << "error: " << hgp_last_error() << "\n";
    return status_to_exit(st);
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const std::filesystem::path out_path = std::filesystem::path(out_dir) / filename;
  std::ofstream out(out_path, std::ios::binary);
  out << content;
  out.close();
  hgp_string_free(filename);
  hgp_string_free(content);
  if (!out) {
    std::cerr << "error: cannot write " << out_path.string() << "\n";
    return kExitNumeric;
  }
  std::cout << out_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hgpurify - entanglement purification of hypergraph states"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir = ".";
  std::uint64_t seed = 0;
  bool has_seed = false;
  int workers = 1;
  app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (default: .)");
  app.add_option("--workers", workers, "worker threads for sequence search")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "overrides the config's random seed")->each([&](const std::string&) {
    has_seed = true;
  });

  // Subcommand name -> config "command" value.
  struct Cmd {
    const char* name;
    const char* command;
    const char* help;
  };
  const Cmd cmds[] = {
      {"run", "run", "fixed-sequence trajectory (CSV)"},
      {"threshold", "threshold", "noise threshold by bisection (JSON)"},
      {"search", "search", "exhaustive sequence search (CSV)"},
      {"adaptive", "adaptive", "adaptive two-sequence run (JSON)"},
      {"yield", "yield", "inputs-per-output ledger (JSON)"},
      {"recycle-compare", "recycle_compare", "recycling gain over an F0 grid (CSV)"},
  };
  for (const Cmd& c : cmds) app.add_subcommand(c.name, c.help);
  CLI::App* verify_cmd = app.add_subcommand("verify", "cross-check against the dense simulator");

  CLI11_PARSE(app, argc, argv);

  if (verify_cmd->parsed()) {
    int mismatches = 0;
    char* report = nullptr;
    const hgp_status st = hgp_verify(has_seed ? seed : 1, &mismatches, &report);
    if (st != HGP_OK) {
      std::cerr << "error: " << hgp_last_error() << "\n";
      return status_to_exit(st);
    }
    std::cout << report;
    hgp_string_free(report);
    return mismatches == 0 ? 0 : kExitNumeric;
  }

  for (const Cmd& c : cmds) {
    if (app.get_subcommand(c.name)->parsed()) {
      if (config_path.empty()) {
        std::cerr << "error: --config is required for " << c.name << "\n";
        return kExitConfig;
      }
      return run_config_command(c.command, config_path, out_dir, has_seed, seed, workers);
    }
  }
  std::cerr << "error: no subcommand\n";
  return kExitConfig;
}
