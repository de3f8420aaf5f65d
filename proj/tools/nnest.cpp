// Copyright 2026 The nnest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// nnest: synthetic data, RBM training and observable estimation.

#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nnest/commands.hpp"
#include "nnest/config.hpp"
#include "nnest/errors.hpp"
#include "nnest/log.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct Command {
  const char *name;
  const char *help;
  void (*run)(const nnest::RunConfig &, std::ostream &);
};

const Command kCommands[] = {
    {"gen-data", "Sample a measurement dataset from the exact ground state", nnest::cmd_gen_data},
    {"train", "Train an RBM on a measurement dataset", nnest::cmd_train},
    {"estimate", "Estimate the observable from a checkpoint or a dataset", nnest::cmd_estimate},
    {"compare", "Compare neural-network and standard estimators over budgets", nnest::cmd_compare},
    {"convert-counts", "Expand a per-Pauli count table into a dataset", nnest::cmd_convert_counts},
};

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Neural-network estimation of quantum observables"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  bool verbose = false;
  std::vector<std::pair<CLI::App *, const Command *>> subs;
  for (const auto &c : kCommands) {
    CLI::App *sub = app.add_subcommand(c.name, c.help);
    sub->add_option("-c,--config", config_path, "Config file of key = value lines");
    sub->add_option("--set", overrides, "Override a config entry, key=value")->take_all();
    sub->add_flag("-v,--verbose", verbose, "Log progress to stderr");
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const Command *cmd = nullptr;
  for (const auto &[sub, c] : subs)
    if (sub->parsed()) cmd = c;

  nnest::RunConfig cfg;
  try {
    cfg = nnest::load_config(config_path, overrides);
  } catch (const nnest::ConfigError &e) {
    std::cerr << "nnest: config error: " << e.what() << "\n";
    return kExitUsage;
  }
  nnest::set_verbose(verbose || cfg.verbose);

  try {
    cmd->run(cfg, std::cout);
  } catch (const nnest::ConfigError &e) {
    std::cerr << "nnest " << cmd->name << ": config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "nnest " << cmd->name << ": error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
