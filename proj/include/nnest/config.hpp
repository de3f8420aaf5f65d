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


#ifndef NNEST_CONFIG_HPP
#define NNEST_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nnest/estimator.hpp"
#include "nnest/sampler.hpp"
#include "nnest/trainer.hpp"

namespace nnest {

// Raw key = value pairs with the line each came from (0 for overrides).
struct ConfigEntry {
  std::string value;
  int line = 0;
};
using ConfigEntries = std::map<std::string, ConfigEntry>;

// '#' starts a comment; a key may appear once per file.
ConfigEntries parse_config_entries(std::string_view text);

// "key=value", as passed to --set.
void apply_override(ConfigEntries &entries, std::string_view assignment);

enum class QcVariance { Exact, Sample };

struct RunConfig {
  std::optional<std::filesystem::path> observable;
  std::optional<std::filesystem::path> dataset;
  std::optional<std::filesystem::path> checkpoint;
  std::optional<std::filesystem::path> counts;
  std::filesystem::path output_dir = ".";

  std::uint64_t seed = 0;
  std::size_t measurements = 0;       // gen-data
  std::vector<std::size_t> budgets;   // compare
  std::size_t replicates = 20;
  unsigned threads = 1;
  std::size_t n_mc = kDefaultMcSamples;
  EstimateMethod estimate_method = EstimateMethod::NeuralNetwork;
  QcVariance qc_variance = QcVariance::Exact;
  bool verbose = false;

  TrainConfig train;
  SamplerConfig sampler;
  AccuracyConfig accuracy;

  // Every recognized key, for help output.
  static const std::vector<std::string_view> &keys();
};

// Throws ConfigError on unknown keys or malformed values, and when a
// referenced input path does not exist.
RunConfig build_config(const ConfigEntries &entries);

RunConfig load_config(const std::filesystem::path &path, const std::vector<std::string> &overrides);

}  // namespace nnest

#endif
