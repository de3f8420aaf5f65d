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


#include "nnest/config.hpp"

#include <charconv>
#include <functional>
#include <limits>

#include "nnest/errors.hpp"
#include "text_util.hpp"

namespace nnest {

namespace {

using Setter = std::function<void(RunConfig &, const std::string &)>;

[[noreturn]] void bad_value(const std::string &key, const std::string &value, const char *expected) {
  throw ConfigError("bad value '" + value + "' for " + key + " (expected " + expected + ")");
}

template <typename T>
T parse_unsigned(const std::string &key, const std::string &value) {
  unsigned long long v = 0;
  const auto t = detail::trim(value);
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size() || v > std::numeric_limits<T>::max())
    bad_value(key, value, "a non-negative integer");
  return static_cast<T>(v);
}

int parse_signed(const std::string &key, const std::string &value) {
  long long v = 0;
  if (!detail::parse_int(value, v) || v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max())
    bad_value(key, value, "an integer");
  return static_cast<int>(v);
}

double parse_real(const std::string &key, const std::string &value) {
  double v = 0.0;
  if (!detail::parse_double(value, v)) bad_value(key, value, "a number");
  return v;
}

bool parse_bool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "true or false");
}

std::filesystem::path existing_path(const std::string &key, const std::string &value) {
  if (value.empty()) bad_value(key, value, "a path");
  std::filesystem::path p(value);
  if (!std::filesystem::exists(p)) throw ConfigError(key + " path '" + value + "' does not exist");
  return p;
}

std::vector<std::size_t> parse_budgets(const std::string &key, const std::string &value) {
  std::vector<std::size_t> out;
  std::string item;
  auto flush = [&] {
    const std::string t(detail::trim(item));
    if (t.empty()) bad_value(key, value, "a comma-separated list of integers");
    out.push_back(parse_unsigned<std::size_t>(key, t));
    item.clear();
  };
  for (char ch : value) {
    if (ch == ',') flush();
    else item.push_back(ch);
  }
  flush();
  return out;
}

const std::map<std::string, Setter, std::less<>> &setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"observable", [](RunConfig &c, const std::string &v) { c.observable = existing_path("observable", v); }},
      {"dataset", [](RunConfig &c, const std::string &v) { c.dataset = existing_path("dataset", v); }},
      {"checkpoint", [](RunConfig &c, const std::string &v) { c.checkpoint = existing_path("checkpoint", v); }},
      {"counts", [](RunConfig &c, const std::string &v) { c.counts = existing_path("counts", v); }},
      {"output_dir",
       [](RunConfig &c, const std::string &v) {
         if (v.empty()) bad_value("output_dir", v, "a path");
         c.output_dir = v;
       }},
      {"seed", [](RunConfig &c, const std::string &v) { c.seed = parse_unsigned<std::uint64_t>("seed", v); }},
      {"measurements",
       [](RunConfig &c, const std::string &v) { c.measurements = parse_unsigned<std::size_t>("measurements", v); }},
      {"budgets", [](RunConfig &c, const std::string &v) { c.budgets = parse_budgets("budgets", v); }},
      {"replicates",
       [](RunConfig &c, const std::string &v) { c.replicates = parse_unsigned<std::size_t>("replicates", v); }},
      {"threads", [](RunConfig &c, const std::string &v) { c.threads = parse_unsigned<unsigned>("threads", v); }},
      {"n_mc", [](RunConfig &c, const std::string &v) { c.n_mc = parse_unsigned<std::size_t>("n_mc", v); }},
      {"estimate_method",
       [](RunConfig &c, const std::string &v) {
         if (v == "nn") c.estimate_method = EstimateMethod::NeuralNetwork;
         else if (v == "standard") c.estimate_method = EstimateMethod::Standard;
         else bad_value("estimate_method", v, "nn or standard");
       }},
      {"qc_variance",
       [](RunConfig &c, const std::string &v) {
         if (v == "exact") c.qc_variance = QcVariance::Exact;
         else if (v == "sample") c.qc_variance = QcVariance::Sample;
         else bad_value("qc_variance", v, "exact or sample");
       }},
      {"verbose", [](RunConfig &c, const std::string &v) { c.verbose = parse_bool("verbose", v); }},
      {"chemical_accuracy",
       [](RunConfig &c, const std::string &v) { c.accuracy.chemical_accuracy = parse_real("chemical_accuracy", v); }},

      {"learning_rate",
       [](RunConfig &c, const std::string &v) { c.train.learning_rate = parse_real("learning_rate", v); }},
      {"rms_decay", [](RunConfig &c, const std::string &v) { c.train.rms_decay = parse_real("rms_decay", v); }},
      {"rms_epsilon", [](RunConfig &c, const std::string &v) { c.train.rms_epsilon = parse_real("rms_epsilon", v); }},
      {"batch_size", [](RunConfig &c, const std::string &v) { c.train.batch_size = parse_signed("batch_size", v); }},
      {"negative_samples",
       [](RunConfig &c, const std::string &v) { c.train.negative_samples = parse_signed("negative_samples", v); }},
      {"epochs", [](RunConfig &c, const std::string &v) { c.train.epochs = parse_signed("epochs", v); }},
      {"checkpoint_pool",
       [](RunConfig &c, const std::string &v) { c.train.checkpoint_pool = parse_signed("checkpoint_pool", v); }},
      {"selection_rule",
       [](RunConfig &c, const std::string &v) { c.train.selection_rule = parse_selection_rule(v); }},
      {"n_hidden", [](RunConfig &c, const std::string &v) { c.train.n_hidden = parse_signed("n_hidden", v); }},
      {"init_stddev", [](RunConfig &c, const std::string &v) { c.train.init_stddev = parse_real("init_stddev", v); }},
      {"train_fraction",
       [](RunConfig &c, const std::string &v) { c.train.train_fraction = parse_real("train_fraction", v); }},
      {"selection_n_mc",
       [](RunConfig &c, const std::string &v) {
         c.train.selection_n_mc = parse_unsigned<std::size_t>("selection_n_mc", v);
       }},

      {"chains",
       [](RunConfig &c, const std::string &v) {
         const int n = parse_signed("chains", v);
         if (n < 1) bad_value("chains", v, "a positive integer");
         const double beta_min = c.sampler.betas.size() > 1 ? c.sampler.betas.front() : 0.2;
         c.sampler.n_chains = n;
         c.sampler.betas = linear_betas(n, beta_min);
       }},
      {"beta_min",
       [](RunConfig &c, const std::string &v) {
         c.sampler.betas = linear_betas(c.sampler.n_chains, parse_real("beta_min", v));
       }},
      {"burn_in", [](RunConfig &c, const std::string &v) { c.sampler.sweeps_burn_in = parse_signed("burn_in", v); }},
      {"sweeps_between_samples",
       [](RunConfig &c, const std::string &v) {
         c.sampler.sweeps_between_samples = parse_signed("sweeps_between_samples", v);
       }},
  };
  return table;
}

}  // namespace

ConfigEntries parse_config_entries(std::string_view text) {
  ConfigEntries entries;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const int line = static_cast<int>(line_no);
    const std::string_view body = detail::trim(detail::strip_comment(raw));
    if (body.empty()) return;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key(detail::trim(body.substr(0, eq)));
    if (key.empty()) throw ParseError(line, "missing key");
    if (entries.count(key)) throw ParseError(line, "duplicate key '" + key + "'");
    entries[key] = {std::string(detail::trim(body.substr(eq + 1))), line};
  });
  return entries;
}

void apply_override(ConfigEntries &entries, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  const std::string key(detail::trim(assignment.substr(0, eq)));
  if (key.empty()) throw ConfigError("override '" + std::string(assignment) + "' has no key");
  entries[key] = {std::string(detail::trim(assignment.substr(eq + 1))), 0};
}

const std::vector<std::string_view> &RunConfig::keys() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> out;
    for (const auto &[k, _] : setters()) out.push_back(k);
    return out;
  }();
  return names;
}

RunConfig build_config(const ConfigEntries &entries) {
  RunConfig cfg;
  const auto &table = setters();
  // The ladder is rebuilt when chains changes, so apply it before beta_min.
  auto apply = [&](const std::string &key, const ConfigEntry &entry) {
    const auto it = table.find(key);
    if (it == table.end()) {
      std::string msg = "unknown key '" + key + "'";
      if (entry.line > 0) msg += " at line " + std::to_string(entry.line);
      throw ConfigError(msg);
    }
    try {
      it->second(cfg, entry.value);
    } catch (const ConfigError &e) {
      if (entry.line == 0) throw;
      throw ConfigError(std::string(e.what()) + " at line " + std::to_string(entry.line));
    }
  };
  if (const auto it = entries.find("chains"); it != entries.end()) apply(it->first, it->second);
  for (const auto &[key, entry] : entries)
    if (key != "chains") apply(key, entry);

  cfg.train.validate();
  cfg.sampler.validate();
  cfg.accuracy.validate();
  if (cfg.n_mc < 1) throw ConfigError("n_mc must be >= 1");
  return cfg;
}

RunConfig load_config(const std::filesystem::path &path, const std::vector<std::string> &overrides) {
  ConfigEntries entries;
  if (!path.empty()) {
    if (!std::filesystem::exists(path)) throw ConfigError("config file '" + path.string() + "' does not exist");
    try {
      entries = parse_config_entries(detail::read_file(path));
    } catch (const ParseError &e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }
  for (const auto &o : overrides) apply_override(entries, o);
  return build_config(entries);
}

}  // namespace nnest
