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


#include "nnest/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include "nnest/dataset.hpp"
#include "nnest/ensemble.hpp"
#include "nnest/errors.hpp"
#include "nnest/estimator.hpp"
#include "nnest/exactsim.hpp"
#include "nnest/log.hpp"
#include "nnest/pauli.hpp"
#include "nnest/random.hpp"
#include "nnest/rbm.hpp"
#include "nnest/trainer.hpp"
#include "text_util.hpp"

namespace nnest {

namespace {

namespace fs = std::filesystem;

const fs::path &require(const std::optional<fs::path> &p, const char *key, const char *command) {
  if (!p) throw ConfigError(std::string(command) + " requires '" + key + "'");
  return *p;
}

fs::path output_path(const RunConfig &cfg, const std::string &name) {
  fs::create_directories(cfg.output_dir);
  return cfg.output_dir / name;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void check_qubits(int a, int b, const char *what) {
  if (a != b)
    throw DimensionError(std::string(what) + " has " + std::to_string(a) +
                         " qubits but the observable has " + std::to_string(b));
}

// S records per term, each measured in that term's basis.
std::vector<std::vector<MeasurementRecord>> per_term_shots(const StateVector &state,
                                                           const Observable &obs, std::size_t s,
                                                           std::uint64_t seed) {
  std::vector<std::vector<MeasurementRecord>> groups(obs.terms().size());
  for (std::size_t k = 0; k < obs.terms().size(); ++k) {
    const auto &p = obs.terms()[k].string;
    if (p.is_identity()) continue;
    groups[k] = sample_measurements(state, {p.measurement_basis()}, s, derive_seed(seed, "term", k)).records();
  }
  return groups;
}

}  // namespace

void cmd_gen_data(const RunConfig &cfg, std::ostream &out) {
  const Observable obs = Observable::load(require(cfg.observable, "observable", "gen-data"));
  if (cfg.measurements < 1) throw ConfigError("gen-data requires measurements >= 1");
  const GroundState gs = ground_state(obs);
  const Dataset ds = sample_term_bases(gs.state, obs, cfg.measurements, derive_seed(cfg.seed, "gen-data"));
  save(ds, output_path(cfg, "dataset.txt"));

  out << "ground_energy " << fmt(gs.energy) << "\n";
  for (std::size_t k = 0; k < obs.terms().size(); ++k) {
    const auto &t = obs.terms()[k];
    out << "term " << k << " " << t.string.str() << " coefficient " << fmt_short(t.coefficient)
        << " variance " << fmt(pauli_variance_exact(gs.state, t.string)) << "\n";
  }
  out << "records " << ds.size() << "\n";
}

void cmd_train(const RunConfig &cfg, std::ostream &out) {
  const Observable obs = Observable::load(require(cfg.observable, "observable", "train"));
  const Dataset ds = load(require(cfg.dataset, "dataset", "train"));
  check_qubits(ds.n_qubits(), obs.n_qubits(), "dataset");
  TrainConfig tc = cfg.train;
  tc.seed = cfg.seed;
  const TrainReport report = train(ds, obs, tc, cfg.sampler);
  save_params(report.model, output_path(cfg, "model.rbm"));
  detail::write_file(output_path(cfg, "train_log.txt"), report.log_text());

  out << "selected_epoch " << report.selected_checkpoint << "\n";
  out << "validation_nll " << fmt(report.selected_validation_nll) << "\n";
  if (tc.selection_rule == SelectionRule::LowestEnergy)
    out << "selected_energy " << fmt(report.selected_energy) << "\n";
  out << "pool_size " << report.pool_size << "\n";
  if (report.skipped_records > 0) out << "skipped_records " << report.skipped_records << "\n";
}

void cmd_estimate(const RunConfig &cfg, std::ostream &out) {
  const Observable obs = Observable::load(require(cfg.observable, "observable", "estimate"));
  EstimateReport rep;
  if (cfg.estimate_method == EstimateMethod::NeuralNetwork) {
    const Rbm rbm = load_params(require(cfg.checkpoint, "checkpoint", "estimate"));
    check_qubits(rbm.n_visible(), obs.n_qubits(), "checkpoint");
    SamplerConfig sc = cfg.sampler;
    sc.seed = cfg.seed;
    rep = nn_estimate(rbm, obs, cfg.n_mc, sc);
  } else {
    const Dataset ds = load(require(cfg.dataset, "dataset", "estimate"));
    check_qubits(ds.n_qubits(), obs.n_qubits(), "dataset");
    rep = standard_estimate(group_by_pauli(ds, obs), obs);
  }

  std::string csv = "method,mean,variance,std_error,n_samples,imag_mean,imag_std_error\n";
  csv += method_name(rep.method) + "," + fmt(rep.mean) + "," + fmt(rep.variance) + "," +
         fmt(rep.std_error) + "," + std::to_string(rep.n_samples) + "," + fmt(rep.imag_mean) + "," +
         fmt(rep.imag_std_error) + "\n";
  detail::write_file(output_path(cfg, "estimate.csv"), csv);

  char line[128];
  std::snprintf(line, sizeof line, "mean %.6f +- %.6g (%s, %zu samples)\n", rep.mean, rep.std_error,
                method_name(rep.method).c_str(), rep.n_samples);
  out << line;
}

void cmd_compare(const RunConfig &cfg, std::ostream &out) {
  const Observable obs = Observable::load(require(cfg.observable, "observable", "compare"));
  if (cfg.budgets.empty()) throw ConfigError("compare requires 'budgets'");
  if (cfg.replicates < 2) throw ConfigError("compare requires replicates >= 2");
  std::vector<std::size_t> budgets = cfg.budgets;
  std::sort(budgets.begin(), budgets.end());
  budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
  if (budgets.front() < 1) throw ConfigError("budgets must be >= 1");

  std::optional<Dataset> pool;
  std::optional<GroundState> gs;
  if (cfg.dataset) {
    pool = load(*cfg.dataset);
    check_qubits(pool->n_qubits(), obs.n_qubits(), "dataset");
    if (budgets.back() > pool->size())
      throw ConfigError("budget " + std::to_string(budgets.back()) + " exceeds the pool of " +
                        std::to_string(pool->size()) + " records");
  } else {
    gs = ground_state(obs);
    out << "ground_energy " << fmt(gs->energy) << "\n";
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t k_terms = obs.terms().size();

  std::string csv = "M,nn_mean,nn_var,qc_mean,qc_eps2,eps2_max,p_nn,p_qc\n";
  for (const std::size_t m : budgets) {
    const std::uint64_t budget_seed = derive_seed(cfg.seed, "budget", m);

    EnsembleConfig ec;
    ec.replicates = cfg.replicates;
    ec.seed = budget_seed;
    ec.train = cfg.train;
    ec.sampler = cfg.sampler;
    ec.n_mc = cfg.n_mc;
    ec.accuracy = cfg.accuracy;
    ec.threads = cfg.threads;
    EnsembleSource source = pool ? EnsembleSource(PoolSource{*pool, m}) : EnsembleSource(SyntheticSource{gs->state, m});
    if (gs) ec.exact_value = gs->energy;
    const EnsembleReport ens = ensemble_run(obs, source, ec);
    detail::write_file(output_path(cfg, "histogram_M" + std::to_string(m) + ".csv"), histogram_csv(ens));
    if (ens.partial())
      log_warning("budget " + std::to_string(m) + ": " + std::to_string(ens.failures) + " of " +
                  std::to_string(cfg.replicates) + " replicates failed");

    const ShotBudget budget = ShotBudget::split(m, k_terms);
    const double s = static_cast<double>(budget.per_term);
    double qc_mean = nan, sigma2 = nan;
    if (gs) {
      const auto qc = standard_estimate(per_term_shots(gs->state, obs, budget.per_term, derive_seed(budget_seed, "standard")), obs);
      qc_mean = qc.mean;
      sigma2 = cfg.qc_variance == QcVariance::Exact ? qc_variance_exact(gs->state, obs) : qc.variance;
    } else {
      try {
        const Dataset sub = subsample(*pool, m, derive_seed(budget_seed, "standard"));
        const auto qc = standard_estimate(group_by_pauli(sub, obs), obs);
        qc_mean = qc.mean;
        sigma2 = qc.std_error * qc.std_error * s;
      } catch (const std::exception &e) {
        log_warning("budget " + std::to_string(m) + ": standard estimator unavailable: " + e.what());
      }
    }
    const double eps2 = sigma2 / s;
    const double p_qc = std::isnan(sigma2) ? nan : p_chem_accuracy_standard(sigma2, budget.per_term, cfg.accuracy);
    const double p_nn = ens.p_within_accuracy ? *ens.p_within_accuracy : nan;

    csv += std::to_string(m) + "," + fmt(ens.mean) + "," + fmt(ens.variance) + "," + fmt(qc_mean) + "," +
           fmt(eps2) + "," + fmt(error_upper_bound(obs, m)) + "," + fmt(p_nn) + "," + fmt(p_qc) + "\n";
    out << "M " << m << " nn_mean " << fmt_short(ens.mean) << " nn_var " << fmt_short(ens.variance)
        << " qc_mean " << fmt_short(qc_mean) << " qc_eps2 " << fmt_short(eps2) << "\n";
  }
  detail::write_file(output_path(cfg, "compare.csv"), csv);
}

void cmd_convert_counts(const RunConfig &cfg, std::ostream &out) {
  const Dataset ds = load_counts(require(cfg.counts, "counts", "convert-counts"));
  save(ds, output_path(cfg, "dataset.txt"));
  out << "qubits " << ds.n_qubits() << "\n" << "records " << ds.size() << "\n";
}

}  // namespace nnest
