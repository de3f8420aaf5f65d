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


#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "nnest/errors.hpp"
#include "nnest/exactsim.hpp"
#include "nnest/trainer.hpp"
#include "oracles.hpp"

using namespace nnest;
using cd = std::complex<double>;

namespace {

std::vector<MeasurementRecord> random_records(int n, int count, std::mt19937_64 &rng, bool z_only = false) {
  std::vector<MeasurementRecord> out;
  for (int i = 0; i < count; ++i)
    out.push_back({z_only ? BasisAssignment(n, Axis::Z) : oracle::random_basis(n, rng), oracle::random_bits(n, rng)});
  return out;
}

// dNLL/dRe + i dNLL/dIm by central differences of the enumerated NLL.
GradientVector fd_gradient(const Rbm &r, const std::vector<MeasurementRecord> &recs, double h) {
  const auto p = r.parameters();
  GradientVector out(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    double parts[2];
    for (int part = 0; part < 2; ++part) {
      const cd dir = part == 0 ? cd(1, 0) : cd(0, 1);
      Rbm plus = r, minus = r;
      auto pp = p, pm = p;
      pp(k) += h * dir;
      pm(k) -= h * dir;
      plus.set_parameters(pp);
      minus.set_parameters(pm);
      parts[part] = (oracle::nll(plus, recs) - oracle::nll(minus, recs)) / (2 * h);
    }
    out(k) = cd(parts[0], parts[1]);
  }
  return out;
}

TrainConfig quick_config() {
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.selection_n_mc = 2000;
  cfg.checkpoint_pool = 10;
  return cfg;
}

SamplerConfig quick_sampler() {
  SamplerConfig s = SamplerConfig::linear_ladder(4);
  s.sweeps_burn_in = 10;
  return s;
}

}  // namespace

TEST(TrainConfig, DefaultsAndValidation) {
  TrainConfig cfg;
  EXPECT_EQ(cfg.learning_rate, 0.01);
  EXPECT_EQ(cfg.rms_decay, 0.9);
  EXPECT_EQ(cfg.rms_epsilon, 1e-7);
  EXPECT_EQ(cfg.checkpoint_pool, 200);
  EXPECT_EQ(cfg.train_fraction, 0.9);
  EXPECT_EQ(cfg.negatives(), cfg.batch_size);
  EXPECT_NO_THROW(cfg.validate());
  auto bad = cfg;
  bad.batch_size = 10001;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = cfg;
  bad.rms_decay = 1.0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = cfg;
  bad.learning_rate = 0.0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = cfg;
  bad.rms_epsilon = 0.0;
  EXPECT_THROW(bad.validate(), ConfigError);
  EXPECT_EQ(parse_selection_rule(selection_rule_name(SelectionRule::LowestValidationNll)),
            SelectionRule::LowestValidationNll);
  EXPECT_THROW(parse_selection_rule("fastest"), ConfigError);
}

TEST(Nll, UniformModel) {
  std::mt19937_64 rng(1);
  const auto recs = random_records(3, 50, rng, true);
  EXPECT_NEAR(nll(Rbm(3, 2), recs), 3 * std::log(2.0), 1e-13);
}

TEST(Nll, PointMassLimitDecreasesToZero) {
  const std::vector<MeasurementRecord> recs(10, {BasisAssignment(2, Axis::Z), Bits{0, 0}});
  double prev = std::numeric_limits<double>::infinity();
  for (int t = 0; t <= 12; ++t) {
    Rbm r(2, 1);
    r.visible_bias().setConstant(-double(t));
    const double v = nll(r, recs);
    EXPECT_LT(v, prev);
    EXPECT_GE(v, 0.0);
    prev = v;
  }
  EXPECT_LT(prev, 1e-9);
}

TEST(Nll, MatchesEnumeration) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Rbm r = oracle::random_rbm(3, 2, 0.6, rng);
    const auto recs = random_records(3, 40, rng);
    EXPECT_NEAR(nll(r, recs), oracle::nll(r, recs), 1e-10);
  }
}

TEST(Nll, BoundedBelowByEmpiricalEntropy) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    const Rbm r = oracle::random_rbm(n, 2, 0.8, rng);
    const auto recs = random_records(n, 200, rng);
    std::map<std::string, std::map<std::string, double>> counts;
    for (const auto &x : recs) counts[basis_string(x.basis)][bits_string(x.bits)] += 1;
    double entropy = 0.0;
    for (const auto &[b, outcomes] : counts) {
      double nb = 0.0;
      for (const auto &[o, c] : outcomes) nb += c;
      for (const auto &[o, c] : outcomes) entropy -= (c / recs.size()) * std::log(c / nb);
    }
    EXPECT_GE(nll(r, recs), entropy - 1e-12);
  }
}

TEST(Gradient, ZeroAtExactFit) {
  // Uniform model and a dataset with every z-string once.
  std::vector<MeasurementRecord> recs;
  for (std::uint64_t k = 0; k < 8; ++k) recs.push_back({BasisAssignment(3, Axis::Z), oracle::bits_of(k, 3)});
  EXPECT_LT(gradient_exact(Rbm(3, 2), recs).norm(), 1e-12);

  // Product state with p(1) = 3/4 on the single qubit.
  Rbm r(1, 1);
  r.visible_bias()(0) = 0.5 * std::log(3.0);
  std::vector<MeasurementRecord> one = {{{Axis::Z}, {0}}, {{Axis::Z}, {1}}, {{Axis::Z}, {1}}, {{Axis::Z}, {1}}};
  EXPECT_LT(gradient_exact(r, one).norm(), 1e-12);
}

TEST(Gradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 2;
    const Rbm r = oracle::random_rbm(n, 1 + trial % 3, 0.5, rng);
    const auto recs = random_records(n, 6, rng);
    const auto g = gradient_exact(r, recs);
    const auto fd = fd_gradient(r, recs, 1e-5);
    EXPECT_LT((g - fd).norm() / fd.norm(), 1e-6) << "trial " << trial;
  }
}

TEST(Gradient, MonteCarloNegativePhase) {
  std::mt19937_64 rng(5);
  const Rbm r = oracle::random_rbm(3, 3, 0.5, rng);
  SamplerConfig cfg;
  cfg.seed = 17;
  const std::size_t n = 100000;
  const auto samples = draw_samples(r, cfg, n);
  const auto mc = negative_phase(r, samples);
  const auto exact = negative_phase_exact(r);
  // Standard errors from the per-sample spread of conj(Phi).
  for (Eigen::Index k = 0; k < r.n_params(); ++k) {
    double s_re = 0, s2_re = 0, s_im = 0, s2_im = 0;
    for (const auto &s : samples) {
      const cd v = std::conj(r.log_derivatives(s)(k));
      s_re += v.real();
      s2_re += v.real() * v.real();
      s_im += v.imag();
      s2_im += v.imag() * v.imag();
    }
    const double se_re = std::sqrt(std::max(0.0, s2_re / n - std::pow(s_re / n, 2)) / n);
    const double se_im = std::sqrt(std::max(0.0, s2_im / n - std::pow(s_im / n, 2)) / n);
    EXPECT_LE(std::abs(mc(k).real() - exact(k).real()), 5 * se_re + 1e-12) << k;
    EXPECT_LE(std::abs(mc(k).imag() - exact(k).imag()), 5 * se_im + 1e-12) << k;
  }
}

TEST(RmsProp, ZeroGradient) {
  std::mt19937_64 rng(6);
  Rbm r = oracle::random_rbm(2, 2, 0.3, rng);
  const Rbm before = r;
  OptimizerState opt(r.n_params());
  opt.g_real.setConstant(2.0);
  opt.g_imag.setConstant(4.0);
  TrainConfig cfg;
  rmsprop_step(r, opt, GradientVector::Zero(r.n_params()), cfg);
  EXPECT_EQ(r, before);
  EXPECT_DOUBLE_EQ(opt.g_real(0), 1.8);
  EXPECT_DOUBLE_EQ(opt.g_imag(0), 3.6);
}

TEST(RmsProp, FreshStateFormula) {
  Rbm r(1, 1);
  OptimizerState opt(r.n_params());
  TrainConfig cfg;
  GradientVector g = GradientVector::Zero(r.n_params());
  g(0) = cd(0.3, -2.0);
  rmsprop_step(r, opt, g, cfg);
  const double b = cfg.rms_decay, eta = cfg.learning_rate, eps = cfg.rms_epsilon;
  EXPECT_DOUBLE_EQ(opt.g_real(0), (1 - b) * 0.09);
  EXPECT_DOUBLE_EQ(opt.g_imag(0), (1 - b) * 4.0);
  EXPECT_NEAR(r.visible_bias()(0).real(), -eta * 0.3 / (std::sqrt(1 - b) * 0.3 + eps), 1e-15);
  EXPECT_NEAR(r.visible_bias()(0).imag(), eta * 2.0 / (std::sqrt(1 - b) * 2.0 + eps), 1e-15);
  EXPECT_EQ(r.hidden_bias()(0), cd(0));
}

TEST(RmsProp, ConstantGradientConverges) {
  Rbm r(1, 1);
  OptimizerState opt(r.n_params());
  TrainConfig cfg;
  GradientVector g = GradientVector::Constant(r.n_params(), cd(0.5, 0.0));
  double last_step = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double before = r.visible_bias()(0).real();
    rmsprop_step(r, opt, g, cfg);
    last_step = before - r.visible_bias()(0).real();
  }
  // g_100 = (1 - beta^100) G^2 by the geometric series.
  const double g100 = (1 - std::pow(cfg.rms_decay, 100)) * 0.25;
  EXPECT_NEAR(opt.g_real(0), g100, 1e-15);
  EXPECT_NEAR(last_step, cfg.learning_rate * 0.5 / (std::sqrt(g100) + cfg.rms_epsilon), 1e-15);
  EXPECT_NEAR(last_step, cfg.learning_rate, 1e-6);
}

TEST(RmsProp, RejectsNonFinite) {
  Rbm r(2, 1);
  const Rbm before = r;
  OptimizerState opt(r.n_params());
  GradientVector g = GradientVector::Ones(r.n_params());
  g(2) = cd(std::nan(""), 0);
  EXPECT_THROW(rmsprop_step(r, opt, g, TrainConfig{}), NumericalError);
  EXPECT_EQ(r, before);
  EXPECT_EQ(opt.g_real.norm(), 0.0);
  EXPECT_THROW(rmsprop_step(r, opt, GradientVector::Ones(3), TrainConfig{}), DimensionError);
}

TEST(Train, LearnsPointMass) {
  const Dataset ds(2, std::vector<MeasurementRecord>(10000, {BasisAssignment(2, Axis::Z), Bits{0, 0}}));
  TrainConfig cfg;
  cfg.epochs = 10;
  cfg.selection_rule = SelectionRule::LowestValidationNll;
  const auto report = train(ds, Observable::parse("-1 ZI\n-1 IZ"), cfg, quick_sampler());
  const Eigen::VectorXcd psi = oracle::rbm_state(report.model);
  EXPECT_GE(std::norm(psi(0)) / psi.squaredNorm(), 0.99);
}

TEST(Train, ReportInvariants) {
  const auto obs = Observable::parse("-1 XX\n-1 ZI\n-1 IZ");
  const auto gs = ground_state(obs);
  const Dataset ds = sample_term_bases(gs.state, obs, 2000, 3);
  const auto cfg = quick_config();
  const auto report = train(ds, obs, cfg, quick_sampler());
  ASSERT_EQ(report.history.size(), 4u);
  for (int e = 0; e <= 3; ++e) EXPECT_EQ(report.history[e].epoch, e);
  EXPECT_LE(report.selected_validation_nll, report.history[0].nll_validation);
  EXPECT_TRUE(std::isfinite(report.selected_energy));
  EXPECT_GE(report.selected_checkpoint, 0);
  EXPECT_LE(report.pool_size, 4u);
  bool found = false;
  for (const auto &h : report.history)
    found |= h.epoch == report.selected_checkpoint && h.nll_validation == report.selected_validation_nll;
  EXPECT_TRUE(found);

  const std::string log = report.log_text();
  EXPECT_EQ(log.rfind("epoch 0 nll_val ", 0), 0u);
  EXPECT_EQ(std::count(log.begin(), log.end(), '\n'), 4);
}

TEST(Train, Deterministic) {
  const auto obs = Observable::parse("-1 XX\n-1 ZI\n-1 IZ");
  const auto gs = ground_state(obs);
  const Dataset ds = sample_term_bases(gs.state, obs, 1000, 4);
  const auto a = train(ds, obs, quick_config(), quick_sampler());
  const auto b = train(ds, obs, quick_config(), quick_sampler());
  EXPECT_EQ(a.log_text(), b.log_text());
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.selected_checkpoint, b.selected_checkpoint);
  EXPECT_EQ(a.selected_energy, b.selected_energy);
}

TEST(Train, PoolCapacityEvictsWorst) {
  const auto obs = Observable::parse("-1 XX\n-1 ZI\n-1 IZ");
  const auto gs = ground_state(obs);
  const Dataset ds = sample_term_bases(gs.state, obs, 1000, 5);
  auto cfg = quick_config();
  cfg.epochs = 6;
  cfg.checkpoint_pool = 2;
  cfg.selection_rule = SelectionRule::LowestValidationNll;
  const auto report = train(ds, obs, cfg, quick_sampler());
  EXPECT_EQ(report.pool_size, 2u);
  double best = report.history[0].nll_validation;
  for (const auto &h : report.history) best = std::min(best, h.nll_validation);
  EXPECT_EQ(report.selected_validation_nll, best);
}

TEST(Train, Errors) {
  const Dataset ds(2, std::vector<MeasurementRecord>(100, {BasisAssignment(2, Axis::Z), Bits{0, 0}}));
  EXPECT_THROW(train(ds, Observable::parse("1 ZZZ"), quick_config(), quick_sampler()), DimensionError);
  auto bad = quick_config();
  bad.epochs = 0;
  EXPECT_THROW(train(ds, Observable::parse("1 ZZ"), bad, quick_sampler()), ConfigError);
}
