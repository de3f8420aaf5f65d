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

#include "nnest/rbm.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <vector>

#include "nnest/exactsim.hpp"
#include "nnest/random.hpp"
#include "text_util.hpp"

namespace nnest {

namespace {

constexpr int kCheckpointVersion = 1;
constexpr const char *kCheckpointTag = "nnest-rbm";

std::vector<int> rotated_sites(const MeasurementRecord &record, int n, int max_rotated) {
  if (static_cast<int>(record.basis.size()) != n || static_cast<int>(record.bits.size()) != n)
    throw DimensionError("record length does not match the RBM");
  std::vector<int> tau;
  for (int i = 0; i < n; ++i)
    if (record.basis[i] != Axis::Z) tau.push_back(i);
  if (static_cast<int>(tau.size()) > max_rotated)
    throw CapacityError(std::to_string(tau.size()) + " rotated sites exceeds the limit of " +
                        std::to_string(max_rotated));
  return tau;
}

// Calls fn(log_u, sigma) for every reference configuration compatible with
// the record; u = prod_j <s^b_j|s_j> over the rotated sites. The factor is
// kept out of the log domain so that opposite phases cancel exactly.
template <typename Fn>
void for_each_rotated_term(const MeasurementRecord &record, const std::vector<int> &tau, Fn &&fn) {
  Bits sigma = record.bits;
  const std::uint64_t count = std::uint64_t{1} << tau.size();
  for (std::uint64_t s = 0; s < count; ++s) {
    std::complex<double> u{1.0, 0.0};
    for (std::size_t j = 0; j < tau.size(); ++j) {
      const int site = tau[j];
      const auto ref = static_cast<std::uint8_t>((s >> j) & 1u);
      sigma[site] = ref;
      u *= rotation_matrix(record.basis[site])(record.bits[site], ref);
    }
    fn(u, sigma);
  }
}

}  // namespace

std::complex<double> log_cosh(std::complex<double> z) {
  // cosh(w) = e^w (1 + e^{-2w}) / 2 with Re w >= 0.
  const std::complex<double> w = z.real() < 0.0 ? -z : z;
  return w + std::log(1.0 + std::exp(-2.0 * w)) - std::log(2.0);
}

Rbm::Rbm(int n_visible, int n_hidden)
    : n_visible_(n_visible),
      n_hidden_(n_hidden),
      a_(Eigen::VectorXcd::Zero(n_visible)),
      d_(Eigen::VectorXcd::Zero(n_hidden)),
      w_(Eigen::MatrixXcd::Zero(n_visible, n_hidden)) {
  if (n_visible < 1 || n_hidden < 1)
    throw DimensionError("RBM needs at least one visible and one hidden unit");
}

Rbm Rbm::random(int n_visible, int n_hidden, double stddev, std::uint64_t seed) {
  Rbm rbm(n_visible, n_hidden);
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, stddev);
  GradientVector p(rbm.n_params());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    p(k) = {re, im};
  }
  rbm.set_parameters(p);
  return rbm;
}

GradientVector Rbm::parameters() const {
  GradientVector p(n_params());
  p.head(n_visible_) = a_;
  p.segment(n_visible_, n_hidden_) = d_;
  Eigen::Index k = n_visible_ + n_hidden_;
  for (int i = 0; i < n_visible_; ++i)
    for (int j = 0; j < n_hidden_; ++j) p(k++) = w_(i, j);
  return p;
}

void Rbm::set_parameters(const GradientVector &flat) {
  if (flat.size() != n_params())
    throw DimensionError("parameter vector has length " + std::to_string(flat.size()) +
                         ", expected " + std::to_string(n_params()));
  a_ = flat.head(n_visible_);
  d_ = flat.segment(n_visible_, n_hidden_);
  Eigen::Index k = n_visible_ + n_hidden_;
  for (int i = 0; i < n_visible_; ++i)
    for (int j = 0; j < n_hidden_; ++j) w_(i, j) = flat(k++);
}

bool Rbm::all_finite() const {
  auto finite = [](const auto &m) {
    for (Eigen::Index i = 0; i < m.size(); ++i)
      if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) return false;
    return true;
  };
  return finite(a_) && finite(d_) && finite(w_);
}

void Rbm::check(const Bits &sigma) const {
  if (static_cast<int>(sigma.size()) != n_visible_)
    throw DimensionError("configuration length " + std::to_string(sigma.size()) +
                         " does not match " + std::to_string(n_visible_) + " visible units");
}

void Rbm::hidden_angles(const Bits &sigma, std::complex<double> *out) const {
  for (int j = 0; j < n_hidden_; ++j) out[j] = d_(j);
  for (int i = 0; i < n_visible_; ++i) {
    if (!sigma[i]) continue;
    for (int j = 0; j < n_hidden_; ++j) out[j] += w_(i, j);
  }
}

std::complex<double> Rbm::log_psi(const Bits &sigma) const {
  check(sigma);
  std::complex<double> acc{0.0, 0.0};
  for (int i = 0; i < n_visible_; ++i)
    if (sigma[i]) acc += a_(i);
  for (int j = 0; j < n_hidden_; ++j) {
    std::complex<double> theta = d_(j);
    for (int i = 0; i < n_visible_; ++i)
      if (sigma[i]) theta += w_(i, j);
    acc += log_cosh(theta);
  }
  return acc;
}

GradientVector Rbm::log_derivatives(const Bits &sigma) const {
  check(sigma);
  GradientVector g = GradientVector::Zero(n_params());
  std::vector<std::complex<double>> theta(n_hidden_);
  hidden_angles(sigma, theta.data());
  for (int i = 0; i < n_visible_; ++i) g(i) = sigma[i] ? 1.0 : 0.0;
  for (int j = 0; j < n_hidden_; ++j) g(n_visible_ + j) = std::tanh(theta[j]);
  Eigen::Index k = n_visible_ + n_hidden_;
  for (int i = 0; i < n_visible_; ++i) {
    for (int j = 0; j < n_hidden_; ++j, ++k)
      if (sigma[i]) g(k) = g(n_visible_ + j);
  }
  return g;
}

std::complex<double> log_rotated_psi(const Rbm &rbm, const MeasurementRecord &record,
                                     int max_rotated) {
  const auto tau = rotated_sites(record, rbm.n_visible(), max_rotated);
  if (tau.empty()) return rbm.log_psi(record.bits);

  std::vector<std::complex<double>> us, logs;
  us.reserve(std::size_t{1} << tau.size());
  logs.reserve(std::size_t{1} << tau.size());
  double peak = -std::numeric_limits<double>::infinity();
  for_each_rotated_term(record, tau, [&](std::complex<double> u, const Bits &sigma) {
    us.push_back(u);
    logs.push_back(rbm.log_psi(sigma));
    peak = std::max(peak, logs.back().real());
  });
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t t = 0; t < logs.size(); ++t) sum += us[t] * std::exp(logs[t] - peak);
  return peak + std::log(sum);
}

std::complex<double> rotated_psi(const Rbm &rbm, const MeasurementRecord &record,
                                 int max_rotated) {
  return std::exp(log_rotated_psi(rbm, record, max_rotated));
}

GradientVector rotated_grad_average(const Rbm &rbm, const MeasurementRecord &record,
                                    int max_rotated) {
  const auto tau = rotated_sites(record, rbm.n_visible(), max_rotated);
  if (tau.empty()) return rbm.log_derivatives(record.bits).conjugate();

  std::vector<std::complex<double>> us, logs;
  std::vector<Bits> configs;
  double peak = -std::numeric_limits<double>::infinity();
  for_each_rotated_term(record, tau, [&](std::complex<double> u, const Bits &sigma) {
    us.push_back(u);
    logs.push_back(rbm.log_psi(sigma));
    configs.push_back(sigma);
    peak = std::max(peak, logs.back().real());
  });

  GradientVector num = GradientVector::Zero(rbm.n_params());
  std::complex<double> den{0.0, 0.0};
  for (std::size_t t = 0; t < logs.size(); ++t) {
    const std::complex<double> weight = us[t] * std::exp(logs[t] - peak);
    num += weight * rbm.log_derivatives(configs[t]);
    den += weight;
  }
  if (!(std::abs(den) >= 1e-300))
    throw DegenerateAmplitudeError("rotated amplitude vanishes for record " +
                                   basis_string(record.basis) + " " + bits_string(record.bits));
  return (num / den).conjugate();
}

double log_partition_function(const Rbm &rbm, int max_visible) {
  const int n = rbm.n_visible();
  if (n > max_visible)
    throw CapacityError(std::to_string(n) + " visible units exceeds the enumeration limit of " +
                        std::to_string(max_visible));
  // Streaming log-sum-exp over 2 Re log psi.
  double peak = -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < dim; ++s) {
    const double v = 2.0 * rbm.log_psi(index_to_bits(s, n)).real();
    if (v == -std::numeric_limits<double>::infinity()) continue;
    if (v > peak) {
      acc = acc * std::exp(peak - v) + 1.0;
      peak = v;
    } else {
      acc += std::exp(v - peak);
    }
  }
  return peak + std::log(acc);
}

std::string params_to_text(const Rbm &rbm) {
  std::string out = std::string(kCheckpointTag) + " " + std::to_string(kCheckpointVersion) +
                    "\nvisible " + std::to_string(rbm.n_visible()) + " hidden " +
                    std::to_string(rbm.n_hidden()) + "\n";
  const auto p = rbm.parameters();
  char buf[96];
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%a %a\n", p(k).real(), p(k).imag());
    out += buf;
  }
  out += "end\n";
  return out;
}

Rbm params_from_text(std::string_view text) {
  std::vector<std::string_view> lines;
  detail::for_each_line(text, [&](std::size_t, std::string_view l) {
    l = detail::trim(l);
    if (!l.empty()) lines.push_back(l);
  });
  if (lines.empty()) throw ParseError("empty checkpoint");
  auto head = detail::split_ws(lines[0]);
  long long version = 0;
  if (head.size() != 2 || head[0] != kCheckpointTag)
    throw ParseError(1, "not an nnest RBM checkpoint");
  if (!detail::parse_int(head[1], version) || version != kCheckpointVersion)
    throw ParseError("unsupported checkpoint version '" + std::string(head[1]) +
                     "' (expected " + std::to_string(kCheckpointVersion) + ")");
  if (lines.size() < 2) throw ParseError("truncated checkpoint");
  auto dims = detail::split_ws(lines[1]);
  long long nv = 0, nh = 0;
  if (dims.size() != 4 || dims[0] != "visible" || dims[2] != "hidden" ||
      !detail::parse_int(dims[1], nv) || !detail::parse_int(dims[3], nh) || nv < 1 || nh < 1)
    throw ParseError(2, "expected 'visible <N> hidden <M>'");
  Rbm rbm(static_cast<int>(nv), static_cast<int>(nh));
  const auto n_params = static_cast<std::size_t>(rbm.n_params());
  if (lines.size() != n_params + 3 || lines.back() != "end")
    throw ParseError("truncated checkpoint");
  GradientVector p(rbm.n_params());
  for (std::size_t k = 0; k < n_params; ++k) {
    auto f = detail::split_ws(lines[k + 2]);
    double v[2];
    for (int c = 0; c < 2 && f.size() == 2; ++c) {
      std::string tok(f[c]);
      char *end = nullptr;
      v[c] = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + tok.size()) f.clear();
    }
    if (f.size() != 2) throw ParseError(k + 3, "corrupt parameter");
    p(static_cast<Eigen::Index>(k)) = {v[0], v[1]};
  }
  rbm.set_parameters(p);
  return rbm;
}

void save_params(const Rbm &rbm, const std::filesystem::path &path) {
  detail::write_file(path, params_to_text(rbm));
}

Rbm load_params(const std::filesystem::path &path) {
  return params_from_text(detail::read_file(path));
}

}  // namespace nnest
