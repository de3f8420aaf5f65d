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

#ifndef NNEST_RBM_HPP
#define NNEST_RBM_HPP

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "nnest/basis.hpp"
#include "nnest/dataset.hpp"
#include "nnest/errors.hpp"

namespace nnest {

inline constexpr int kMaxRotatedSites = 16;
inline constexpr int kMaxEnumeratedVisible = 20;

// Flat complex vector of log-derivatives or parameter updates. Layout:
// [a_0..a_{N-1}, d_0..d_{M-1}, W_00, W_01, .., W_{N-1,M-1}] (W row-major).
using GradientVector = Eigen::VectorXcd;

// Thrown when a rotated amplitude vanishes and its log-derivative average is
// undefined.
class DegenerateAmplitudeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Numerically stable log(cosh(z)) for complex z.
std::complex<double> log_cosh(std::complex<double> z);

// Complex restricted Boltzmann machine with the hidden layer traced out:
//   psi(s) = exp(sum_i a_i s_i) prod_j cosh(sum_i W_ij s_i + d_j),  s_i in {0, 1}.
// The amplitude is unnormalised.
class Rbm {
 public:
  Rbm(int n_visible, int n_hidden);

  // i.i.d. complex Gaussian parameters, std on both real and imaginary parts.
  static Rbm random(int n_visible, int n_hidden, double stddev, std::uint64_t seed);

  int n_visible() const { return n_visible_; }
  int n_hidden() const { return n_hidden_; }
  Eigen::Index n_params() const {
    return n_visible_ + n_hidden_ + static_cast<Eigen::Index>(n_visible_) * n_hidden_;
  }

  Eigen::VectorXcd &visible_bias() { return a_; }
  Eigen::VectorXcd &hidden_bias() { return d_; }
  Eigen::MatrixXcd &weights() { return w_; }
  const Eigen::VectorXcd &visible_bias() const { return a_; }
  const Eigen::VectorXcd &hidden_bias() const { return d_; }
  const Eigen::MatrixXcd &weights() const { return w_; }

  GradientVector parameters() const;
  void set_parameters(const GradientVector &flat);
  bool all_finite() const;

  // theta_j = sum_i W_ij s_i + d_j, written to out (length n_hidden).
  void hidden_angles(const Bits &sigma, std::complex<double> *out) const;

  std::complex<double> log_psi(const Bits &sigma) const;
  GradientVector log_derivatives(const Bits &sigma) const;

  friend bool operator==(const Rbm &a, const Rbm &b) {
    return a.n_visible_ == b.n_visible_ && a.n_hidden_ == b.n_hidden_ && a.a_ == b.a_ &&
           a.d_ == b.d_ && a.w_ == b.w_;
  }

 private:
  void check(const Bits &sigma) const;

  int n_visible_;
  int n_hidden_;
  Eigen::VectorXcd a_;
  Eigen::VectorXcd d_;
  Eigen::MatrixXcd w_;
};

// log psi(sigma^b) for the amplitude in the record's measurement basis, summed
// over the 2^{N_U} reference configurations of the non-z sites.
std::complex<double> log_rotated_psi(const Rbm &rbm, const MeasurementRecord &record,
                                     int max_rotated = kMaxRotatedSites);
std::complex<double> rotated_psi(const Rbm &rbm, const MeasurementRecord &record,
                                 int max_rotated = kMaxRotatedSites);

// Conjugate of the quasi-probability average
//   sum_s U psi(s) Phi(s) / sum_s U psi(s),
// i.e. the positive-phase term of the NLL gradient for one record.
GradientVector rotated_grad_average(const Rbm &rbm, const MeasurementRecord &record,
                                    int max_rotated = kMaxRotatedSites);

// log of sum_s |psi(s)|^2 by full enumeration.
double log_partition_function(const Rbm &rbm, int max_visible = kMaxEnumeratedVisible);

std::string params_to_text(const Rbm &rbm);
Rbm params_from_text(std::string_view text);
void save_params(const Rbm &rbm, const std::filesystem::path &path);
Rbm load_params(const std::filesystem::path &path);

}  // namespace nnest

#endif
