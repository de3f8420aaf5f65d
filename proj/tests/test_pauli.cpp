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

#include <map>
#include <random>

#include "nnest/errors.hpp"
#include "nnest/pauli.hpp"
#include "oracles.hpp"

using namespace nnest;
using cd = std::complex<double>;

namespace {

std::map<std::uint64_t, cd> row_map(const Observable &obs, const Bits &sigma) {
  std::map<std::uint64_t, cd> out;
  for (const auto &c : obs.connected_elements(sigma)) {
    EXPECT_EQ(out.count(oracle::index_of(c.sigma)), 0u) << "duplicate sigma'";
    out[oracle::index_of(c.sigma)] = c.amplitude;
  }
  return out;
}

}  // namespace

TEST(ObservableParse, TwoTerms) {
  const auto obs = Observable::parse("0.5 ZI\n-0.25 XX");
  EXPECT_EQ(obs.n_qubits(), 2);
  ASSERT_EQ(obs.size(), 2u);
  EXPECT_EQ(obs[0].coefficient, 0.5);
  EXPECT_EQ(obs[0].string.str(), "ZI");
  EXPECT_EQ(obs[1].coefficient, -0.25);
  EXPECT_EQ(obs[1].string.str(), "XX");
}

TEST(ObservableParse, MergesDuplicates) {
  const auto obs = Observable::parse("1.0 II\n2.0 II");
  ASSERT_EQ(obs.size(), 1u);
  EXPECT_EQ(obs[0].coefficient, 3.0);
}

TEST(ObservableParse, MergeKeepsFirstAppearanceOrder) {
  const auto obs = Observable::parse("1 XZ\n2 ZZ\n3 XZ\n");
  ASSERT_EQ(obs.size(), 2u);
  EXPECT_EQ(obs[0].string.str(), "XZ");
  EXPECT_EQ(obs[0].coefficient, 4.0);
  EXPECT_EQ(obs[1].string.str(), "ZZ");
}

TEST(ObservableParse, CommentsAndBlankLines) {
  const auto obs = Observable::parse("# header\n\n-0.4804 ZIZIII  # trailing\n\n");
  ASSERT_EQ(obs.size(), 1u);
  EXPECT_EQ(obs.n_qubits(), 6);
  EXPECT_DOUBLE_EQ(obs[0].coefficient, -0.4804);
}

TEST(ObservableParse, InvalidLetter) {
  try {
    Observable::parse("0.5 ZQ");
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_NE(std::string(e.what()).find("invalid Pauli letter at line 1"), std::string::npos) << e.what();
  }
}

TEST(ObservableParse, Rejections) {
  EXPECT_THROW(Observable::parse(""), ParseError);
  EXPECT_THROW(Observable::parse("# only a comment\n"), ParseError);
  EXPECT_THROW(Observable::parse("abc ZZ"), ParseError);
  EXPECT_THROW(Observable::parse("1.0 ZZ\n1.0 Z"), ParseError);
  EXPECT_THROW(Observable::parse("nan ZZ"), ParseError);
  EXPECT_THROW(Observable::parse("1.0"), ParseError);
  try {
    Observable::parse("1.0 ZZ\n\n2.0 ZZZ\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(ObservableParse, TextRoundTrip) {
  std::mt19937_64 rng(3);
  const auto obs = oracle::random_observable(4, 7, rng);
  const auto back = Observable::parse(obs.to_text());
  ASSERT_EQ(back.size(), obs.size());
  for (std::size_t k = 0; k < obs.size(); ++k) {
    EXPECT_EQ(back[k].coefficient, obs[k].coefficient);
    EXPECT_EQ(back[k].string, obs[k].string);
  }
}

TEST(PauliString, SupportAndBasis) {
  const auto p = PauliString::parse("IXIYZ");
  EXPECT_EQ(p.support(), (std::vector<int>{1, 3, 4}));
  EXPECT_FALSE(p.is_identity());
  EXPECT_EQ(basis_string(p.measurement_basis()), "ZXZYZ");
  EXPECT_TRUE(PauliString::parse("III").is_identity());
  EXPECT_THROW(PauliString(std::vector<PauliOp>{}), DimensionError);
}

TEST(ApplyString, Examples) {
  auto a = apply_string(PauliString::parse("Z"), Bits{0});
  EXPECT_EQ(a.sigma, Bits{0});
  EXPECT_EQ(a.phase, cd(1, 0));
  a = apply_string(PauliString::parse("X"), Bits{1});
  EXPECT_EQ(a.sigma, Bits{0});
  EXPECT_EQ(a.phase, cd(1, 0));
  a = apply_string(PauliString::parse("Y"), Bits{0});
  EXPECT_EQ(a.sigma, Bits{1});
  EXPECT_EQ(a.phase, cd(0, 1));
  a = apply_string(PauliString::parse("Y"), Bits{1});
  EXPECT_EQ(a.sigma, Bits{0});
  EXPECT_EQ(a.phase, cd(0, -1));
}

TEST(ApplyString, LengthMismatch) {
  EXPECT_THROW(apply_string(PauliString::parse("ZZ"), Bits{0}), DimensionError);
}

TEST(ApplyString, MatchesKroneckerColumn) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    const auto p = oracle::random_pauli(n, rng);
    const auto sigma = oracle::random_bits(n, rng);
    const auto m = oracle::pauli_kron(p);
    const auto act = apply_string(p, sigma);
    const auto col = oracle::index_of(sigma);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const cd expect = r == Eigen::Index(oracle::index_of(act.sigma)) ? act.phase : cd(0);
      EXPECT_EQ(m(r, col), expect);
    }
  }
}

TEST(ApplyString, InvolutionAndUnitPhase) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 5;
    const auto p = oracle::random_pauli(n, rng);
    const auto sigma = oracle::random_bits(n, rng);
    const auto once = apply_string(p, sigma);
    const auto twice = apply_string(p, once.sigma);
    EXPECT_EQ(twice.sigma, sigma);
    EXPECT_EQ(once.phase * twice.phase, cd(1, 0));
    EXPECT_DOUBLE_EQ(std::norm(once.phase), 1.0);
    for (int q = 0; q < n; ++q) {
      const bool flips = p[q] == PauliOp::X || p[q] == PauliOp::Y;
      EXPECT_EQ(once.sigma[q] != sigma[q], flips);
    }
  }
}

TEST(OutcomeEigenvalue, Examples) {
  EXPECT_EQ(outcome_eigenvalue(PauliString::parse("ZZ"), Bits{0, 0}), 1.0);
  EXPECT_EQ(outcome_eigenvalue(PauliString::parse("ZZ"), Bits{0, 1}), -1.0);
  EXPECT_EQ(outcome_eigenvalue(PauliString::parse("ZI"), Bits{0, 1}), 1.0);
  EXPECT_THROW(outcome_eigenvalue(PauliString::parse("ZI"), Bits{0}), DimensionError);
}

TEST(OutcomeEigenvalue, IsEigenvalueOfRotatedOutcome) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const auto p = oracle::random_pauli(n, rng);
    const auto bits = oracle::random_bits(n, rng);
    const double ev = outcome_eigenvalue(p, bits);
    EXPECT_TRUE(ev == 1.0 || ev == -1.0);
    const auto v = oracle::outcome_vector(p.measurement_basis(), bits);
    const Eigen::VectorXcd pv = oracle::pauli_kron(p) * v;
    EXPECT_LT((pv - ev * v).norm(), 1e-12);
  }
}

TEST(ConnectedElements, DiagonalTerm) {
  const auto obs = Observable::parse("1.0 ZZ");
  const auto row = obs.connected_elements(Bits{0, 1});
  ASSERT_EQ(row.size(), 1u);
  EXPECT_EQ(row[0].sigma, (Bits{0, 1}));
  EXPECT_EQ(row[0].amplitude, cd(-1, 0));
}

TEST(ConnectedElements, TwoSingleFlips) {
  const auto obs = Observable::parse("1.0 XI\n1.0 IX");
  const auto row = row_map(obs, Bits{0, 0});
  ASSERT_EQ(row.size(), 2u);
  EXPECT_EQ(row.at(oracle::index_of(Bits{1, 0})), cd(1, 0));
  EXPECT_EQ(row.at(oracle::index_of(Bits{0, 1})), cd(1, 0));
}

TEST(ConnectedElements, CancellingTermsDropped) {
  // XX + YY annihilates |00>: <11|XX|00> = 1, <11|YY|00> = -1.
  const auto obs = Observable::parse("1 XX\n1 YY");
  EXPECT_TRUE(obs.connected_elements(Bits{0, 0}).empty());
  EXPECT_EQ(obs.connected_elements(Bits{0, 1}).size(), 1u);
}

TEST(ConnectedElements, MatchesDenseRows) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 4;
    const int k = 1 + static_cast<int>(rng() % 20);
    const auto obs = oracle::random_observable(n, k, rng);
    const auto h = oracle::observable_kron(obs);
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << n); ++s) {
      const auto row = row_map(obs, oracle::bits_of(s, n));
      for (std::uint64_t t = 0; t < (std::uint64_t(1) << n); ++t) {
        const cd expect = h(s, t);
        const auto it = row.find(t);
        const cd got = it == row.end() ? cd(0) : it->second;
        EXPECT_LT(std::abs(got - expect), 1e-12) << "n=" << n << " row " << s << " col " << t;
      }
    }
  }
}

TEST(ObservableConstruct, Validation) {
  EXPECT_THROW(Observable(2, {}), std::invalid_argument);
  EXPECT_THROW(Observable(2, {{1.0, PauliString::parse("Z")}}), DimensionError);
  EXPECT_THROW(Observable(1, {{std::nan(""), PauliString::parse("Z")}}), std::invalid_argument);
  const Observable obs(2, {{1.0, PauliString::parse("ZI")}, {-2.0, PauliString::parse("XX")}});
  EXPECT_DOUBLE_EQ(obs.abs_coefficient_sum(), 3.0);
  EXPECT_THROW(obs.connected_elements(Bits{0}), DimensionError);
}
