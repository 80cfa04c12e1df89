// Copyright 2026 The Noisy Choice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "noisy_choice/corpus.hpp"
#include "noisy_choice/families.hpp"
#include "noisy_choice/privacy_audit.hpp"
#include "oracles.hpp"

namespace noisy_choice {
namespace {

constexpr double kTol = 1e-9;

double total(const std::map<int, double>& dist) {
  double s = 0.0;
  for (const auto& [r, p] : dist) s += p;
  return s;
}

TEST(OutputDistributionTest, Examples) {
  const TruthTable maj = make_family(family::Majority{}, 3);
  const auto point = output_distribution(maj, BitVector::from_index(3, 0b011), RhoParam::from_rho(1.0));
  EXPECT_EQ(point.at(1), 1.0);
  EXPECT_EQ(point.at(-1), 0.0);

  const TruthTable and3 = make_family(family::And{}, 3);
  for (std::uint64_t x = 0; x < 8; ++x) {
    const auto uniform = output_distribution(and3, BitVector::from_index(3, x), RhoParam::from_rho(0.0));
    EXPECT_NEAR(uniform.at(1), 1.0 / 8, kTol);
    EXPECT_NEAR(uniform.at(-1), 7.0 / 8, kTol);
  }

  const TruthTable dict = make_family(family::Dictator{2}, 4);
  const auto d = output_distribution(dict, BitVector::from_index(4, 0b0010), RhoParam::from_rho(0.5));
  EXPECT_NEAR(d.at(1), 0.75, kTol);
}

TEST(OutputDistributionTest, ConstantHasSingleOutput) {
  const auto dist = output_distribution(make_family(family::Constant{false}, 3), BitVector::from_index(3, 1),
                                        RhoParam::from_rho(0.5));
  ASSERT_EQ(dist.size(), 1U);
  EXPECT_EQ(dist.at(-1), 1.0);
}

TEST(OutputDistributionTest, MatchesNoiseOperatorAndNormalizes) {
  SplitMix64 rng(61);
  for (int n = 1; n <= 8; ++n) {
    const TruthTable f = random_table(n, rng);
    for (double rho : {0.2, 0.7}) {
      const RhoParam r = RhoParam::from_rho(rho);
      for (std::uint64_t x = 0; x < f.size(); ++x) {
        const auto dist = output_distribution(f, BitVector::from_index(n, x), r);
        EXPECT_NEAR(total(dist), 1.0, kTol);
        if (dist.contains(1)) {
          // P[+1 | x] = (1 + T_rho f(x)) / 2
          EXPECT_NEAR(dist.at(1), (1 + oracle::noise_operator_at(f, n, x, rho)) / 2, kTol);
        }
      }
    }
  }
}

TEST(OutputDistributionTest, SymmetricFunctionsIgnoreVoterLabels) {
  const RhoParam r = RhoParam::from_rho(0.35);
  const int n = 7;
  for (const TruthTable& f : {make_family(family::Majority{}, n), make_family(family::And{}, n),
                              make_family(family::Or{}, n)}) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    SplitMix64 rng(67);
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint64_t x = rng() % f.size();
      std::shuffle(perm.begin(), perm.end(), rng);
      std::uint64_t px = 0;
      for (int i = 0; i < n; ++i) px |= ((x >> i) & 1U) << perm[i];
      const auto a = output_distribution(f, BitVector::from_index(n, x), r);
      const auto b = output_distribution(f, BitVector::from_index(n, px), r);
      for (const auto& [out, p] : a) EXPECT_NEAR(p, b.at(out), kTol);
    }
  }
}

TEST(OutputDistributionTest, Errors) {
  EXPECT_THROW(output_distribution(make_family(family::And{}, 3), BitVector::from_index(4, 0),
                                   RhoParam::from_rho(0.5)),
               DimensionMismatch);
  EXPECT_THROW(output_distribution(make_family(family::And{}, kAuditMaxN + 1),
                                   BitVector::from_index(kAuditMaxN + 1, 0), RhoParam::from_rho(0.5)),
               CapExceeded);
}

TEST(AuditTest, DictatorIsTight) {
  const AuditReport r = audit(make_family(family::Dictator{2}, 3), RhoParam::from_rho(0.5));
  EXPECT_NEAR(r.max_log_ratio, std::log(3.0), 1e-12);
  EXPECT_NEAR(r.epsilon_bound, std::log(3.0), 1e-12);
  EXPECT_TRUE(r.tight);
  EXPECT_EQ(r.attained_at.neighbor_index, 2);
}

TEST(AuditTest, ConstantLeaksNothing) {
  const AuditReport r = audit(make_family(family::Constant{true}, 4), RhoParam::from_rho(0.5));
  EXPECT_EQ(r.max_log_ratio, 0.0);
  EXPECT_FALSE(r.tight);
}

TEST(AuditTest, MajorityIsStrictlyInside) {
  const AuditReport r = audit(make_family(family::Majority{}, 3), RhoParam::from_rho(0.5));
  EXPECT_LT(r.max_log_ratio, std::log(3.0) - 1e-3);
  EXPECT_GT(r.max_log_ratio, 0.0);
  EXPECT_FALSE(r.tight);
}

TEST(AuditTest, WitnessAttainsReportedRatio) {
  SplitMix64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 6;
    const TruthTable f = random_table(n, rng);
    const RhoParam rho = RhoParam::from_rho(0.6);
    const AuditReport r = audit(f, rho);
    if (r.max_log_ratio == 0.0) continue;
    BitVector neighbor = r.attained_at.x;
    neighbor.flip(r.attained_at.neighbor_index - 1);
    const double p = output_distribution(f, r.attained_at.x, rho).at(r.attained_at.output_value);
    const double q = output_distribution(f, neighbor, rho).at(r.attained_at.output_value);
    EXPECT_NEAR(std::log(p / q), r.max_log_ratio, 1e-9);
  }
}

TEST(AuditTest, DegenerateRho) {
  const TruthTable f = make_family(family::Dictator{1}, 2);
  EXPECT_THROW(audit(f, RhoParam::from_rho(0.0)), InvalidArgument);
  EXPECT_THROW(audit(f, RhoParam::from_rho(1.0)), InvalidArgument);
}

TEST(AuditTest, BoundHoldsAndTightnessMatchesOnCorpus) {
  for (const auto& e : build_corpus({.max_n = 12, .random_count = 100})) {
    const bool condition = tightness_condition(e.table);
    for (int k = 1; k <= 9; ++k) {
      const AuditReport r = audit(e.table, RhoParam::from_rho(k / 10.0));
      ASSERT_LE(r.max_log_ratio, r.epsilon_bound + kAuditSlack) << e.name << " k=" << k;
      if (k == 5) {
        EXPECT_EQ(r.tight, condition) << e.name;
      }
    }
  }
}

TEST(AuditTest, TinyProbabilitiesKeepPrecision) {
  // rho close to 1: flip^n is about 1e-70, far below double epsilon of 1.
  const RhoParam r = RhoParam::from_epsilon(20.0);
  const AuditReport rep = audit(make_family(family::Dictator{1}, 8), r);
  EXPECT_NEAR(rep.max_log_ratio, 20.0, 1e-9);
  EXPECT_TRUE(rep.tight);
  const AuditReport maj = audit(make_family(family::Majority{}, 9), r);
  EXPECT_LE(maj.max_log_ratio, 20.0 + kAuditSlack);
}

TEST(TightnessConditionTest, Examples) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_TRUE(tightness_condition(make_family(family::Dictator{n}, n)));
    EXPECT_TRUE(tightness_condition(make_family(family::And{}, n)));
    EXPECT_TRUE(tightness_condition(make_family(family::Or{}, n)));
  }
  EXPECT_FALSE(tightness_condition(make_family(family::Majority{}, 3)));
  EXPECT_FALSE(tightness_condition(make_family(family::Parity{}, 3)));
  EXPECT_FALSE(tightness_condition(make_family(family::Constant{true}, 3)));
  EXPECT_THROW(tightness_condition(make_family(family::And{}, kTightnessMaxN + 1)), CapExceeded);
}

TEST(ExactAuditTest, MatchesFloatAudit) {
  SplitMix64 rng(73);
  std::vector<TruthTable> tables = {make_family(family::Dictator{1}, 3), make_family(family::Majority{}, 5),
                                    make_family(family::Constant{true}, 2), make_family(family::And{}, 4)};
  for (int n = 1; n <= 6; ++n) tables.push_back(random_table(n, rng));
  for (const TruthTable& f : tables) {
    const ExactAuditReport exact = audit_exact(f, 1, 2);
    const AuditReport approx = audit(f, RhoParam::from_rho(0.5));
    EXPECT_EQ(exact.bound, Rational(3));
    EXPECT_TRUE(exact.within_bound);
    EXPECT_EQ(exact.tight, tightness_condition(f));
    EXPECT_EQ(exact.tight, approx.tight);
    EXPECT_NEAR(exact.max_log_ratio, approx.max_log_ratio, 1e-12);
  }
}

TEST(ExactAuditTest, DictatorRatioIsExactlyTheBound) {
  const ExactAuditReport r = audit_exact(make_family(family::Dictator{2}, 4), 9, 10);
  EXPECT_EQ(r.max_ratio, Rational(19));
  EXPECT_TRUE(r.tight);
}

TEST(ExactAuditTest, Errors) {
  const TruthTable f = make_family(family::And{}, 2);
  EXPECT_THROW(audit_exact(f, 0, 1), InvalidArgument);
  EXPECT_THROW(audit_exact(f, 1, 1), InvalidArgument);
  EXPECT_THROW(audit_exact(f, 1, 0), InvalidArgument);
  EXPECT_THROW(audit_exact(make_family(family::And{}, kExactAuditMaxN + 1), 1, 2), CapExceeded);
}

}  // namespace
}  // namespace noisy_choice
