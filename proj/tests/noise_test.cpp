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


#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "noisy_choice/corpus.hpp"
#include "noisy_choice/families.hpp"
#include "noisy_choice/noise.hpp"
#include "oracles.hpp"

namespace noisy_choice {
namespace {

constexpr double kTol = 1e-9;

TEST(RhoParamTest, KeepsRhoAsGiven) {
  for (int k = 0; k <= 10; ++k) EXPECT_EQ(RhoParam::from_rho(k / 10.0).rho(), k / 10.0);
  EXPECT_EQ(RhoParam::from_flip_probability(0.25).rho(), 0.5);
  EXPECT_THROW(RhoParam::from_flip_probability(0.6), InvalidArgument);
}

TEST(RhoParamTest, Validation) {
  EXPECT_THROW(RhoParam::from_rho(-0.1), InvalidArgument);
  EXPECT_THROW(RhoParam::from_rho(1.5), InvalidArgument);
  EXPECT_THROW(RhoParam::from_rho(std::nan("")), InvalidArgument);
  EXPECT_THROW(RhoParam::from_epsilon(-1.0), InvalidArgument);
  const RhoParam r = RhoParam::from_rho(0.6);
  EXPECT_DOUBLE_EQ(r.flip_prob(), 0.2);
  EXPECT_DOUBLE_EQ(r.keep_prob(), 0.8);
  EXPECT_DOUBLE_EQ(r.flip_prob() + r.keep_prob(), 1.0);
}

TEST(EpsilonTest, KnownValues) {
  EXPECT_EQ(epsilon_of_rho(RhoParam::from_rho(0.0)), 0.0);
  EXPECT_NEAR(epsilon_of_rho(RhoParam::from_rho(0.5)), 1.0986122886681098, 1e-12);
  EXPECT_NEAR(epsilon_of_rho(RhoParam::from_rho(0.9)), 2.9444389791664403, 1e-12);
  EXPECT_THROW(epsilon_of_rho(RhoParam::from_rho(1.0)), InvalidArgument);
  EXPECT_TRUE(std::isinf(RhoParam::from_rho(1.0).epsilon()));
}

TEST(EpsilonTest, InverseKnownValues) {
  EXPECT_EQ(rho_of_epsilon(0.0).rho(), 0.0);
  EXPECT_NEAR(rho_of_epsilon(std::log(3.0)).rho(), 0.5, 1e-12);
  EXPECT_NEAR(rho_of_epsilon(std::log(19.0)).rho(), 0.9, 1e-12);
  EXPECT_EQ(rho_of_epsilon(INFINITY).rho(), 1.0);
  EXPECT_NEAR(rho_of_epsilon(50.0).rho(), 1.0, 1e-15);
}

TEST(EpsilonTest, RoundTripOverRange) {
  for (int k = 0; k <= 2000; ++k) {
    const double eps = 0.01 * k;
    const double back = epsilon_of_rho(rho_of_epsilon(eps));
    EXPECT_NEAR(back, eps, 1e-12) << eps;
  }
}

TEST(EpsilonTest, MatchesDefinitionFromRho) {
  for (double rho : {0.1, 0.3, 0.7, 0.95}) {
    EXPECT_NEAR(epsilon_of_rho(RhoParam::from_rho(rho)), std::log((1 + rho) / (1 - rho)), 1e-12);
  }
}

TEST(SampleCorrelatedTest, RhoOneIsIdentity) {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    BitVector x(70);
    for (auto& w : x.words()) w = rng();
    x.normalize();
    EXPECT_EQ(sample_correlated(x, RhoParam::from_rho(1.0), rng()), x);
  }
}

TEST(SampleCorrelatedTest, DeterministicGivenSeed) {
  const BitVector x = BitVector::from_index(40, 0x123456789ULL);
  const RhoParam r = RhoParam::from_rho(0.3);
  EXPECT_EQ(sample_correlated(x, r, 99), sample_correlated(x, r, 99));
  EXPECT_NE(sample_correlated(x, r, 99), sample_correlated(x, r, 100));
}

// Agreement rate over 10^6 coordinate draws, compared at the 4 sigma level.
void expect_agreement(double rho, double expected) {
  const int n = 100;
  const int draws = 10000;
  BitVector x(n);
  x.words()[0] = 0xdeadbeefcafef00dULL;
  x.words()[1] = 0x12345ULL;
  SplitMix64 rng(2024);
  BitVector y;
  long agree = 0;
  for (int d = 0; d < draws; ++d) {
    sample_correlated_into(x, RhoParam::from_rho(rho), rng, y);
    agree += n - static_cast<long>(std::popcount(x.words()[0] ^ y.words()[0]) +
                                   std::popcount(x.words()[1] ^ y.words()[1]));
  }
  const double total = static_cast<double>(n) * draws;
  const double p = static_cast<double>(agree) / total;
  EXPECT_NEAR(p, expected, 0.002);
  EXPECT_NEAR(p, expected, 4.0 * std::sqrt(expected * (1 - expected) / total) + 1e-12);
}

TEST(SampleCorrelatedTest, AgreementRates) {
  expect_agreement(0.0, 0.5);
  expect_agreement(0.6, 0.8);
}

TEST(ApplyMechanismTest, RhoOneReleasesTrueOutcome) {
  const TruthTable maj = make_family(family::Majority{}, 5);
  for (std::uint64_t x = 0; x < 32; ++x) {
    const auto s = apply_mechanism(maj, BitVector::from_index(5, x), RhoParam::from_rho(1.0), x);
    EXPECT_EQ(s.released, maj.value(x));
    EXPECT_EQ(s.output_vote, s.input);
  }
}

TEST(ApplyMechanismTest, ConstantIgnoresNoise) {
  const TruthTable c = make_family(family::Constant{false}, 4);
  for (int seed = 0; seed < 100; ++seed) {
    EXPECT_EQ(apply_mechanism(c, BitVector::from_index(4, 5), RhoParam::from_rho(0.0), seed).released,
              -1.0);
  }
}

TEST(ApplyMechanismTest, DictatorAgreesAtKeepRate) {
  const TruthTable d = make_family(family::Dictator{2}, 3);
  const RhoParam r = RhoParam::from_rho(0.4);
  const int draws = 200000;
  int agree = 0;
  const BitVector x = BitVector::from_index(3, 0b010);
  for (int seed = 0; seed < draws; ++seed) {
    agree += apply_mechanism(d, x, r, static_cast<std::uint64_t>(seed)).released == x.sign(1);
  }
  const double p = static_cast<double>(agree) / draws;
  EXPECT_NEAR(p, 0.7, 4.0 * std::sqrt(0.7 * 0.3 / draws));
}

TEST(ApplyMechanismTest, DimensionMismatch) {
  EXPECT_THROW(apply_mechanism(make_family(family::And{}, 3), BitVector::from_index(4, 0),
                               RhoParam::from_rho(0.5), 0),
               DimensionMismatch);
}

TEST(NoiseOperatorTest, MajorityOfThreeAtAllPlus) {
  const TruthTable maj = make_family(family::Majority{}, 3);
  const RealFunctionTable t = noise_operator(maj, RhoParam::from_rho(0.5));
  EXPECT_NEAR(oracle::noise_operator_at(maj, 3, 0b111, 0.5), 0.6875, kTol);
  EXPECT_NEAR(t.value(0b111), 0.6875, kTol);
  EXPECT_NEAR(t.value(0b000), -0.6875, kTol);
}

TEST(NoiseOperatorTest, Endpoints) {
  SplitMix64 rng(8);
  for (int n = 1; n <= 8; ++n) {
    const TruthTable f = random_table(n, rng);
    const RealFunctionTable one = noise_operator(f, RhoParam::from_rho(1.0));
    const RealFunctionTable zero = noise_operator(f, RhoParam::from_rho(0.0));
    const double mean = wht(f)[0];
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      EXPECT_NEAR(one.value(x), f.value(x), kTol);
      EXPECT_NEAR(zero.value(x), mean, kTol);
    }
  }
}

TEST(NoiseOperatorTest, AgreesWithDirectDefinition) {
  SplitMix64 rng(13);
  for (int n : {1, 2, 3, 5, 8, 10}) {
    const TruthTable f = random_table(n, rng);
    for (double rho : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const RealFunctionTable spectral = noise_operator(f, RhoParam::from_rho(rho));
      const RealFunctionTable coords = noise_operator_by_coordinates(f, RhoParam::from_rho(rho));
      // The O(4^n) oracle is sampled on a stride for n = 10.
      const std::uint64_t stride = n >= 10 ? 37 : 1;
      for (std::uint64_t x = 0; x < f.size(); x += stride) {
        const double direct = oracle::noise_operator_at(f, n, x, rho);
        ASSERT_NEAR(spectral.value(x), direct, kTol) << n << " " << rho << " " << x;
        ASSERT_NEAR(coords.value(x), direct, kTol) << n << " " << rho << " " << x;
      }
    }
  }
}

TEST(NoiseOperatorTest, Semigroup) {
  SplitMix64 rng(17);
  const double grid[] = {0.0, 0.2, 0.5, 0.9, 1.0};
  for (int n : {2, 4, 7}) {
    const TruthTable f = random_table(n, rng);
    for (double rho : grid) {
      for (double sigma : grid) {
        const RealFunctionTable lhs =
            noise_operator(noise_operator(f, RhoParam::from_rho(sigma)), RhoParam::from_rho(rho));
        const RealFunctionTable rhs = noise_operator(f, RhoParam::from_rho(rho * sigma));
        for (std::uint64_t x = 0; x < f.size(); ++x) ASSERT_NEAR(lhs.value(x), rhs.value(x), kTol);
      }
    }
  }
}

TEST(NoiseOperatorTest, MonteCarloConsistency) {
  const TruthTable maj = make_family(family::Majority{}, 5);
  const RhoParam r = RhoParam::from_rho(0.6);
  const BitVector x = BitVector::from_index(5, 0b00111);
  const double exact = noise_operator(maj, r).value(x.index());
  SplitMix64 rng(31337);
  BitVector y;
  const int draws = 1000000;
  long plus = 0;
  for (int d = 0; d < draws; ++d) {
    sample_correlated_into(x, r, rng, y);
    plus += maj.positive(y.index());
  }
  const double p = static_cast<double>(plus) / draws;
  const double q = (1 + exact) / 2;
  EXPECT_NEAR(p, q, 4.0 * std::sqrt(q * (1 - q) / draws));
}

TEST(NoiseOperatorTest, CapExceeded) {
  struct Huge {
    int n() const { return kDefaultExhaustiveCap + 1; }
    double value(std::uint64_t) const { return 1.0; }
  };
  EXPECT_THROW(noise_operator(Huge{}, RhoParam::from_rho(0.5)), CapExceeded);
}

}  // namespace
}  // namespace noisy_choice
