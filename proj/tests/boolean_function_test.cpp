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


#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "noisy_choice/boolean_function.hpp"
#include "noisy_choice/corpus.hpp"
#include "noisy_choice/families.hpp"
#include "noisy_choice/fourier.hpp"
#include "noisy_choice/table_format.hpp"
#include "oracles.hpp"

namespace noisy_choice {
namespace {

constexpr double kTol = 1e-9;

TEST(BitVectorTest, SumMatchesPopcount) {
  SplitMix64 rng(7);
  for (int n : {1, 5, 63, 64, 65, 130}) {
    BitVector x(n);
    for (auto& w : x.words()) w = rng();
    x.normalize();
    int plus = 0;
    for (int i = 0; i < n; ++i) plus += x.bit(i);
    EXPECT_EQ(x.popcount(), plus);
    EXPECT_EQ(x.sum(), 2 * plus - n);
    // Nothing survives past bit n-1.
    if (n % 64 != 0) {
      EXPECT_EQ(x.words().back() >> (n % 64), 0U);
    }
  }
}

TEST(BitVectorTest, FromSignsRejectsZero) {
  const std::vector<int> good = {1, -1, 1};
  EXPECT_EQ(BitVector::from_signs(good).index(), 0b101U);
  const std::vector<int> bad = {1, 0};
  EXPECT_THROW(BitVector::from_signs(bad), InvalidArgument);
}

TEST(FamilyTest, MajorityOfThree) {
  const TruthTable maj = make_family(family::Majority{}, 3);
  const std::vector<int> x = {1, 1, -1};
  EXPECT_EQ(maj(BitVector::from_signs(x)), 1);
  const std::vector<int> y = {-1, 1, -1};
  EXPECT_EQ(maj(BitVector::from_signs(y)), -1);
}

TEST(FamilyTest, AndOfTwoIsMinusOneUnlessUnanimous) {
  const TruthTable f = make_family(family::And{}, 2);
  const std::vector<int> x = {1, -1};
  EXPECT_EQ(f(BitVector::from_signs(x)), -1);
  const std::vector<int> all = {1, 1};
  EXPECT_EQ(f(BitVector::from_signs(all)), 1);
}

TEST(FamilyTest, OrIsMinusOneOnlyWhenUnanimousMinus) {
  const TruthTable f = make_family(family::Or{}, 4);
  EXPECT_EQ(f.count_positive(), 15U);
  EXPECT_FALSE(f.positive(0));
}

TEST(FamilyTest, ThresholdZeroIsMajorityForOddN) {
  for (int n = 1; n <= 13; n += 2) {
    EXPECT_EQ(make_family(family::Majority{}, n), make_family(family::Threshold{0}, n)) << n;
  }
}

TEST(FamilyTest, ThresholdTiesGoToMinusOne) {
  // n = 2, x = (1, -1): sum 0 is not > 0.
  const TruthTable f = make_family(family::Threshold{0}, 2);
  EXPECT_FALSE(f.positive(0b01));
  EXPECT_TRUE(f.positive(0b11));
  const TruthTable g = make_family(family::Threshold{-1}, 2);
  EXPECT_TRUE(g.positive(0b01));
}

TEST(FamilyTest, RejectsEvenMajorityAndBadDictator) {
  EXPECT_THROW(make_family(family::Majority{}, 4), InvalidArgument);
  EXPECT_THROW(make_family(family::Dictator{0}, 3), InvalidArgument);
  EXPECT_THROW(make_family(family::Dictator{4}, 3), InvalidArgument);
  EXPECT_THROW(make_family(family::And{}, 0), InvalidArgument);
}

TEST(FamilyTest, RespectsExhaustiveCap) {
  EXPECT_THROW(make_family(family::And{}, kDefaultExhaustiveCap + 1), CapExceeded);
}

TEST(WhtTest, DictatorIsItsOwnCharacter) {
  const FourierSpectrum s = wht(make_family(family::Dictator{1}, 3));
  for (std::uint64_t m = 0; m < 8; ++m) EXPECT_NEAR(s[m], m == 0b001 ? 1.0 : 0.0, kTol) << m;
}

TEST(WhtTest, MajorityOfThreeSpectrum) {
  const TruthTable maj = make_family(family::Majority{}, 3);
  const FourierSpectrum s = wht(maj);
  for (std::uint64_t m = 0; m < 8; ++m) {
    // Brute-force sum over the 8 inputs.
    const double expected = oracle::fourier_coefficient(maj, 3, m);
    EXPECT_NEAR(s[m], expected, kTol) << m;
  }
  // Frozen from the oracle above.
  EXPECT_NEAR(s[0b001], 0.5, kTol);
  EXPECT_NEAR(s[0b010], 0.5, kTol);
  EXPECT_NEAR(s[0b100], 0.5, kTol);
  EXPECT_NEAR(s[0b111], -0.5, kTol);
  EXPECT_NEAR(s[0b000], 0.0, kTol);
  EXPECT_NEAR(s[0b011], 0.0, kTol);
}

TEST(WhtTest, ConstantHasOnlyEmptySetWeight) {
  const FourierSpectrum s = wht(make_family(family::Constant{true}, 4));
  EXPECT_NEAR(s[0], 1.0, kTol);
  for (std::uint64_t m = 1; m < 16; ++m) EXPECT_NEAR(s[m], 0.0, kTol);
}

TEST(WhtTest, MatchesBruteForceOnRandomTables) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 6;
    const TruthTable f = random_table(n, rng);
    const FourierSpectrum s = wht(f);
    for (std::uint64_t m = 0; m < f.size(); ++m) {
      EXPECT_NEAR(s[m], oracle::fourier_coefficient(f, n, m), kTol);
    }
  }
}

TEST(WhtTest, ParsevalAndRoundTripOnCorpus) {
  for (const auto& e : build_corpus({.max_n = 10, .random_count = 50})) {
    const FourierSpectrum s = wht(e.table);
    EXPECT_NEAR(s.squared_norm(), 1.0, kTol) << e.name;
    const RealFunctionTable back = inverse_wht(s);
    for (std::uint64_t x = 0; x < e.table.size(); ++x) {
      ASSERT_NEAR(back.value(x), e.table.value(x), kTol) << e.name;
    }
    EXPECT_EQ(round_to_truth_table(back), e.table) << e.name;
  }
}

TEST(WhtTest, ParsevalOnRealFunction) {
  const RealFunctionTable g(2, {0.5, -2.0, 3.0, 0.25});
  const FourierSpectrum s = wht(g);
  EXPECT_NEAR(s.squared_norm(), inner_product(g, g), kTol);
}

TEST(WhtTest, CapExceeded) {
  // The spectrum itself would need 2^25 doubles; the check happens first.
  const RealFunctionTable small(1, {1.0, -1.0});
  EXPECT_NO_THROW(wht(small));
  struct Huge {
    int n() const { return kDefaultExhaustiveCap + 1; }
    double value(std::uint64_t) const { return 1.0; }
  };
  EXPECT_THROW(wht(Huge{}), CapExceeded);
}

TEST(InnerProductTest, Examples) {
  const TruthTable maj = make_family(family::Majority{}, 3);
  const TruthTable dict = make_family(family::Dictator{1}, 3);
  EXPECT_NEAR(inner_product(maj, maj), 1.0, kTol);
  EXPECT_NEAR(inner_product(maj, dict), 0.5, kTol);
  EXPECT_NEAR(inner_product(maj, dict), spectral_inner_product(wht(maj), wht(dict)), kTol);
  const TruthTable one = make_family(family::Constant{true}, 3);
  SplitMix64 rng(3);
  const TruthTable f = random_table(3, rng);
  EXPECT_NEAR(inner_product(f, one), wht(f)[0], kTol);
}

TEST(InnerProductTest, PlancherelOnRandomPairs) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 8;
    const TruthTable f = random_table(n, rng);
    const TruthTable g = random_table(n, rng);
    EXPECT_NEAR(inner_product(f, g), spectral_inner_product(wht(f), wht(g)), kTol);
  }
}

TEST(InnerProductTest, DimensionMismatch) {
  EXPECT_THROW(inner_product(make_family(family::And{}, 2), make_family(family::And{}, 3)),
               DimensionMismatch);
}

TEST(CharacterTest, Orthonormal) {
  SplitMix64 rng(19);
  const int n = 6;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t s = rng() % 64;
    const std::uint64_t t = trial % 4 == 0 ? s : rng() % 64;
    EXPECT_NEAR(inner_product(character(n, s), character(n, t)), s == t ? 1.0 : 0.0, kTol);
  }
}

TEST(MonotoneTest, Examples) {
  EXPECT_TRUE(is_monotone(make_family(family::Majority{}, 3)));
  EXPECT_FALSE(is_monotone(make_family(family::Parity{}, 2)));
  for (int n = 1; n <= 8; ++n) {
    EXPECT_TRUE(is_monotone(make_family(family::And{}, n)));
    EXPECT_TRUE(is_monotone(make_family(family::Or{}, n)));
  }
  // Anti-dictator: f(x) = -x_1.
  const TruthTable anti = TruthTable::from_rule(2, [](std::uint64_t x) { return (x & 1U) == 0; });
  EXPECT_FALSE(is_monotone(anti));
}

TEST(TableFormatTest, KnownEncodings) {
  EXPECT_EQ(to_bf_string(make_family(family::Majority{}, 3)), "bf:v1:n=3:e8");
  EXPECT_EQ(to_bf_string(make_family(family::Dictator{1}, 3)), "bf:v1:n=3:aa");
  EXPECT_EQ(to_bf_string(make_family(family::And{}, 1)), "bf:v1:n=1:2");
  EXPECT_EQ(to_bf_string(make_family(family::Or{}, 2)), "bf:v1:n=2:e");
}

TEST(TableFormatTest, RoundTripsRandomTables) {
  SplitMix64 rng(23);
  for (int n = 1; n <= 12; ++n) {
    const TruthTable f = random_table(n, rng);
    EXPECT_EQ(parse_bf_string(to_bf_string(f)), f) << n;
  }
  EXPECT_EQ(parse_bf_string("bf:v1:n=3:E8"), make_family(family::Majority{}, 3));
}

TEST(TableFormatTest, ParseErrorsReportPosition) {
  auto position_of = [](const char* text) -> std::size_t {
    try {
      parse_bf_string(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    return static_cast<std::size_t>(-1);
  };
  EXPECT_EQ(position_of("bf:v2:n=3:e8"), 4U);
  EXPECT_EQ(position_of("bf:v1:n=x:e8"), 8U);
  EXPECT_EQ(position_of("bf:v1:n=3;e8"), 9U);
  EXPECT_EQ(position_of("bf:v1:n=3:eg"), 11U);
  EXPECT_EQ(position_of("bf:v1:n=3:e"), 11U);
  EXPECT_EQ(position_of("bf:v1:n=1:4"), 10U);  // bit 2 does not exist for n = 1
}

TEST(TableFormatTest, SpectrumCsv) {
  const std::string csv = spectrum_to_csv(wht(make_family(family::Dictator{2}, 2)));
  EXPECT_EQ(csv, "mask,coefficient\n0,0\n1,0\n2,1\n3,0\n");
}

}  // namespace
}  // namespace noisy_choice
