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


#pragma once

#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "noisy_choice/error.hpp"

namespace noisy_choice {

// A vote profile x in {-1,1}^n. Bit i (0-based) set means voter i+1 voted +1.
// Arbitrary n is supported so that sampling paths can go beyond the
// exhaustive cap; bits past n-1 are always zero.
class BitVector {
 public:
  BitVector() = default;

  explicit BitVector(int n) : n_(n), words_(word_count(n), 0) {
    if (n < 0) throw InvalidArgument("BitVector: negative length");
  }

  // Packs the low n bits of `index`; requires n <= 64.
  static BitVector from_index(int n, std::uint64_t index) {
    if (n > 64) throw InvalidArgument("BitVector::from_index: n > 64");
    BitVector v(n);
    if (n > 0) v.words_[0] = index & low_mask(n);
    return v;
  }

  // Builds from explicit +/-1 entries; x[0] is voter 1.
  static BitVector from_signs(std::span<const int> signs) {
    BitVector v(static_cast<int>(signs.size()));
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (signs[i] == 1) {
        v.set(static_cast<int>(i), true);
      } else if (signs[i] != -1) {
        throw InvalidArgument("BitVector::from_signs: entries must be +1 or -1");
      }
    }
    return v;
  }

  int size() const { return n_; }

  bool bit(int i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

  // x_{i+1} as +1 / -1.
  int sign(int i) const { return bit(i) ? 1 : -1; }

  void set(int i, bool value) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }

  void flip(int i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  int popcount() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  // sum(x) = 2 * popcount - n.
  int sum() const { return 2 * popcount() - n_; }

  // Table index of this profile; requires n <= 64.
  std::uint64_t index() const {
    if (n_ > 64) throw InvalidArgument("BitVector::index: n > 64");
    return n_ == 0 ? 0 : words_[0];
  }

  std::span<std::uint64_t> words() { return words_; }
  std::span<const std::uint64_t> words() const { return words_; }

  // Clears any bits past n-1 after word-level writes.
  void normalize() {
    if (n_ % 64 != 0 && !words_.empty()) words_.back() &= low_mask(n_ % 64);
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

  static std::size_t word_count(int n) {
    return n <= 0 ? 0 : static_cast<std::size_t>((n + 63) / 64);
  }

  static std::uint64_t low_mask(int bits) {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// A social choice function f: {-1,1}^n -> {-1,1}, stored as 2^n packed bits
// (bit set means f(x) = +1) indexed by BitVector::index().
class TruthTable {
 public:
  TruthTable() = default;

  // All outputs -1.
  explicit TruthTable(int n) : n_(n) {
    if (n < 0) throw InvalidArgument("TruthTable: negative n");
    if (n > 30) throw CapExceeded("TruthTable", n, 30);
    bits_.assign(words_for(n), 0);
  }

  template <std::predicate<std::uint64_t> Rule>
  static TruthTable from_rule(int n, Rule&& rule) {
    TruthTable t(n);
    for (std::uint64_t x = 0; x < t.size(); ++x) {
      if (rule(x)) t.set(x, true);
    }
    return t;
  }

  int n() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

  bool positive(std::uint64_t x) const { return (bits_[x >> 6] >> (x & 63)) & 1U; }
  int sign(std::uint64_t x) const { return positive(x) ? 1 : -1; }
  double value(std::uint64_t x) const { return positive(x) ? 1.0 : -1.0; }

  int operator()(const BitVector& x) const {
    check_profile(x);
    return sign(x.index());
  }

  void set(std::uint64_t x, bool positive_output) {
    const std::uint64_t m = std::uint64_t{1} << (x & 63);
    if (positive_output) {
      bits_[x >> 6] |= m;
    } else {
      bits_[x >> 6] &= ~m;
    }
  }

  // Number of inputs mapped to +1.
  std::uint64_t count_positive() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c;
  }

  std::span<const std::uint64_t> packed() const { return bits_; }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  static std::size_t words_for(int n) {
    return n >= 6 ? (std::size_t{1} << (n - 6)) : 1;
  }

  void check_profile(const BitVector& x) const {
    if (x.size() != n_) {
      throw DimensionMismatch("profile has n=" + std::to_string(x.size()) +
                              ", function has n=" + std::to_string(n_));
    }
  }

  int n_ = 0;
  std::vector<std::uint64_t> bits_{0};
};

// A real-valued function on {-1,1}^n; also carries noise-operator outputs.
class RealFunctionTable {
 public:
  RealFunctionTable() = default;

  RealFunctionTable(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
    if (n < 0) throw InvalidArgument("RealFunctionTable: negative n");
    if (values_.size() != (std::size_t{1} << n)) {
      throw DimensionMismatch("RealFunctionTable: expected 2^n values");
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw InvalidArgument("RealFunctionTable: non-finite entry");
    }
  }

  explicit RealFunctionTable(const TruthTable& f) : n_(f.n()), values_(f.size()) {
    for (std::uint64_t x = 0; x < f.size(); ++x) values_[x] = f.value(x);
  }

  int n() const { return n_; }
  std::uint64_t size() const { return values_.size(); }
  double value(std::uint64_t x) const { return values_[x]; }
  double operator()(const BitVector& x) const {
    if (x.size() != n_) throw DimensionMismatch("RealFunctionTable: profile length");
    return values_[x.index()];
  }

  std::span<const double> values() const { return values_; }

 private:
  int n_ = 0;
  std::vector<double> values_{0.0};
};

// Anything that can be read as a table of 2^n reals.
template <typename F>
concept FunctionTable = requires(const F& f, std::uint64_t x) {
  { f.n() } -> std::convertible_to<int>;
  { f.value(x) } -> std::convertible_to<double>;
};

template <FunctionTable F>
std::vector<double> to_values(const F& f) {
  std::vector<double> out(std::size_t{1} << f.n());
  for (std::uint64_t x = 0; x < out.size(); ++x) out[x] = f.value(x);
  return out;
}

// Rounds each entry to its sign; throws if any entry is not within `tol` of
// +/-1.
inline TruthTable round_to_truth_table(const RealFunctionTable& g, double tol = 1e-9) {
  TruthTable t(g.n());
  for (std::uint64_t x = 0; x < g.size(); ++x) {
    const double v = g.value(x);
    if (std::abs(std::abs(v) - 1.0) > tol) {
      throw InvalidArgument("round_to_truth_table: entry is not +/-1");
    }
    t.set(x, v > 0);
  }
  return t;
}

}  // namespace noisy_choice
