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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "noisy_choice/error.hpp"
#include "noisy_choice/noise.hpp"

namespace noisy_choice {

// Memo storage for P[sum y > theta] keyed by (remaining voters L, vote sum s,
// threshold theta). Only thresholds with -L <= theta < L are ever stored; the
// others have probability exactly 0 or 1.
//
// Dense layout: level L holds (L+1) sums times 2L thresholds at a
// precomputed offset, so memory is about 2/3 * max_n^3 doubles.
class DenseMemoStorage {
 public:
  explicit DenseMemoStorage(int max_n) : max_n_(max_n), offsets_(max_n + 2, 0) {
    if (max_n < 0) throw InvalidArgument("DenseMemoStorage: negative size");
    for (int level = 0; level <= max_n; ++level) {
      offsets_[level + 1] = offsets_[level] + footprint_of_level(level);
    }
    values_.assign(offsets_.back(), kEmpty);
  }

  // Slots a table of this size would allocate.
  static std::size_t footprint(int max_n) {
    std::size_t total = 0;
    for (int level = 0; level <= max_n; ++level) total += footprint_of_level(level);
    return total;
  }

  bool covers(int level) const { return level <= max_n_; }

  std::optional<double> find(int level, int sum, int theta) const {
    const double v = values_[slot(level, sum, theta)];
    if (std::isnan(v)) return std::nullopt;
    return v;
  }

  void store(int level, int sum, int theta, double value) {
    double& cell = values_[slot(level, sum, theta)];
    if (std::isnan(cell)) ++stored_;
    cell = value;
  }

  std::size_t size() const { return stored_; }

 private:
  static constexpr double kEmpty = std::numeric_limits<double>::quiet_NaN();

  static std::size_t footprint_of_level(int level) {
    return static_cast<std::size_t>(level + 1) * static_cast<std::size_t>(2 * level);
  }

  std::size_t slot(int level, int sum, int theta) const {
    const std::size_t row = static_cast<std::size_t>((sum + level) / 2);
    return offsets_[level] + row * static_cast<std::size_t>(2 * level) +
           static_cast<std::size_t>(theta + level);
  }

  int max_n_;
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
  std::size_t stored_ = 0;
};

// Same contract as DenseMemoStorage, backed by a hash map; memory tracks the
// states actually visited.
class HashMemoStorage {
 public:
  explicit HashMemoStorage(int /*max_n*/ = 0) {}

  bool covers(int) const { return true; }

  std::optional<double> find(int level, int sum, int theta) const {
    const auto it = values_.find(key(level, sum, theta));
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  void store(int level, int sum, int theta, double value) {
    values_[key(level, sum, theta)] = value;
  }

  std::size_t size() const { return values_.size(); }

 private:
  static std::uint64_t key(int level, int sum, int theta) {
    constexpr std::int64_t kBias = std::int64_t{1} << 20;
    return (static_cast<std::uint64_t>(level) << 42) |
           (static_cast<std::uint64_t>(sum + kBias) << 21) |
           static_cast<std::uint64_t>(theta + kBias);
  }

  std::unordered_map<std::uint64_t, double> values_;
};

// Rows keyed by (level, sum), each a dense run of thresholds grown on
// demand. The peel order below touches few rows per level, so this keeps
// memory proportional to the visited states with far fewer hash lookups than
// HashMemoStorage.
class RowMemoStorage {
 public:
  explicit RowMemoStorage(int max_n = 0) : levels_(static_cast<std::size_t>(std::max(max_n, 0)) + 1) {}

  bool covers(int) const { return true; }

  std::optional<double> find(int level, int sum, int theta) const {
    if (static_cast<std::size_t>(level) >= levels_.size()) return std::nullopt;
    const auto& rows = levels_[level];
    const auto it = rows.find(sum);
    if (it == rows.end()) return std::nullopt;
    const Row& r = it->second;
    const long k = static_cast<long>(theta) - r.lo;
    if (k < 0 || k >= static_cast<long>(r.values.size()) || std::isnan(r.values[k])) return std::nullopt;
    return r.values[k];
  }

  void store(int level, int sum, int theta, double value) {
    if (static_cast<std::size_t>(level) >= levels_.size()) levels_.resize(level + 1);
    Row& r = levels_[level][sum];
    if (r.values.empty()) {
      r.lo = theta;
      r.values.assign(1, kEmpty);
    } else if (theta < r.lo) {
      // Grow geometrically so a row filled outward costs amortized O(1).
      const std::size_t grow = std::max<std::size_t>(r.lo - theta, r.values.size());
      r.values.insert(r.values.begin(), grow, kEmpty);
      r.lo -= static_cast<int>(grow);
    } else if (theta - r.lo >= static_cast<long>(r.values.size())) {
      const std::size_t need = static_cast<std::size_t>(theta - r.lo) + 1;
      r.values.resize(std::max(need, 2 * r.values.size()), kEmpty);
    }
    double& cell = r.values[theta - r.lo];
    if (std::isnan(cell)) ++stored_;
    cell = value;
  }

  std::size_t size() const { return stored_; }

 private:
  static constexpr double kEmpty = std::numeric_limits<double>::quiet_NaN();

  struct Row {
    int lo = 0;
    std::vector<double> values;
  };

  std::vector<std::unordered_map<int, Row>> levels_;
  std::size_t stored_ = 0;
};

template <typename S>
concept MemoStorage = requires(S s, const S cs, int a, double v) {
  { cs.find(a, a, a) } -> std::same_as<std::optional<double>>;
  { s.store(a, a, a, v) };
  { cs.size() } -> std::convertible_to<std::size_t>;
  { cs.covers(a) } -> std::convertible_to<bool>;
};

// Memoized evaluation of T_rho f_theta(x) in indicator form:
//
//   P_{y ~ N_rho x}[y_1 + ... + y_n > theta]
//
// which depends on x only through n and s = sum(x). Peeling off the last
// vote x_n gives
//
//   P(n, s, theta) = keep * P(n-1, s - x_n, theta - x_n)
//                  + flip * P(n-1, s - x_n, theta + x_n),
//
// with P(0, 0, theta) = 1(0 > theta). rho is fixed per table.
//
// Any vote of x may be peeled; the choice only affects how many states are
// shared between different starting sums. Peeling a +1 vote exactly when the
// count of +1 votes is not a multiple of 2^(j+1), where j = floor(log2(depth
// + 1)), funnels starting sums into a shrinking set of rows, which keeps the
// number of visited states near horizon^2 instead of horizon^3.
template <MemoStorage Storage>
class DpMemoTable {
 public:
  DpMemoTable(const RhoParam& rho, int horizon)
      : rho_(rho), horizon_(horizon), storage_(horizon) {
    if (horizon < 0) throw InvalidArgument("DpMemoTable: negative horizon");
  }

  const RhoParam& rho() const { return rho_; }
  int horizon() const { return horizon_; }

  // Recursive expansions (cache misses on nontrivial states) so far.
  std::uint64_t expansions() const { return expansions_; }
  std::uint64_t hits() const { return hits_; }
  std::size_t size() const { return storage_.size(); }

  std::optional<double> lookup(int n, int sum, int theta) const {
    if (trivial(n, theta)) return std::nullopt;
    return storage_.find(n, sum, theta);
  }

  double threshold_probability(int n, int sum, int theta) {
    if (n < 0 || sum < -n || sum > n || ((sum + n) & 1) != 0) {
      throw InvalidArgument("dp: vote sum " + std::to_string(sum) +
                            " impossible for n=" + std::to_string(n));
    }
    if (!storage_.covers(n)) {
      throw CapExceeded("dp: dense memo table", n, horizon_);
    }
    return evaluate(n, sum, theta);
  }

 private:
  static bool trivial(int n, int theta) { return theta < -n || theta >= n; }

  int peel_sign(int n, int sum) const {
    const int plus = (sum + n) / 2;
    const int minus = n - plus;
    if (minus == 0) return 1;
    if (plus == 0) return -1;
    const int depth = horizon_ > n ? horizon_ - n : 0;
    const unsigned phase = std::bit_width(static_cast<unsigned>(depth) + 1U) - 1U;
    if (phase >= 30) return 1;
    const int period = 1 << (phase + 1);
    return plus % period != 0 ? 1 : -1;
  }

  double evaluate(int n, int sum, int theta) {
    if (theta < -n) return 1.0;  // every outcome has sum >= -n
    if (theta >= n) return 0.0;  // and <= n; also the n = 0 base case
    if (auto cached = storage_.find(n, sum, theta)) {
      ++hits_;
      return *cached;
    }
    ++expansions_;
    const int last = peel_sign(n, sum);
    const int rest = sum - last;
    const double kept = evaluate(n - 1, rest, theta - last);
    const double flipped = evaluate(n - 1, rest, theta + last);
    const double p = std::clamp(rho_.keep_prob() * kept + rho_.flip_prob() * flipped, 0.0, 1.0);
    storage_.store(n, sum, theta, p);
    return p;
  }

  RhoParam rho_;
  int horizon_;
  Storage storage_;
  std::uint64_t expansions_ = 0;
  std::uint64_t hits_ = 0;
};

using DenseDpMemo = DpMemoTable<DenseMemoStorage>;
using HashDpMemo = DpMemoTable<HashMemoStorage>;
using RowDpMemo = DpMemoTable<RowMemoStorage>;

// P[sum y > theta] for y ~ N_rho x, any x with n votes summing to x_sum.
template <MemoStorage Storage>
double dp_noise_operator(int theta, int x_sum, int n, const RhoParam& rho,
                         DpMemoTable<Storage>& memo) {
  if (!(memo.rho() == rho)) throw InvalidArgument("dp_noise_operator: memo bound to another rho");
  return memo.threshold_probability(n, x_sum, theta);
}

inline double dp_noise_operator(int theta, int x_sum, int n, const RhoParam& rho) {
  RowDpMemo memo(rho, n);
  return dp_noise_operator(theta, x_sum, n, rho, memo);
}

}  // namespace noisy_choice
