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

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "noisy_choice/accuracy.hpp"
#include "noisy_choice/analysis.hpp"
#include "noisy_choice/boolean_function.hpp"
#include "noisy_choice/error.hpp"
#include "noisy_choice/noise.hpp"
#include "noisy_choice/rng.hpp"

namespace noisy_choice {

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct EstimatorConfig {
  std::size_t samples = 100000;
  std::uint64_t seed = kDefaultSeed;
  double confidence = 0.95;  // 0.95 or 0.99
  // Samples are split evenly over this many independently seeded shards,
  // run on separate threads. The estimate depends on the shard count but
  // not on scheduling.
  unsigned shards = 1;
};

struct Estimate {
  double value = 0.0;
  double ci_halfwidth = 0.0;
  std::size_t samples = 0;
};

struct WelfareEstimate {
  WelfareValue welfare;
  double ci_halfwidth = 0.0;
};

// Black-box social choice function on arbitrary n.
template <typename E>
concept VoteEvaluator = std::invocable<const E&, const BitVector&> &&
                        std::convertible_to<std::invoke_result_t<const E&, const BitVector&>, int>;

// sign(sum x) via popcount; works for any odd n.
inline auto majority_evaluator() {
  return [](const BitVector& x) { return x.sum() > 0 ? 1 : -1; };
}

inline auto table_evaluator(const TruthTable& f) {
  return [&f](const BitVector& x) { return f(x); };
}

namespace detail {

// Running sum, mean and sum of squared deviations (Welford), mergeable
// exactly. The sum of integer-valued draws is exact, so average() is the
// correctly rounded sample mean.
struct Moments {
  double count = 0.0;
  double sum = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  double average() const { return count > 0.0 ? sum / count : 0.0; }

  void add(double v) {
    count += 1.0;
    sum += v;
    const double delta = v - mean;
    mean += delta / count;
    m2 += delta * (v - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    sum += o.sum;
    const double delta = o.mean - mean;
    mean += delta * o.count / total;
    m2 += o.m2 + delta * delta * count * o.count / total;
    count = total;
  }
};

inline double z_score(double confidence) {
  if (confidence == 0.95) return 1.959963984540054;
  if (confidence == 0.99) return 2.5758293035489004;
  throw InvalidArgument("confidence must be 0.95 or 0.99");
}

inline void validate(const EstimatorConfig& cfg, std::size_t min_samples) {
  if (cfg.samples < min_samples) {
    throw InvalidArgument("estimator needs at least " + std::to_string(min_samples) + " samples");
  }
  if (cfg.shards == 0 || cfg.samples % cfg.shards != 0) {
    throw InvalidArgument("samples must split evenly across shards");
  }
  z_score(cfg.confidence);
}

template <typename Draw>
Moments run_shards(const EstimatorConfig& cfg, Draw&& draw) {
  const std::size_t per_shard = cfg.samples / cfg.shards;
  const SplitMix64 root(cfg.seed);
  std::vector<Moments> partial(cfg.shards);
  auto work = [&](unsigned shard) {
    // Each shard owns its copy of the draw functor and its scratch buffers.
    std::decay_t<Draw> local = draw;
    SplitMix64 rng = root.split(shard);
    Moments m;
    for (std::size_t k = 0; k < per_shard; ++k) m.add(local(rng));
    partial[shard] = m;
  };
  if (cfg.shards == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(cfg.shards);
    for (unsigned s = 0; s < cfg.shards; ++s) threads.emplace_back(work, s);
  }
  Moments total;
  for (const Moments& m : partial) total.merge(m);
  return total;
}

// Normal-approximation halfwidth for a mean of 0/1 draws, switching to the
// Wilson score interval when the estimate is within 3 sigma of 0 or 1.
// All-equal samples have zero spread and get halfwidth 0.
inline double proportion_halfwidth(double p, double m, double z) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  const double sigma = std::sqrt(p * (1.0 - p) / m);
  if (p - 3.0 * sigma > 0.0 && p + 3.0 * sigma < 1.0) return z * sigma;
  const double z2 = z * z;
  return z / (1.0 + z2 / m) * std::sqrt(p * (1.0 - p) / m + z2 / (4.0 * m * m));
}

inline double mean_halfwidth(const Moments& m, double z) {
  if (m.count < 2.0) return 0.0;
  return z * std::sqrt(m.m2 / (m.count - 1.0) / m.count);
}

inline void draw_uniform(BitVector& x, SplitMix64& rng) {
  for (std::uint64_t& w : x.words()) w = rng();
  x.normalize();
}

}  // namespace detail

// Estimates P[f(y) = f(x)] for x uniform and y ~ N_rho x.
template <VoteEvaluator E>
AccuracyReport mc_accuracy(const E& f_eval, int n, const RhoParam& rho, const EstimatorConfig& cfg) {
  detail::validate(cfg, 100);
  const detail::Moments m = detail::run_shards(cfg, [&, x = BitVector(n), y = BitVector(n)](SplitMix64& rng) mutable {
    detail::draw_uniform(x, rng);
    sample_correlated_into(x, rho, rng, y);
    return f_eval(y) == f_eval(x) ? 1.0 : 0.0;
  });
  const double p = m.average();
  const double halfwidth = detail::proportion_halfwidth(p, m.count, detail::z_score(cfg.confidence));
  return AccuracyReport::from_accuracy(p, AccuracyMethod::monte_carlo, halfwidth);
}

// Estimates W(M_rho f) = E[f(y) * sum x].
template <VoteEvaluator E>
WelfareEstimate mc_welfare(const E& f_eval, int n, const RhoParam& rho, const EstimatorConfig& cfg) {
  detail::validate(cfg, 100);
  const detail::Moments m = detail::run_shards(cfg, [&, x = BitVector(n), y = BitVector(n)](SplitMix64& rng) mutable {
    detail::draw_uniform(x, rng);
    sample_correlated_into(x, rho, rng, y);
    return static_cast<double>(f_eval(y) * x.sum());
  });
  return WelfareEstimate{WelfareValue{m.average(), rho.rho()},
                         detail::mean_halfwidth(m, detail::z_score(cfg.confidence))};
}

// Estimates I_i[M_rho f] by re-noising voter i's ballot only:
// y_i ~ N_rho(+1), z_i ~ N_rho(-1), all other votes shared and uniform.
template <VoteEvaluator E>
Estimate mc_probabilistic_influence(const E& f_eval, int voter, int n, const RhoParam& rho,
                                    const EstimatorConfig& cfg) {
  if (voter < 1 || voter > n) throw InvalidArgument("mc_probabilistic_influence: voter out of range");
  detail::validate(cfg, 100);
  const int bit = voter - 1;
  const detail::Moments m = detail::run_shards(cfg, [&, y = BitVector(n), z = BitVector(n)](SplitMix64& rng) mutable {
    detail::draw_uniform(y, rng);
    y.set(bit, rng.bernoulli(rho.keep_prob()));
    z = y;
    z.set(bit, !rng.bernoulli(rho.keep_prob()));
    const double d = (f_eval(y) - f_eval(z)) / 2.0;
    return d * d;
  });
  const double p = m.average();
  return Estimate{p, detail::proportion_halfwidth(p, m.count, detail::z_score(cfg.confidence)), cfg.samples};
}

}  // namespace noisy_choice
