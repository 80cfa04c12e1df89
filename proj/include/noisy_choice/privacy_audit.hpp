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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "noisy_choice/boolean_function.hpp"
#include "noisy_choice/error.hpp"
#include "noisy_choice/noise.hpp"

namespace noisy_choice {

inline constexpr int kAuditMaxN = 16;
inline constexpr int kTightnessMaxN = 20;
inline constexpr int kExactAuditMaxN = 10;
inline constexpr double kAuditSlack = 1e-9;

struct AuditWitness {
  BitVector x;
  int neighbor_index = 1;  // voter whose flip attains the ratio, 1-based
  int output_value = 1;
};

struct AuditReport {
  double max_log_ratio = 0.0;  // max over x, neighbors x', outputs r of ln P[r|x] / P[r|x']
  AuditWitness attained_at;
  double epsilon_bound = 0.0;  // ln((1+rho)/(1-rho))
  bool tight = false;          // |max_log_ratio - epsilon_bound| <= 1e-9
};

// P[M_rho f(x) = r] for every r in the range of f. Summed over y with
// nonnegative weights only, so small probabilities stay accurate.
inline std::map<int, double> output_distribution(const TruthTable& f, const BitVector& x,
                                                 const RhoParam& rho) {
  if (f.n() > kAuditMaxN) throw CapExceeded("output_distribution", f.n(), kAuditMaxN);
  if (x.size() != f.n()) throw DimensionMismatch("output_distribution: profile length");
  const int n = f.n();
  // weight[d] = keep^(n-d) * flip^d for Hamming distance d.
  std::vector<double> weight(n + 1);
  for (int d = 0; d <= n; ++d) {
    weight[d] = std::pow(rho.keep_prob(), n - d) * std::pow(rho.flip_prob(), d);
  }
  const std::uint64_t xi = x.index();
  double plus = 0.0;
  double minus = 0.0;
  for (std::uint64_t z = 0; z < f.size(); ++z) {
    const double w = weight[std::popcount(z ^ xi)];
    (f.positive(z) ? plus : minus) += w;
  }
  std::map<int, double> dist;
  const std::uint64_t positives = f.count_positive();
  if (positives > 0) dist[1] = plus;
  if (positives < f.size()) dist[-1] = minus;
  return dist;
}

// Worst-case privacy loss of M_rho f over all single-vote neighbors.
inline AuditReport audit(const TruthTable& f, const RhoParam& rho) {
  if (f.n() > kAuditMaxN) throw CapExceeded("audit", f.n(), kAuditMaxN);
  if (!(rho.rho() > 0.0 && rho.flip_prob() > 0.0)) {
    throw InvalidArgument("audit: rho must lie strictly between 0 and 1");
  }
  const int n = f.n();
  AuditReport report;
  report.epsilon_bound = rho.epsilon();
  report.attained_at.x = BitVector(n);
  const std::uint64_t positives = f.count_positive();

  for (int r : {1, -1}) {
    const bool nonempty = r == 1 ? positives > 0 : positives < f.size();
    if (!nonempty) continue;
    std::vector<double> indicator(f.size());
    for (std::uint64_t z = 0; z < f.size(); ++z) indicator[z] = f.sign(z) == r ? 1.0 : 0.0;
    // prob.value(x) = P[M_rho f(x) = r]
    const RealFunctionTable prob = noise_operator_by_coordinates(RealFunctionTable(n, std::move(indicator)), rho);
    std::vector<double> log_prob(f.size());
    for (std::uint64_t x = 0; x < f.size(); ++x) log_prob[x] = std::log(prob.value(x));

    for (int i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      for (std::uint64_t x = 0; x < f.size(); ++x) {
        if ((x & bit) != 0) continue;
        if (!(prob.value(x) > 0.0) || !(prob.value(x | bit) > 0.0)) continue;
        const double d = log_prob[x] - log_prob[x | bit];
        const double magnitude = std::abs(d);
        if (magnitude > report.max_log_ratio) {
          report.max_log_ratio = magnitude;
          report.attained_at = AuditWitness{BitVector::from_index(n, d >= 0 ? x : (x | bit)), i + 1, r};
        }
      }
    }
  }
  report.tight = std::abs(report.max_log_ratio - report.epsilon_bound) <= kAuditSlack;
  return report;
}

// True iff some nonempty level set {z : f(z) = r} lies inside a half-cube
// {z : z_i = b}, which is exactly when the privacy bound is attained.
inline bool tightness_condition(const TruthTable& f) {
  if (f.n() > kTightnessMaxN) throw CapExceeded("tightness_condition", f.n(), kTightnessMaxN);
  const std::uint64_t full = (std::uint64_t{1} << f.n()) - 1;
  for (bool positive : {true, false}) {
    std::uint64_t all_and = full;
    std::uint64_t all_or = 0;
    bool nonempty = false;
    for (std::uint64_t z = 0; z < f.size(); ++z) {
      if (f.positive(z) != positive) continue;
      nonempty = true;
      all_and &= z;
      all_or |= z;
    }
    // all_and bit i: every z has z_i = +1; all_or bit i clear: every z_i = -1.
    if (nonempty && (all_and != 0 || all_or != full)) return true;
  }
  return false;
}

using Rational = boost::multiprecision::cpp_rational;

// Audit in exact rational arithmetic for rho = numerator / denominator.
struct ExactAuditReport {
  Rational max_ratio;  // max P[r|x] / P[r|x'] over neighbors and outputs
  Rational bound;      // (1+rho)/(1-rho)
  bool within_bound = false;
  bool tight = false;  // max_ratio == bound exactly
  double max_log_ratio = 0.0;
};

inline ExactAuditReport audit_exact(const TruthTable& f, std::int64_t rho_numerator,
                                    std::int64_t rho_denominator) {
  if (f.n() > kExactAuditMaxN) throw CapExceeded("audit_exact", f.n(), kExactAuditMaxN);
  if (rho_denominator <= 0 || rho_numerator <= 0 || rho_numerator >= rho_denominator) {
    throw InvalidArgument("audit_exact: rho must lie strictly between 0 and 1");
  }
  const int n = f.n();
  const Rational rho(rho_numerator, rho_denominator);
  const Rational keep = (1 + rho) / 2;
  const Rational flip = (1 - rho) / 2;

  ExactAuditReport report;
  report.bound = keep / flip;
  report.max_ratio = 1;
  const std::uint64_t positives = f.count_positive();
  for (int r : {1, -1}) {
    const bool nonempty = r == 1 ? positives > 0 : positives < f.size();
    if (!nonempty) continue;
    std::vector<Rational> g(f.size());
    for (std::uint64_t z = 0; z < f.size(); ++z) g[z] = f.sign(z) == r ? 1 : 0;
    for (std::size_t half = 1; half < g.size(); half <<= 1) {
      for (std::size_t block = 0; block < g.size(); block += half << 1) {
        for (std::size_t j = block; j < block + half; ++j) {
          const Rational a = g[j];
          const Rational b = g[j + half];
          g[j] = keep * a + flip * b;
          g[j + half] = flip * a + keep * b;
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      for (std::uint64_t x = 0; x < f.size(); ++x) {
        if ((x & bit) != 0) continue;
        const Rational& a = g[x];
        const Rational& b = g[x | bit];
        const Rational ratio = a > b ? Rational(a / b) : Rational(b / a);
        if (ratio > report.max_ratio) report.max_ratio = ratio;
      }
    }
  }
  report.within_bound = report.max_ratio <= report.bound;
  report.tight = report.max_ratio == report.bound;
  report.max_log_ratio = std::log(report.max_ratio.convert_to<double>());
  return report;
}

}  // namespace noisy_choice
