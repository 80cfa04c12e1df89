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
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "noisy_choice/boolean_function.hpp"
#include "noisy_choice/dp_memo.hpp"
#include "noisy_choice/error.hpp"
#include "noisy_choice/families.hpp"
#include "noisy_choice/fourier.hpp"
#include "noisy_choice/noise.hpp"

namespace noisy_choice {

enum class AccuracyMethod { closed_form, exact_spectral, dp_memo, monte_carlo };

inline std::string to_string(AccuracyMethod m) {
  switch (m) {
    case AccuracyMethod::closed_form: return "closed_form";
    case AccuracyMethod::exact_spectral: return "exact_spectral";
    case AccuracyMethod::dp_memo: return "dp_memo";
    case AccuracyMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

inline AccuracyMethod parse_accuracy_method(const std::string& s) {
  if (s == "closed_form") return AccuracyMethod::closed_form;
  if (s == "exact_spectral") return AccuracyMethod::exact_spectral;
  if (s == "dp_memo") return AccuracyMethod::dp_memo;
  if (s == "monte_carlo") return AccuracyMethod::monte_carlo;
  throw InvalidArgument("unknown accuracy method '" + s + "'");
}

// Acc(M_rho f) together with Stab_rho(f). Only the stability is stored and
// accuracy() is derived from it, so Acc = (1 + Stab) / 2 holds for every
// report regardless of which engine produced it.
class AccuracyReport {
 public:
  static AccuracyReport from_stability(double stability, AccuracyMethod method,
                                       std::optional<double> ci_halfwidth = std::nullopt) {
    return AccuracyReport(stability, method, ci_halfwidth);
  }

  static AccuracyReport from_accuracy(double accuracy, AccuracyMethod method,
                                      std::optional<double> ci_halfwidth = std::nullopt) {
    return AccuracyReport(2.0 * accuracy - 1.0, method, ci_halfwidth);
  }

  double accuracy() const { return (1.0 + stability_) / 2.0; }
  double stability() const { return stability_; }
  AccuracyMethod method() const { return method_; }
  // Monte Carlo only; in accuracy units.
  std::optional<double> ci_halfwidth() const { return ci_halfwidth_; }

 private:
  AccuracyReport(double stability, AccuracyMethod method, std::optional<double> ci)
      : stability_(stability), method_(method), ci_halfwidth_(ci) {}

  double stability_;
  AccuracyMethod method_;
  std::optional<double> ci_halfwidth_;
};

// sum_S rho^|S| f^(S)^2.
inline double stability_from_spectrum(const FourierSpectrum& s, const RhoParam& rho) {
  const std::vector<double> w = s.weight_by_degree();
  double total = 0.0;
  double power = 1.0;
  for (double wk : w) {
    total += power * wk;
    power *= rho.rho();
  }
  return total;
}

// Stab_rho(f) = E[f(x) f(y)] = E_x[f(x) T_rho f(x)].
template <FunctionTable F>
double stability(const F& f, const RhoParam& rho) {
  return inner_product(f, noise_operator(f, rho));
}

inline AccuracyReport accuracy_exact(const TruthTable& f, const RhoParam& rho) {
  return AccuracyReport::from_stability(stability(f, rho), AccuracyMethod::exact_spectral);
}

// Dictatorships: (1+rho)/2. AND_n and OR_n: 1 - 2^(1-n) (1 - ((1+rho)/2)^n).
inline AccuracyReport accuracy_closed_form(const Family& kind, int n, const RhoParam& rho) {
  if (n < 1) throw InvalidArgument("accuracy_closed_form: n must be >= 1");
  double acc = 0.0;
  if (const auto* d = std::get_if<family::Dictator>(&kind)) {
    if (d->voter < 1 || d->voter > n) throw InvalidArgument("accuracy_closed_form: voter out of range");
    acc = rho.keep_prob();
  } else if (std::holds_alternative<family::And>(kind) || std::holds_alternative<family::Or>(kind)) {
    acc = 1.0 - std::ldexp(1.0 - std::pow(rho.keep_prob(), n), 1 - n);
  } else {
    throw InvalidArgument("accuracy_closed_form: no closed form for " + family_name(kind));
  }
  return AccuracyReport::from_accuracy(acc, AccuracyMethod::closed_form);
}

struct AccuracyBounds {
  double lower = 0.0;
  double upper = 0.0;
};

inline constexpr double kDefaultMajorityBoundConstant = 1.0;

// 1/2 + arcsin(rho)/pi <= Acc(M_rho Maj_n)
//                      <= 1/2 + arcsin(rho)/pi + C / (sqrt(1 - rho^2) sqrt(n)).
// The constant C in the upper bound is not known in closed form; with the
// default C = 1 the bound holds on every case the exact engines can reach.
inline AccuracyBounds majority_bounds(int n, const RhoParam& rho,
                                      double constant = kDefaultMajorityBoundConstant) {
  if (n < 1 || n % 2 == 0) throw InvalidArgument("majority_bounds: n must be odd and positive");
  if (rho.flip_prob() == 0.0) throw InvalidArgument("majority_bounds: singular at rho = 1");
  const double r = rho.rho();
  const double lower = 0.5 + std::asin(r) / std::numbers::pi;
  const double upper = lower + constant / (std::sqrt(1.0 - r * r) * std::sqrt(static_cast<double>(n)));
  return {lower, upper};
}

// C(n, i) / 2^n for i = 0..n.
inline std::vector<double> binomial_half_weights(int n) {
  std::vector<double> w(n + 1);
  if (n <= 1000) {
    double c = 1.0;
    for (int i = 0; i <= n; ++i) {
      w[i] = std::ldexp(c, -n);
      c = c * (n - i) / (i + 1);
    }
  } else {
    const double log_total = std::lgamma(n + 1.0) - n * std::numbers::ln2;
    for (int i = 0; i <= n; ++i) {
      w[i] = std::exp(log_total - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0));
    }
  }
  return w;
}

// automatic: dense while it fits in kDenseMemoSlotLimit slots, rows beyond.
enum class MemoLayout { automatic, dense, rows, hash };

inline constexpr std::size_t kDenseMemoSlotLimit = std::size_t{1} << 22;

template <MemoStorage Storage>
AccuracyReport accuracy_dp(int theta, int n, const RhoParam& rho, DpMemoTable<Storage>& memo) {
  if (n < 0 || theta < -n || theta > n) {
    throw InvalidArgument("accuracy_dp: need |theta| <= n");
  }
  const std::vector<double> weight = binomial_half_weights(n);
  double total = 0.0;
  for (int plus = 0; plus <= n; ++plus) {
    const int sum = 2 * plus - n;
    const double p = dp_noise_operator(theta, sum, n, rho, memo);
    const double f_x = sum > theta ? 1.0 : -1.0;
    total += weight[plus] * f_x * (2.0 * p - 1.0);
  }
  return AccuracyReport::from_stability(total, AccuracyMethod::dp_memo);
}

// Accuracy of M_rho on the threshold function f_theta (majority at theta =
// 0, odd n) by summing over the n + 1 vote-count classes.
inline AccuracyReport accuracy_dp(int theta, int n, const RhoParam& rho,
                                  MemoLayout layout = MemoLayout::automatic) {
  if (layout == MemoLayout::automatic) {
    layout = DenseMemoStorage::footprint(n) <= kDenseMemoSlotLimit ? MemoLayout::dense
                                                                   : MemoLayout::rows;
  }
  if (layout == MemoLayout::dense) {
    DenseDpMemo memo(rho, n);
    return accuracy_dp(theta, n, rho, memo);
  }
  if (layout == MemoLayout::rows) {
    RowDpMemo memo(rho, n);
    return accuracy_dp(theta, n, rho, memo);
  }
  HashDpMemo memo(rho, n);
  return accuracy_dp(theta, n, rho, memo);
}

}  // namespace noisy_choice
