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
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "noisy_choice/boolean_function.hpp"
#include "noisy_choice/error.hpp"
#include "noisy_choice/families.hpp"
#include "noisy_choice/fourier.hpp"
#include "noisy_choice/noise.hpp"

namespace noisy_choice {

struct InfluenceProfile {
  std::vector<double> per_voter;  // per_voter[i] = I_{i+1}[f]
  double total = 0.0;
};

// Welfare of a function (deterministic basis) or of M_rho f (mechanism basis).
struct WelfareValue {
  double value = 0.0;
  std::optional<double> mechanism_rho;

  bool is_mechanism() const { return mechanism_rho.has_value(); }
};

namespace detail {

inline void check_voter(int n, int voter) {
  if (voter < 1 || voter > n) {
    throw InvalidArgument("voter " + std::to_string(voter) + " outside [1, " +
                          std::to_string(n) + "]");
  }
}

}  // namespace detail

// I_i[f] = P_x[f(x^{i->1}) != f(x^{i->-1})].
inline double influence(const TruthTable& f, int voter) {
  detail::check_voter(f.n(), voter);
  require_exhaustive(f.n(), "influence");
  const std::uint64_t bit = std::uint64_t{1} << (voter - 1);
  std::uint64_t pivotal = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if ((x & bit) == 0 && f.positive(x) != f.positive(x | bit)) ++pivotal;
  }
  // pivotal counts pairs; each pair is 2 of the 2^n inputs.
  return std::ldexp(static_cast<double>(pivotal), -(f.n() - 1));
}

// E_x[(D_i f)(x)^2] with D_i f(x) = (f(x^{i->1}) - f(x^{i->-1})) / 2. Agrees
// with influence() on +/-1-valued f and extends it to real-valued f.
template <FunctionTable F>
double influence_derivative(const F& f, int voter) {
  detail::check_voter(f.n(), voter);
  require_exhaustive(f.n(), "influence_derivative");
  const std::uint64_t bit = std::uint64_t{1} << (voter - 1);
  const std::uint64_t size = std::uint64_t{1} << f.n();
  double s = 0.0;
  for (std::uint64_t x = 0; x < size; ++x) {
    if ((x & bit) != 0) continue;
    const double d = (f.value(x | bit) - f.value(x)) / 2.0;
    s += d * d;
  }
  return std::ldexp(s, -(f.n() - 1));
}

inline InfluenceProfile influence_profile(const TruthTable& f) {
  InfluenceProfile p;
  p.per_voter.reserve(f.n());
  for (int i = 1; i <= f.n(); ++i) {
    p.per_voter.push_back(influence(f, i));
    p.total += p.per_voter.back();
  }
  return p;
}

// f^({i}); equals I_i[f] when f is monotone.
inline double influence_via_fourier(const TruthTable& f, int voter, const FourierSpectrum& spectrum) {
  detail::check_voter(f.n(), voter);
  if (!is_monotone(f)) {
    throw PreconditionError("influence_via_fourier: f is not monotone");
  }
  return spectrum.singleton(voter);
}

inline double influence_via_fourier(const TruthTable& f, int voter) {
  return influence_via_fourier(f, voter, wht(f));
}

// I_i[M_rho f], exact. Uses the single-stage form in which only voter i's
// ballot is re-noised: y and z agree with x off coordinate i, y_i ~ N_rho(1)
// and z_i ~ N_rho(-1), and the value is E[((f(y) - f(z)) / 2)^2].
template <FunctionTable F>
double probabilistic_influence(const F& f, int voter, const RhoParam& rho) {
  detail::check_voter(f.n(), voter);
  require_exhaustive(f.n(), "probabilistic_influence");
  const std::uint64_t bit = std::uint64_t{1} << (voter - 1);
  const std::uint64_t size = std::uint64_t{1} << f.n();
  // P[y_i = b] for y_i ~ N_rho(+1) and P[z_i = b] for z_i ~ N_rho(-1), b = -1, +1.
  const double p_y[2] = {rho.flip_prob(), rho.keep_prob()};
  const double p_z[2] = {rho.keep_prob(), rho.flip_prob()};
  double s = 0.0;
  for (std::uint64_t x = 0; x < size; ++x) {
    if ((x & bit) != 0) continue;
    const double at[2] = {f.value(x), f.value(x | bit)};
    for (int yi = 0; yi < 2; ++yi) {
      for (int zi = 0; zi < 2; ++zi) {
        const double d = (at[yi] - at[zi]) / 2.0;
        s += p_y[yi] * p_z[zi] * d * d;
      }
    }
  }
  return std::ldexp(s, -(f.n() - 1));
}

// W(f) = E_x[f(x) * sum_i x_i], i.e. agreeing minus disagreeing votes.
inline WelfareValue welfare(const TruthTable& f) {
  require_exhaustive(f.n(), "welfare");
  // Integer accumulation keeps this exact up to the final scaling.
  std::int64_t s = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x) s += f.sign(x) * profile_sum(x, f.n());
  return WelfareValue{std::ldexp(static_cast<double>(s), -f.n()), std::nullopt};
}

// sum_i f^({i}).
inline WelfareValue welfare_via_fourier(const FourierSpectrum& spectrum) {
  double s = 0.0;
  for (int i = 1; i <= spectrum.n(); ++i) s += spectrum.singleton(i);
  return WelfareValue{s, std::nullopt};
}

inline WelfareValue welfare_via_fourier(const TruthTable& f) { return welfare_via_fourier(wht(f)); }

// W(M_rho f) = E_x[T_rho f(x) * sum_i x_i], exact.
inline WelfareValue mechanism_welfare(const TruthTable& f, const RhoParam& rho) {
  const RealFunctionTable smoothed = noise_operator(f, rho);
  double s = 0.0;
  for (std::uint64_t x = 0; x < f.size(); ++x) s += smoothed.value(x) * profile_sum(x, f.n());
  return WelfareValue{std::ldexp(s, -f.n()), rho.rho()};
}

// Every social choice function on n <= 4 voters attaining the maximum
// welfare, in table-index order.
inline std::vector<TruthTable> welfare_maximizers(int n) {
  if (n < 1 || n > 4) {
    throw CapExceeded("welfare_maximizers: exhaustive search over 2^(2^n) tables", n, 4);
  }
  const std::uint64_t size = std::uint64_t{1} << n;
  const std::uint64_t count = std::uint64_t{1} << size;
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  std::vector<std::uint64_t> winners;
  for (std::uint64_t table = 0; table < count; ++table) {
    std::int64_t w = 0;
    for (std::uint64_t x = 0; x < size; ++x) {
      w += (((table >> x) & 1U) ? 1 : -1) * profile_sum(x, n);
    }
    if (w > best) {
      best = w;
      winners.assign(1, table);
    } else if (w == best) {
      winners.push_back(table);
    }
  }
  std::vector<TruthTable> out;
  for (std::uint64_t table : winners) {
    out.push_back(TruthTable::from_rule(n, [table](std::uint64_t x) { return ((table >> x) & 1U) != 0; }));
  }
  return out;
}

// The unique welfare maximizer for odd n <= 3; throws if the search finds
// more than one table or the winner is not majority.
inline TruthTable argmax_welfare(int n) {
  if (n % 2 == 0) throw InvalidArgument("argmax_welfare: n must be odd");
  auto winners = welfare_maximizers(n);
  if (winners.size() != 1) {
    throw PreconditionError("argmax_welfare: " + std::to_string(winners.size()) + " maximizers");
  }
  if (!(winners.front() == make_family(family::Majority{}, n))) {
    throw PreconditionError("argmax_welfare: maximizer is not majority");
  }
  return winners.front();
}

// Pairwise order agreement: for all a, b the sign of values[a] - values[b]
// (with differences within tol counted as ties) is the same in both lists.
inline bool same_ordering(const std::vector<double>& before, const std::vector<double>& after,
                          double tol = 1e-9) {
  if (before.size() != after.size()) throw DimensionMismatch("same_ordering: sizes differ");
  auto cmp = [tol](double a, double b) { return a - b > tol ? 1 : (b - a > tol ? -1 : 0); };
  for (std::size_t a = 0; a < before.size(); ++a) {
    for (std::size_t b = a + 1; b < before.size(); ++b) {
      if (cmp(before[a], before[b]) != cmp(after[a], after[b])) return false;
    }
  }
  return true;
}

}  // namespace noisy_choice
