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
#include <string>
#include <vector>

#include "noisy_choice/boolean_function.hpp"
#include "noisy_choice/error.hpp"
#include "noisy_choice/fourier.hpp"
#include "noisy_choice/rng.hpp"

namespace noisy_choice {

// Correlation rho in [0,1] of the noisy channel N_rho: each vote is kept with
// probability (1+rho)/2 and flipped with probability (1-rho)/2.
//
// Both rho and the flip probability are stored, each computed directly from
// the caller's parameter. Near rho = 1 the flip probability is the small,
// well-conditioned number, so epsilon survives the conversion to rho and
// back at full relative precision, while rho itself is reported as given.
class RhoParam {
 public:
  static RhoParam from_rho(double rho) {
    if (!(rho >= 0.0 && rho <= 1.0)) {
      throw InvalidArgument("rho must lie in [0, 1], got " + std::to_string(rho));
    }
    return RhoParam(rho, (1.0 - rho) / 2.0);
  }

  // Largest rho whose mechanism is eps-DP: rho = 1 - 2/(e^eps + 1).
  static RhoParam from_epsilon(double eps) {
    if (!(eps >= 0.0)) {
      throw InvalidArgument("epsilon must be >= 0, got " + std::to_string(eps));
    }
    // rho = tanh(eps/2) and flip = 1/(e^eps + 1), both accurate for large eps.
    if (std::isinf(eps)) return RhoParam(1.0, 0.0);
    return RhoParam(std::tanh(eps / 2.0), 1.0 / (1.0 + std::exp(eps)));
  }

  static RhoParam from_flip_probability(double flip) {
    if (!(flip >= 0.0 && flip <= 0.5)) {
      throw InvalidArgument("flip probability must lie in [0, 1/2]");
    }
    return RhoParam(1.0 - 2.0 * flip, flip);
  }

  double rho() const { return rho_; }
  double flip_prob() const { return flip_; }
  double keep_prob() const { return 1.0 - flip_; }

  // ln((1+rho)/(1-rho)); +inf at rho = 1.
  double epsilon() const {
    if (flip_ == 0.0) return std::numeric_limits<double>::infinity();
    return std::log1p(-flip_) - std::log(flip_);
  }

  friend bool operator==(const RhoParam&, const RhoParam&) = default;

 private:
  RhoParam(double rho, double flip) : rho_(rho), flip_(flip) {}
  double rho_;
  double flip_;
};

// Privacy level of M_rho. Throws at rho = 1, where the release is f(x) itself.
inline double epsilon_of_rho(const RhoParam& rho) {
  if (rho.flip_prob() == 0.0) {
    throw InvalidArgument("rho = 1 gives no privacy: epsilon is unbounded");
  }
  return rho.epsilon();
}

inline RhoParam rho_of_epsilon(double eps) { return RhoParam::from_epsilon(eps); }

struct MechanismSample {
  BitVector input;
  BitVector output_vote;
  double released = 0.0;
};

// y ~ N_rho x drawn from an existing stream.
inline void sample_correlated_into(const BitVector& x, const RhoParam& rho, SplitMix64& rng,
                                   BitVector& y) {
  y = x;
  const double flip = rho.flip_prob();
  if (flip == 0.0) return;
  for (int i = 0; i < x.size(); ++i) {
    if (rng.bernoulli(flip)) y.flip(i);
  }
}

inline BitVector sample_correlated(const BitVector& x, const RhoParam& rho, std::uint64_t seed) {
  SplitMix64 rng(seed);
  BitVector y;
  sample_correlated_into(x, rho, rng, y);
  return y;
}

// One run of M_rho f at x: releases f(y) for y ~ N_rho x.
template <FunctionTable F>
MechanismSample apply_mechanism(const F& f, const BitVector& x, const RhoParam& rho,
                                std::uint64_t seed) {
  if (x.size() != f.n()) {
    throw DimensionMismatch("apply_mechanism: profile has n=" + std::to_string(x.size()) +
                            ", function has n=" + std::to_string(f.n()));
  }
  MechanismSample s{x, sample_correlated(x, rho, seed), 0.0};
  s.released = f.value(s.output_vote.index());
  return s;
}

// Multiplies every coefficient by rho^|S|.
inline FourierSpectrum attenuate(const FourierSpectrum& spectrum, const RhoParam& rho) {
  const int n = spectrum.n();
  std::vector<double> power(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) power[k] = power[k - 1] * rho.rho();
  std::vector<double> c(spectrum.coeffs().begin(), spectrum.coeffs().end());
  for (std::uint64_t m = 0; m < c.size(); ++m) c[m] *= power[std::popcount(m)];
  return FourierSpectrum(n, std::move(c));
}

// T_rho f(x) = E_{y ~ N_rho x}[f(y)], exact, via the spectrum.
template <FunctionTable F>
RealFunctionTable noise_operator(const F& f, const RhoParam& rho) {
  require_exhaustive(f.n(), "noise_operator");
  return inverse_wht(attenuate(wht(f), rho));
}

// T_rho applied as n independent two-point smoothing passes. Only nonnegative
// weights are involved, so nonnegative inputs (level-set indicators) keep
// their relative precision even for probabilities near 1e-300.
template <FunctionTable F>
RealFunctionTable noise_operator_by_coordinates(const F& f, const RhoParam& rho) {
  require_exhaustive(f.n(), "noise_operator_by_coordinates");
  std::vector<double> g = to_values(f);
  const double keep = rho.keep_prob();
  const double flip = rho.flip_prob();
  const std::size_t size = g.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += half << 1) {
      for (std::size_t j = block; j < block + half; ++j) {
        const double a = g[j];
        const double b = g[j + half];
        g[j] = keep * a + flip * b;
        g[j + half] = flip * a + keep * b;
      }
    }
  }
  return RealFunctionTable(f.n(), std::move(g));
}

}  // namespace noisy_choice
