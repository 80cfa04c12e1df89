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
#include <span>
#include <vector>

#include "noisy_choice/boolean_function.hpp"
#include "noisy_choice/error.hpp"

namespace noisy_choice {

// In-place unnormalized Walsh-Hadamard butterfly over a power-of-two span.
// The +/-1 sign convention matches chi_S: index bit set means x_i = +1, so
// the pair (lo, hi) = (x_i = -1, x_i = +1) maps to (hi + lo, hi - lo).
inline void walsh_hadamard_inplace(std::span<double> a) {
  const std::size_t size = a.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += half << 1) {
      for (std::size_t j = block; j < block + half; ++j) {
        const double lo = a[j];
        const double hi = a[j + half];
        a[j] = hi + lo;
        a[j + half] = hi - lo;
      }
    }
  }
}

// Inverse of walsh_hadamard_inplace up to a factor 2^n: maps coefficient
// pairs (c_S, c_{S+i}) to values (x_i = -1, x_i = +1) = (lo - hi, lo + hi).
inline void inverse_walsh_hadamard_inplace(std::span<double> a) {
  const std::size_t size = a.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += half << 1) {
      for (std::size_t j = block; j < block + half; ++j) {
        const double lo = a[j];
        const double hi = a[j + half];
        a[j] = lo - hi;
        a[j + half] = lo + hi;
      }
    }
  }
}

// Fourier coefficients f^(S), coeffs[mask] with bit i of mask set iff
// voter i+1 is in S.
class FourierSpectrum {
 public:
  FourierSpectrum() = default;
  FourierSpectrum(int n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != (std::size_t{1} << n)) {
      throw DimensionMismatch("FourierSpectrum: expected 2^n coefficients");
    }
  }

  int n() const { return n_; }
  std::uint64_t size() const { return coeffs_.size(); }
  double operator[](std::uint64_t mask) const { return coeffs_[mask]; }
  std::span<const double> coeffs() const { return coeffs_; }

  // f^({voter}), voter 1-based.
  double singleton(int voter) const { return coeffs_[std::uint64_t{1} << (voter - 1)]; }

  // Sum_S f^(S)^2.
  double squared_norm() const {
    double s = 0.0;
    for (double c : coeffs_) s += c * c;
    return s;
  }

  // W^k[f] for k = 0..n.
  std::vector<double> weight_by_degree() const {
    std::vector<double> w(n_ + 1, 0.0);
    for (std::uint64_t m = 0; m < coeffs_.size(); ++m) {
      w[std::popcount(m)] += coeffs_[m] * coeffs_[m];
    }
    return w;
  }

 private:
  int n_ = 0;
  std::vector<double> coeffs_{0.0};
};

// f^(S) = 2^-n sum_x f(x) chi_S(x), O(n 2^n).
template <FunctionTable F>
FourierSpectrum wht(const F& f) {
  require_exhaustive(f.n(), "wht");
  std::vector<double> a = to_values(f);
  walsh_hadamard_inplace(a);
  const double scale = std::ldexp(1.0, -f.n());
  for (double& c : a) c *= scale;
  return FourierSpectrum(f.n(), std::move(a));
}

// Evaluates sum_S f^(S) chi_S(x) at every x.
inline RealFunctionTable inverse_wht(const FourierSpectrum& spectrum) {
  std::vector<double> a(spectrum.coeffs().begin(), spectrum.coeffs().end());
  inverse_walsh_hadamard_inplace(a);
  return RealFunctionTable(spectrum.n(), std::move(a));
}

// E_x[f(x) g(x)] under the uniform distribution.
template <FunctionTable F, FunctionTable G>
double inner_product(const F& f, const G& g) {
  if (f.n() != g.n()) throw DimensionMismatch("inner_product: operands differ in n");
  const std::uint64_t size = std::uint64_t{1} << f.n();
  double s = 0.0;
  for (std::uint64_t x = 0; x < size; ++x) s += f.value(x) * g.value(x);
  return std::ldexp(s, -f.n());
}

// sum_S f^(S) g^(S); equals inner_product by Plancherel.
inline double spectral_inner_product(const FourierSpectrum& a, const FourierSpectrum& b) {
  if (a.n() != b.n()) throw DimensionMismatch("spectral_inner_product: operands differ in n");
  double s = 0.0;
  for (std::uint64_t m = 0; m < a.size(); ++m) s += a[m] * b[m];
  return s;
}

// True iff raising any single vote from -1 to +1 never lowers f.
inline bool is_monotone(const TruthTable& f) {
  const int n = f.n();
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      if ((x & bit) == 0 && f.positive(x) && !f.positive(x | bit)) return false;
    }
  }
  return true;
}

}  // namespace noisy_choice
