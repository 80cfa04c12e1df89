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

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

#include "noisy_choice/boolean_function.hpp"
#include "noisy_choice/error.hpp"
#include "noisy_choice/fourier.hpp"

namespace noisy_choice {

// Text form of a truth table: "bf:v1:n=<n>:<hex>". The hex string is the
// 2^n-bit integer whose bit x is set iff f(x) = +1, most significant nibble
// first, zero-padded to ceil(2^n / 4) digits. Majority on 3 voters is
// "bf:v1:n=3:e8".
inline std::string to_bf_string(const TruthTable& f) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::uint64_t digits = f.size() < 4 ? 1 : f.size() / 4;
  std::string hex(digits, '0');
  for (std::uint64_t d = 0; d < digits; ++d) {
    unsigned nibble = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::uint64_t x = 4 * d + b;
      if (x < f.size() && f.positive(x)) nibble |= 1U << b;
    }
    hex[digits - 1 - d] = kDigits[nibble];
  }
  return "bf:v1:n=" + std::to_string(f.n()) + ":" + hex;
}

inline TruthTable parse_bf_string(std::string_view text) {
  constexpr std::string_view kPrefix = "bf:v1:n=";
  for (std::size_t i = 0; i < kPrefix.size(); ++i) {
    if (i >= text.size() || text[i] != kPrefix[i]) {
      throw ParseError("expected prefix 'bf:v1:n='", i);
    }
  }
  std::size_t pos = kPrefix.size();
  int n = 0;
  const auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), n);
  if (ec != std::errc{} || n < 0) throw ParseError("expected voter count", pos);
  pos = static_cast<std::size_t>(end - text.data());
  require_exhaustive(n, "parse_bf_string");
  if (pos >= text.size() || text[pos] != ':') throw ParseError("expected ':' after n", pos);
  ++pos;

  TruthTable f(n);
  const std::uint64_t digits = f.size() < 4 ? 1 : f.size() / 4;
  if (text.size() - pos != digits) {
    throw ParseError("expected " + std::to_string(digits) + " hex digits, found " +
                         std::to_string(text.size() - pos),
                     text.size() - pos < digits ? text.size() : pos + digits);
  }
  for (std::uint64_t d = 0; d < digits; ++d) {
    const char c = text[pos + d];
    unsigned nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      nibble = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      nibble = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw ParseError(std::string("invalid hex digit '") + c + "'", pos + d);
    }
    const std::uint64_t base = 4 * (digits - 1 - d);
    for (unsigned b = 0; b < 4; ++b) {
      const bool set = (nibble >> b) & 1U;
      if (base + b < f.size()) {
        f.set(base + b, set);
      } else if (set) {
        throw ParseError("bit set beyond 2^n entries", pos + d);
      }
    }
  }
  return f;
}

// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

// "mask,coefficient" CSV, one row per subset in mask order.
inline std::string spectrum_to_csv(const FourierSpectrum& s) {
  std::string out = "mask,coefficient\n";
  for (std::uint64_t m = 0; m < s.size(); ++m) {
    out += std::to_string(m);
    out += ',';
    out += format_double(s[m]);
    out += '\n';
  }
  return out;
}

}  // namespace noisy_choice
