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
#include <cstdint>
#include <string>
#include <variant>

#include "noisy_choice/boolean_function.hpp"
#include "noisy_choice/error.hpp"

namespace noisy_choice {

namespace family {

// sign(sum x); defined for odd n only.
struct Majority {};
// f(x) = x_voter, voter is 1-based.
struct Dictator {
  int voter = 1;
};
// +1 iff every vote is +1.
struct And {};
// -1 iff every vote is -1.
struct Or {};
// +1 iff sum x > theta (ties go to -1).
struct Threshold {
  int theta = 0;
};
// Constant output.
struct Constant {
  bool positive = true;
};
// chi_[n](x) = prod x_i.
struct Parity {};

}  // namespace family

using Family = std::variant<family::Majority, family::Dictator, family::And, family::Or,
                            family::Threshold, family::Constant, family::Parity>;

// Short, parseable label: "maj", "dict(2)", "and", "or", "threshold(-1)",
// "const(+1)", "parity".
inline std::string family_name(const Family& kind) {
  struct Visitor {
    std::string operator()(family::Majority) const { return "maj"; }
    std::string operator()(family::Dictator d) const {
      return "dict(" + std::to_string(d.voter) + ")";
    }
    std::string operator()(family::And) const { return "and"; }
    std::string operator()(family::Or) const { return "or"; }
    std::string operator()(family::Threshold t) const {
      return "threshold(" + std::to_string(t.theta) + ")";
    }
    std::string operator()(family::Constant c) const {
      return c.positive ? "const(+1)" : "const(-1)";
    }
    std::string operator()(family::Parity) const { return "parity"; }
  };
  return std::visit(Visitor{}, kind);
}

inline int profile_sum(std::uint64_t x, int n) { return 2 * std::popcount(x) - n; }

inline TruthTable make_family(const Family& kind, int n) {
  if (n < 1) throw InvalidArgument("make_family: n must be >= 1");
  require_exhaustive(n, "make_family");
  struct Visitor {
    int n;
    TruthTable operator()(family::Majority) const {
      if (n % 2 == 0) {
        throw InvalidArgument("make_family: majority needs odd n (sign(0) is undefined), got n=" +
                              std::to_string(n));
      }
      return TruthTable::from_rule(n, [&](std::uint64_t x) { return profile_sum(x, n) > 0; });
    }
    TruthTable operator()(family::Dictator d) const {
      if (d.voter < 1 || d.voter > n) {
        throw InvalidArgument("make_family: dictator voter " + std::to_string(d.voter) +
                              " outside [1, " + std::to_string(n) + "]");
      }
      const std::uint64_t m = std::uint64_t{1} << (d.voter - 1);
      return TruthTable::from_rule(n, [m](std::uint64_t x) { return (x & m) != 0; });
    }
    TruthTable operator()(family::And) const {
      const std::uint64_t all = (std::uint64_t{1} << n) - 1;
      return TruthTable::from_rule(n, [all](std::uint64_t x) { return x == all; });
    }
    TruthTable operator()(family::Or) const {
      return TruthTable::from_rule(n, [](std::uint64_t x) { return x != 0; });
    }
    TruthTable operator()(family::Threshold t) const {
      return TruthTable::from_rule(n, [&](std::uint64_t x) { return profile_sum(x, n) > t.theta; });
    }
    TruthTable operator()(family::Constant c) const {
      return TruthTable::from_rule(n, [&](std::uint64_t) { return c.positive; });
    }
    TruthTable operator()(family::Parity) const {
      // prod x_i = +1 iff the number of -1 entries is even.
      return TruthTable::from_rule(
          n, [&](std::uint64_t x) { return (n - std::popcount(x)) % 2 == 0; });
    }
  };
  return std::visit(Visitor{n}, kind);
}

// chi_S as a table, S given by bitmask.
inline RealFunctionTable character(int n, std::uint64_t subset) {
  std::vector<double> v(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < v.size(); ++x) {
    // chi_S(x) = (-1)^{number of i in S with x_i = -1}
    v[x] = std::popcount(subset & ~x) % 2 == 0 ? 1.0 : -1.0;
  }
  return RealFunctionTable(n, std::move(v));
}

}  // namespace noisy_choice
