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

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace noisy_choice {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter is outside its documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Two operands disagree on the voter count.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// An operation's precondition on its input does not hold (e.g. a
// monotone-only identity applied to a non-monotone function).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An exhaustive computation would exceed the configured size cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, int requested, int cap)
      : Error(what + ": n=" + std::to_string(requested) +
              " exceeds cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  int requested() const { return requested_; }
  int cap() const { return cap_; }

 private:
  int requested_;
  int cap_;
};

// A textual encoding failed to parse. position() is the 0-based character
// offset of the first offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline constexpr int kDefaultExhaustiveCap = 24;

// Largest n for which 2^n-sized tables are materialized. The environment
// variable NOISY_CHOICE_MAX_N overrides the default of 24.
inline int max_exhaustive_n() {
  if (const char* env = std::getenv("NOISY_CHOICE_MAX_N")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 0 && value <= 30) {
      return static_cast<int>(value);
    }
  }
  return kDefaultExhaustiveCap;
}

inline void require_exhaustive(int n, const char* what) {
  const int cap = max_exhaustive_n();
  if (n > cap) throw CapExceeded(what, n, cap);
}

}  // namespace noisy_choice
