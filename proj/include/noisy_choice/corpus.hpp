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
#include <cstdint>
#include <string>
#include <vector>

#include "noisy_choice/boolean_function.hpp"
#include "noisy_choice/families.hpp"
#include "noisy_choice/rng.hpp"

namespace noisy_choice {

inline constexpr std::uint64_t kDefaultCorpusSeed = 0x6e6f697379ULL;

struct CorpusEntry {
  std::string name;
  TruthTable table;
};

struct CorpusOptions {
  int max_n = 12;          // families are generated for n = 1..max_n
  int random_count = 100;  // seeded uniformly random tables
  int random_max_n = 10;   // random tables have n uniform in [1, random_max_n]
  std::uint64_t seed = kDefaultCorpusSeed;
};

// Uniformly random social choice function on n voters.
inline TruthTable random_table(int n, SplitMix64& rng) {
  TruthTable t(n);
  std::uint64_t word = 0;
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    if (x % 64 == 0) word = rng();
    t.set(x, (word >> (x % 64)) & 1U);
  }
  return t;
}

// Majority (odd n), every dictator, AND and OR for n <= max_n, followed by
// random_count seeded random tables.
inline std::vector<CorpusEntry> build_corpus(const CorpusOptions& opt = {}) {
  std::vector<CorpusEntry> corpus;
  for (int n = 1; n <= opt.max_n; ++n) {
    const std::string suffix = "/n=" + std::to_string(n);
    if (n % 2 == 1) corpus.push_back({"maj" + suffix, make_family(family::Majority{}, n)});
    for (int i = 1; i <= n; ++i) {
      const Family d = family::Dictator{i};
      corpus.push_back({family_name(d) + suffix, make_family(d, n)});
    }
    corpus.push_back({"and" + suffix, make_family(family::And{}, n)});
    corpus.push_back({"or" + suffix, make_family(family::Or{}, n)});
  }
  SplitMix64 rng(opt.seed);
  const int random_max = std::max(1, std::min(opt.random_max_n, opt.max_n));
  for (int k = 0; k < opt.random_count; ++k) {
    const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(random_max));
    corpus.push_back({"random#" + std::to_string(k) + "/n=" + std::to_string(n), random_table(n, rng)});
  }
  return corpus;
}

}  // namespace noisy_choice
