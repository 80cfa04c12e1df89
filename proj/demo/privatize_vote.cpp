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


// Privatizing a referendum: every voter's ballot passes through randomized
// response before the majority is taken. Prints the privacy level, the exact
// chance that the released outcome matches the true one, and a simulated
// check of that number.

#include <cstdio>

#include "noisy_choice/noisy_choice.hpp"

namespace nc = noisy_choice;

int main() {
  const int voters = 1001;
  const double epsilon = 3.0;
  const nc::RhoParam rho = nc::rho_of_epsilon(epsilon);

  std::printf("%d voters, epsilon = %.2f, rho = %.6f, flip probability = %.6f\n", voters, epsilon, rho.rho(),
              rho.flip_prob());

  const nc::AccuracyReport exact = nc::accuracy_dp(0, voters, rho);
  const nc::AccuracyBounds bounds = nc::majority_bounds(voters, rho);
  std::printf("P[released outcome = true outcome] = %.9f (bounds %.6f .. %.6f)\n", exact.accuracy(),
              bounds.lower, bounds.upper);

  nc::EstimatorConfig cfg;
  cfg.samples = 200000;
  cfg.shards = 4;
  const nc::AccuracyReport sim = nc::mc_accuracy(nc::majority_evaluator(), voters, rho, cfg);
  std::printf("simulated: %.6f +/- %.6f (seed %llu, %zu elections)\n", sim.accuracy(), *sim.ci_halfwidth(),
              static_cast<unsigned long long>(cfg.seed), cfg.samples);

  // One concrete election.
  nc::SplitMix64 rng(cfg.seed);
  nc::BitVector ballots(voters);
  for (int i = 0; i < voters; ++i) ballots.set(i, rng.bernoulli(0.52));
  nc::BitVector released;
  nc::sample_correlated_into(ballots, rho, rng, released);
  std::printf("one election: true margin %+d, privatized margin %+d\n", ballots.sum(), released.sum());

  // The privacy guarantee checked exhaustively on a small electorate.
  const nc::AuditReport audit = nc::audit(nc::make_family(nc::family::Majority{}, 9), rho);
  std::printf("audit on 9 voters: worst log-ratio %.6f <= epsilon %.6f\n", audit.max_log_ratio,
              audit.epsilon_bound);
  return 0;
}
