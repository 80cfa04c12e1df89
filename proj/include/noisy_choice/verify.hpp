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
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "noisy_choice/accuracy.hpp"
#include "noisy_choice/analysis.hpp"
#include "noisy_choice/corpus.hpp"
#include "noisy_choice/families.hpp"
#include "noisy_choice/fourier.hpp"
#include "noisy_choice/privacy_audit.hpp"

namespace noisy_choice {

inline constexpr double kVerifyTolerance = 1e-9;

struct VerifyOptions {
  std::uint64_t corpus_seed = kDefaultCorpusSeed;
  int max_n = 13;
  // Debug hook: multiplies the expected side of the welfare-scaling check.
  // Anything but 1 must make verification fail.
  double welfare_scaling_tamper = 1.0;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  double worst_residual = 0.0;
  std::size_t cases = 0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

namespace detail {

// Residual tracker: worst |residual| and whether each stayed within tol.
class Check {
 public:
  explicit Check(std::string name, double tol = kVerifyTolerance) : tol_(tol) { result_.name = std::move(name); }

  void residual(double r, const std::string& where) {
    ++result_.cases;
    const double a = std::abs(r);
    if (!(a <= tol_) && result_.passed) {
      result_.passed = false;
      result_.detail = "first failure: " + where;
    }
    if (a > result_.worst_residual || std::isnan(a)) result_.worst_residual = a;
  }

  void require(bool ok, const std::string& where) {
    ++result_.cases;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.detail = "first failure: " + where;
    }
  }

  CheckResult done() { return std::move(result_); }

 private:
  double tol_;
  CheckResult result_;
};

inline std::vector<double> grid(double lo, double hi, int points) {
  std::vector<double> g;
  for (int k = 0; k < points; ++k) g.push_back(lo + (hi - lo) * k / (points - 1));
  return g;
}

inline std::string at(const std::string& name, double rho) {
  return name + " rho=" + std::to_string(rho);
}

}  // namespace detail

inline VerifyReport run_verification(const VerifyOptions& opt = {}) {
  using detail::Check;
  const int family_max_n = std::min(opt.max_n, 12);
  const std::vector<CorpusEntry> corpus =
      build_corpus({.max_n = family_max_n, .random_count = 100, .random_max_n = 10, .seed = opt.corpus_seed});
  const std::vector<double> rho_grid = detail::grid(0.0, 1.0, 11);
  const std::vector<double> open_grid = detail::grid(0.1, 0.9, 9);
  VerifyReport report;

  // Privacy bound and its tightness.
  {
    Check bound("privacy_bound");
    Check tight("privacy_bound_tight_for_dictators");
    Check equiv("tightness_condition_matches_audit");
    for (const auto& e : corpus) {
      const bool dictator = e.name.starts_with("dict(");
      for (double r : open_grid) {
        const RhoParam rho = RhoParam::from_rho(r);
        const AuditReport a = audit(e.table, rho);
        bound.residual(std::max(0.0, a.max_log_ratio - a.epsilon_bound), detail::at(e.name, r));
        if (dictator) tight.residual(a.max_log_ratio - a.epsilon_bound, detail::at(e.name, r));
        if (std::abs(r - 0.5) < 1e-12) {
          equiv.require(a.tight == tightness_condition(e.table), e.name);
        }
      }
    }
    report.checks.push_back(bound.done());
    report.checks.push_back(tight.done());
    report.checks.push_back(equiv.done());
  }

  // Influence: both definitions, Fourier form, scaling under the mechanism.
  {
    Check defs("influence_definitions_agree");
    Check fourier("monotone_influence_equals_singleton_coefficient");
    Check scaling("influence_scaling");
    Check order("voter_order_preserved");
    for (const auto& e : corpus) {
      const int n = e.table.n();
      const bool monotone = is_monotone(e.table);
      const FourierSpectrum spectrum = wht(e.table);
      std::vector<double> inf(n);
      for (int i = 1; i <= n; ++i) {
        inf[i - 1] = influence(e.table, i);
        defs.residual(inf[i - 1] - influence_derivative(e.table, i), e.name);
        if (monotone) fourier.residual(inf[i - 1] - spectrum.singleton(i), e.name);
      }
      for (double r : rho_grid) {
        const RhoParam rho = RhoParam::from_rho(r);
        std::vector<double> pinf(n);
        for (int i = 1; i <= n; ++i) {
          pinf[i - 1] = probabilistic_influence(e.table, i, rho);
          scaling.residual(pinf[i - 1] - (1.0 + r * r) / 2.0 * inf[i - 1], detail::at(e.name, r));
        }
        order.require(same_ordering(inf, pinf), detail::at(e.name, r));
      }
    }
    report.checks.push_back(defs.done());
    report.checks.push_back(fourier.done());
    report.checks.push_back(scaling.done());
    report.checks.push_back(order.done());
  }

  // Welfare: Fourier form, monotone case, scaling, ordering.
  {
    Check fourier("welfare_equals_degree_one_weight");
    Check monotone_total("monotone_welfare_equals_total_influence");
    Check scaling("welfare_scaling");
    Check order("welfare_order_preserved");
    std::vector<double> base;
    for (const auto& e : corpus) {
      const double w = welfare(e.table).value;
      base.push_back(w);
      fourier.residual(w - welfare_via_fourier(e.table).value, e.name);
      if (is_monotone(e.table)) monotone_total.residual(w - influence_profile(e.table).total, e.name);
    }
    for (double r : rho_grid) {
      const RhoParam rho = RhoParam::from_rho(r);
      std::vector<double> noisy;
      for (std::size_t k = 0; k < corpus.size(); ++k) {
        noisy.push_back(mechanism_welfare(corpus[k].table, rho).value);
        scaling.residual(noisy.back() - opt.welfare_scaling_tamper * r * base[k], detail::at(corpus[k].name, r));
      }
      if (r > 0.0) order.require(same_ordering(base, noisy), "rho=" + std::to_string(r));
    }
    report.checks.push_back(fourier.done());
    report.checks.push_back(monotone_total.done());
    report.checks.push_back(scaling.done());
    report.checks.push_back(order.done());
  }

  // Majority is the unique welfare maximizer.
  {
    Check argmax("majority_unique_welfare_maximizer");
    for (int n = 1; n <= std::min(opt.max_n, 4); n += 2) {
      const auto winners = welfare_maximizers(n);
      argmax.require(winners.size() == 1 && winners.front() == make_family(family::Majority{}, n),
                     "n=" + std::to_string(n));
    }
    report.checks.push_back(argmax.done());
  }

  // Accuracy engines.
  {
    Check closed("closed_forms_match_exact");
    Check dp("dp_matches_exact_majority");
    Check decreasing("majority_stability_decreasing_in_n");
    Check lower("majority_accuracy_above_lower_bound");
    Check identity("accuracy_stability_identity");
    auto structural = [&identity](const AccuracyReport& a, const std::string& where) {
      identity.residual(a.accuracy() - (1.0 + a.stability()) / 2.0, where);
    };
    for (int n = 1; n <= family_max_n; ++n) {
      for (double r : rho_grid) {
        const RhoParam rho = RhoParam::from_rho(r);
        for (const Family& kind : {Family{family::Dictator{1}}, Family{family::Dictator{n}},
                                   Family{family::And{}}, Family{family::Or{}}}) {
          const AccuracyReport c = accuracy_closed_form(kind, n, rho);
          const AccuracyReport x = accuracy_exact(make_family(kind, n), rho);
          const std::string where = family_name(kind) + "/n=" + std::to_string(n) + " rho=" + std::to_string(r);
          closed.residual(c.accuracy() - x.accuracy(), where);
          structural(c, where);
          structural(x, where);
        }
      }
    }
    for (double r : rho_grid) {
      const RhoParam rho = RhoParam::from_rho(r);
      double previous = 2.0;
      for (int n = 1; n <= opt.max_n; n += 2) {
        const AccuracyReport x = accuracy_exact(make_family(family::Majority{}, n), rho);
        const AccuracyReport d = accuracy_dp(0, n, rho);
        const std::string where = "maj/n=" + std::to_string(n) + " rho=" + std::to_string(r);
        dp.residual(d.accuracy() - x.accuracy(), where);
        structural(x, where);
        structural(d, where);
        if (r > 0.0 && r < 1.0) {
          decreasing.require(x.stability() < previous, where);
          previous = x.stability();
          lower.residual(std::max(0.0, majority_bounds(n, rho).lower - x.accuracy()), where);
        }
      }
    }
    report.checks.push_back(closed.done());
    report.checks.push_back(dp.done());
    report.checks.push_back(decreasing.done());
    report.checks.push_back(lower.done());
    report.checks.push_back(identity.done());
  }
  return report;
}

inline nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"worst_residual", c.worst_residual},
                      {"cases", c.cases},
                      {"detail", c.detail}});
  }
  return nlohmann::json{{"passed", r.passed()}, {"checks", checks}};
}

}  // namespace noisy_choice
