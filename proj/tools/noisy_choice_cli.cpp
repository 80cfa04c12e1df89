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


// noisy-choice: analyze, sweep, verify and audit from the command line.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error, 3 verification
// failure, 4 resource cap exceeded.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "noisy_choice/noisy_choice.hpp"

namespace nc = noisy_choice;
using nlohmann::json;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;
constexpr int kExitCap = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Function specs: a family name plus --n/--i/--theta, or a bf:v1 table.

struct FunctionArg {
  std::optional<nc::Family> family;
  std::optional<nc::TruthTable> table;  // set for bf:v1 input
  int n = 0;

  std::string label() const { return family ? nc::family_name(*family) : nc::to_bf_string(*table); }

  nc::TruthTable tabulate() const { return table ? *table : nc::make_family(*family, n); }
};

struct FunctionOptions {
  std::string text;
  std::optional<int> n;
  std::optional<int> voter;
  std::optional<int> theta;
};

int parse_int(std::string_view s, const std::string& what) {
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw UsageError("invalid " + what + " '" + std::string(s) + "'");
  }
  return v;
}

double parse_real(std::string_view s, const std::string& what) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw UsageError("invalid " + what + " '" + std::string(s) + "'");
  }
  return v;
}

// "name" or "name(arg)".
std::pair<std::string, std::optional<std::string>> split_call(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos) return {text, std::nullopt};
  if (text.back() != ')') throw UsageError("unbalanced parentheses in '" + text + "'");
  return {text.substr(0, open), text.substr(open + 1, text.size() - open - 2)};
}

FunctionArg parse_function(const FunctionOptions& o) {
  FunctionArg target;
  if (o.text.starts_with("bf:")) {
    target.table = nc::parse_bf_string(o.text);
    target.n = target.table->n();
    if (o.n && *o.n != target.n) {
      throw UsageError("--n " + std::to_string(*o.n) + " contradicts the table's n=" + std::to_string(target.n));
    }
    return target;
  }
  if (!o.n) throw UsageError("--n is required for family '" + o.text + "'");
  target.n = *o.n;
  if (target.n < 1) throw UsageError("--n must be >= 1");
  const auto [name, arg] = split_call(o.text);
  if (name == "maj" || name == "majority") {
    target.family = nc::family::Majority{};
  } else if (name == "dict" || name == "dictator") {
    target.family = nc::family::Dictator{arg ? parse_int(*arg, "voter") : o.voter.value_or(1)};
  } else if (name == "and") {
    target.family = nc::family::And{};
  } else if (name == "or") {
    target.family = nc::family::Or{};
  } else if (name == "threshold") {
    target.family = nc::family::Threshold{arg ? parse_int(*arg, "theta") : o.theta.value_or(0)};
  } else if (name == "const") {
    bool positive = true;
    if (arg) {
      if (*arg == "+1" || *arg == "1") {
        positive = true;
      } else if (*arg == "-1") {
        positive = false;
      } else {
        throw UsageError("const takes +1 or -1");
      }
    }
    target.family = nc::family::Constant{positive};
  } else if (name == "parity") {
    target.family = nc::family::Parity{};
  } else {
    throw UsageError("unknown function '" + o.text +
                     "' (expected maj, dict, and, or, threshold, const, parity or bf:v1:...)");
  }
  if (const auto* d = std::get_if<nc::family::Dictator>(&*target.family); d && (d->voter < 1 || d->voter > target.n)) {
    throw UsageError("voter " + std::to_string(d->voter) + " outside [1, " + std::to_string(target.n) + "]");
  }
  if (std::holds_alternative<nc::family::Majority>(*target.family) && target.n % 2 == 0) {
    throw UsageError("majority needs odd n");
  }
  return target;
}

void add_function_options(CLI::App* cmd, FunctionOptions& o) {
  cmd->add_option("function", o.text, "maj | dict | and | or | threshold | const | parity | bf:v1:n=<n>:<hex>")
      ->required();
  cmd->add_option("--n", o.n, "Number of voters");
  cmd->add_option("--i", o.voter, "Dictator voter (1-based)");
  cmd->add_option("--theta", o.theta, "Threshold for 'threshold'");
}

// Threshold parameter when f is a threshold function of the vote sum.
std::optional<int> threshold_of(const FunctionArg& s) {
  if (!s.family) return std::nullopt;
  if (std::holds_alternative<nc::family::Majority>(*s.family)) return 0;
  if (const auto* t = std::get_if<nc::family::Threshold>(&*s.family)) return t->theta;
  return std::nullopt;
}

bool has_closed_form(const FunctionArg& s) {
  return s.family && (std::holds_alternative<nc::family::Dictator>(*s.family) ||
                      std::holds_alternative<nc::family::And>(*s.family) ||
                      std::holds_alternative<nc::family::Or>(*s.family));
}

bool is_majority(const FunctionArg& s) {
  return s.family && std::holds_alternative<nc::family::Majority>(*s.family);
}

// ---------------------------------------------------------------------------
// rho / epsilon.

struct NoiseOptions {
  std::optional<std::string> rho;
  std::optional<double> epsilon;
};

void add_noise_options(CLI::App* cmd, NoiseOptions& o) {
  auto* r = cmd->add_option("--rho", o.rho, "Correlation rho in [0, 1]");
  auto* e = cmd->add_option("--epsilon", o.epsilon, "Privacy level epsilon >= 0; converted to rho");
  r->excludes(e);
  e->excludes(r);
}

nc::RhoParam resolve_rho(const NoiseOptions& o) {
  if (o.rho) return nc::RhoParam::from_rho(parse_real(*o.rho, "rho"));
  if (o.epsilon) return nc::RhoParam::from_epsilon(*o.epsilon);
  throw UsageError("one of --rho or --epsilon is required");
}

// Exact fraction for a decimal rho such as "0.9".
std::pair<std::int64_t, std::int64_t> decimal_fraction(const std::string& text) {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool point = false;
  for (char c : text) {
    if (c == '.' && !point) {
      point = true;
    } else if (c >= '0' && c <= '9' && num < (std::int64_t{1} << 50)) {
      num = num * 10 + (c - '0');
      if (point) den *= 10;
    } else {
      throw UsageError("--exact needs a plain decimal --rho, got '" + text + "'");
    }
  }
  return {num, den};
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return nc::format_double(v);
}

json json_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
  FunctionOptions function;
  NoiseOptions noise;
  bool json_output = false;
  double bound_constant = nc::kDefaultMajorityBoundConstant;
};

int cmd_analyze(const AnalyzeOptions& o) {
  const FunctionArg target = parse_function(o.function);
  const nc::RhoParam rho = resolve_rho(o.noise);
  const std::string label = target.label();
  std::vector<nc::MetricRecord> records;
  auto add = [&](std::string metric, double value, std::string method, bool with_rho = true) {
    records.push_back({label, target.n, with_rho ? std::optional<double>(rho.rho()) : std::nullopt, std::move(metric),
                       value, std::move(method)});
  };

  const bool exhaustive = target.n <= nc::max_exhaustive_n();
  if (!exhaustive && !threshold_of(target) && !has_closed_form(target)) {
    nc::require_exhaustive(target.n, "analyze");  // throws CapExceeded naming the cap
  }
  if (exhaustive) {
    const nc::TruthTable f = target.tabulate();
    const nc::InfluenceProfile inf = nc::influence_profile(f);
    for (int i = 1; i <= target.n; ++i) add("influence[" + std::to_string(i) + "]", inf.per_voter[i - 1], "exact", false);
    add("total_influence", inf.total, "exact", false);
    for (int i = 1; i <= target.n; ++i) {
      add("probabilistic_influence[" + std::to_string(i) + "]", nc::probabilistic_influence(f, i, rho), "exact");
    }
    add("welfare", nc::welfare(f).value, "exact", false);
    add("mechanism_welfare", nc::mechanism_welfare(f, rho).value, "exact_spectral");
    const nc::AccuracyReport acc = nc::accuracy_exact(f, rho);
    add("stability", acc.stability(), "exact_spectral");
    add("accuracy", acc.accuracy(), "exact_spectral");
  }
  if (has_closed_form(target)) {
    const nc::AccuracyReport acc = nc::accuracy_closed_form(*target.family, target.n, rho);
    if (!exhaustive) add("stability", acc.stability(), "closed_form");
    add("accuracy", acc.accuracy(), "closed_form");
  }
  if (const auto theta = threshold_of(target); theta && std::abs(*theta) <= target.n) {
    const nc::AccuracyReport acc = nc::accuracy_dp(*theta, target.n, rho);
    if (!exhaustive) add("stability", acc.stability(), "dp_memo");
    add("accuracy", acc.accuracy(), "dp_memo");
  }
  if (is_majority(target) && rho.flip_prob() > 0.0) {
    const nc::AccuracyBounds b = nc::majority_bounds(target.n, rho, o.bound_constant);
    add("accuracy_lower_bound", b.lower, "bound");
    add("accuracy_upper_bound", b.upper, "bound");
  }
  add("epsilon", rho.epsilon(), "closed_form");

  if (o.json_output) {
    json metrics = json::array();
    for (const auto& r : records) {
      json j = nc::to_json(r);
      j["value"] = json_number(r.value);
      metrics.push_back(std::move(j));
    }
    const json out = {{"function", label}, {"n", target.n},           {"rho", rho.rho()},
                      {"epsilon", json_number(rho.epsilon())},      {"metrics", metrics}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("function  %s\nn         %d\nrho       %s\nepsilon   %s\n", label.c_str(), target.n,
                fmt(rho.rho()).c_str(), fmt(rho.epsilon()).c_str());
    if (!exhaustive) {
      std::printf("note      n=%d exceeds the exhaustive cap %d; table-based metrics skipped\n", target.n,
                  nc::max_exhaustive_n());
    }
    for (const auto& r : records) {
      if (r.metric == "epsilon") continue;
      std::printf("%-28s %-24s [%s]\n", r.metric.c_str(), fmt(r.value).c_str(), r.method.c_str());
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

// "3,5,7", "3:101:2" (inclusive, step defaults to 1) or a mix of both.
std::vector<int> parse_int_grid(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto first = part.find(':');
    if (first == std::string::npos) {
      out.push_back(parse_int(part, "grid value"));
      continue;
    }
    const auto second = part.find(':', first + 1);
    const int lo = parse_int(part.substr(0, first), "grid start");
    const int hi = parse_int(part.substr(first + 1, second == std::string::npos ? std::string::npos : second - first - 1),
                             "grid end");
    const int step = second == std::string::npos ? 1 : parse_int(part.substr(second + 1), "grid step");
    if (step <= 0 || hi < lo) throw UsageError("bad integer range '" + part + "'");
    for (int v = lo; v <= hi; v += step) out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

// "0,0.5,1" or "0:1:0.1" (inclusive). Range points are rounded to 12
// decimals so 0:1:0.1 yields 0.3 rather than 0.30000000000000004.
std::vector<double> parse_real_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto first = part.find(':');
    if (first == std::string::npos) {
      out.push_back(parse_real(part, "grid value"));
      continue;
    }
    const auto second = part.find(':', first + 1);
    if (second == std::string::npos) throw UsageError("real range needs lo:hi:step, got '" + part + "'");
    const double lo = parse_real(part.substr(0, first), "grid start");
    const double hi = parse_real(part.substr(first + 1, second - first - 1), "grid end");
    const double step = parse_real(part.substr(second + 1), "grid step");
    if (!(step > 0.0) || hi < lo) throw UsageError("bad real range '" + part + "'");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (long k = 0; k < count; ++k) out.push_back(std::round((lo + k * step) * 1e12) / 1e12);
  }
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

enum class Engine { closed_form, exact, dp, monte_carlo };

Engine parse_engine(const std::string& s) {
  if (s == "closed" || s == "closed_form") return Engine::closed_form;
  if (s == "exact" || s == "exact_spectral") return Engine::exact;
  if (s == "dp" || s == "dp_memo") return Engine::dp;
  if (s == "mc" || s == "monte_carlo") return Engine::monte_carlo;
  throw UsageError("unknown engine '" + s + "' (expected closed, exact, dp or mc)");
}

// Vote evaluator for a family at any n, without a table.
std::function<int(const nc::BitVector&)> family_evaluator(const FunctionArg& s) {
  if (s.table) return [t = *s.table](const nc::BitVector& x) { return t(x); };
  struct Visitor {
    std::function<int(const nc::BitVector&)> operator()(nc::family::Majority) const {
      return [](const nc::BitVector& x) { return x.sum() > 0 ? 1 : -1; };
    }
    std::function<int(const nc::BitVector&)> operator()(nc::family::Dictator d) const {
      return [i = d.voter - 1](const nc::BitVector& x) { return x.sign(i); };
    }
    std::function<int(const nc::BitVector&)> operator()(nc::family::And) const {
      return [](const nc::BitVector& x) { return x.popcount() == x.size() ? 1 : -1; };
    }
    std::function<int(const nc::BitVector&)> operator()(nc::family::Or) const {
      return [](const nc::BitVector& x) { return x.popcount() > 0 ? 1 : -1; };
    }
    std::function<int(const nc::BitVector&)> operator()(nc::family::Threshold t) const {
      return [theta = t.theta](const nc::BitVector& x) { return x.sum() > theta ? 1 : -1; };
    }
    std::function<int(const nc::BitVector&)> operator()(nc::family::Constant c) const {
      return [v = c.positive ? 1 : -1](const nc::BitVector&) { return v; };
    }
    std::function<int(const nc::BitVector&)> operator()(nc::family::Parity) const {
      return [](const nc::BitVector& x) { return (x.size() - x.popcount()) % 2 == 0 ? 1 : -1; };
    }
  };
  return std::visit(Visitor{}, *s.family);
}

struct SweepOptions {
  FunctionOptions function;
  std::string n_grid;
  std::string rho_grid;
  std::string epsilon_grid;
  std::vector<std::string> engines;
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = nc::kDefaultSeed;
  std::size_t samples = 100000;
  unsigned threads = 0;
  double bound_constant = nc::kDefaultMajorityBoundConstant;
};

struct SweepCell {
  int n;
  nc::RhoParam rho;
  Engine engine;
};

nc::SweepRow run_cell(const SweepOptions& o, const SweepCell& cell, std::size_t index) {
  FunctionOptions fo = o.function;
  fo.n = cell.n;
  const FunctionArg target = parse_function(fo);
  nc::AccuracyReport report = nc::AccuracyReport::from_stability(0.0, nc::AccuracyMethod::exact_spectral);
  switch (cell.engine) {
    case Engine::closed_form:
      if (!has_closed_form(target)) throw UsageError("no closed form for " + target.label());
      report = nc::accuracy_closed_form(*target.family, target.n, cell.rho);
      break;
    case Engine::exact:
      report = nc::accuracy_exact(target.tabulate(), cell.rho);
      break;
    case Engine::dp: {
      const auto theta = threshold_of(target);
      if (!theta) throw UsageError("the dp engine handles maj and threshold only");
      report = nc::accuracy_dp(*theta, target.n, cell.rho);
      break;
    }
    case Engine::monte_carlo: {
      nc::EstimatorConfig cfg;
      cfg.samples = o.samples;
      cfg.seed = nc::SplitMix64(o.seed).split(index)();
      report = nc::mc_accuracy(family_evaluator(target), target.n, cell.rho, cfg);
      break;
    }
  }
  std::optional<nc::AccuracyBounds> bounds;
  if (is_majority(target) && cell.rho.flip_prob() > 0.0) {
    bounds = nc::majority_bounds(target.n, cell.rho, o.bound_constant);
  }
  return nc::make_sweep_row(target.label(), target.n, cell.rho, report, bounds);
}

int cmd_sweep(const SweepOptions& o) {
  if (o.rho_grid.empty() == o.epsilon_grid.empty()) {
    throw UsageError("exactly one of --rho-grid or --epsilon-grid is required");
  }
  if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
  const std::vector<int> ns = parse_int_grid(o.n_grid);
  std::vector<nc::RhoParam> rhos;
  if (!o.rho_grid.empty()) {
    for (double r : parse_real_grid(o.rho_grid)) rhos.push_back(nc::RhoParam::from_rho(r));
  } else {
    for (double e : parse_real_grid(o.epsilon_grid)) rhos.push_back(nc::RhoParam::from_epsilon(e));
  }
  std::vector<Engine> engines;
  for (const std::string& e : o.engines) engines.push_back(parse_engine(e));
  if (engines.empty()) {
    FunctionOptions fo = o.function;
    fo.n = ns.front();
    const FunctionArg probe = parse_function(fo);
    engines.push_back(threshold_of(probe) ? Engine::dp : has_closed_form(probe) ? Engine::closed_form : Engine::exact);
  }
  const bool randomized = std::find(engines.begin(), engines.end(), Engine::monte_carlo) != engines.end();
  if (randomized) std::fprintf(stderr, "seed %llu\n", static_cast<unsigned long long>(o.seed));

  std::vector<SweepCell> cells;
  for (int n : ns) {
    for (const nc::RhoParam& r : rhos) {
      for (Engine e : engines) cells.push_back({n, r, e});
    }
  }
  // Validate every cell up front so usage errors surface before any work.
  for (const SweepCell& c : cells) {
    FunctionOptions fo = o.function;
    fo.n = c.n;
    parse_function(fo);
  }

  std::vector<std::optional<nc::SweepRow>> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  const unsigned workers =
      std::max(1U, std::min<unsigned>(o.threads ? o.threads : std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(cells.size())));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < cells.size(); k = next++) {
          try {
            rows[k] = run_cell(o, cells[k], k);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<nc::SweepRow> ordered;
  for (auto& r : rows) ordered.push_back(std::move(*r));

  const std::string text = o.format == "csv" ? nc::write_sweep_csv(ordered) : nc::write_sweep_json(ordered);
  if (o.out == "-") {
    std::cout << text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + o.out + "' for writing");
    file << text;
    if (!file.flush()) throw std::runtime_error("write to '" + o.out + "' failed");
    std::fprintf(stderr, "wrote %zu rows to %s\n", ordered.size(), o.out.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyCliOptions {
  std::uint64_t corpus_seed = nc::kDefaultCorpusSeed;
  int max_n = 13;
  bool json_output = false;
  double tamper = 1.0;
};

int cmd_verify(const VerifyCliOptions& o) {
  if (o.max_n < 1) throw UsageError("--max-n must be >= 1");
  nc::require_exhaustive(o.max_n, "verify");
  nc::VerifyOptions opt;
  opt.corpus_seed = o.corpus_seed;
  opt.max_n = o.max_n;
  opt.welfare_scaling_tamper = o.tamper;
  std::fprintf(stderr, "corpus seed %llu\n", static_cast<unsigned long long>(o.corpus_seed));
  const nc::VerifyReport report = nc::run_verification(opt);
  if (o.json_output) {
    json j = nc::to_json(report);
    j["corpus_seed"] = o.corpus_seed;
    j["max_n"] = o.max_n;
    std::cout << j.dump(2) << "\n";
  } else {
    double worst = 0.0;
    for (const auto& c : report.checks) {
      worst = std::max(worst, c.worst_residual);
      std::printf("%s %-50s residual %-12.3g cases %zu%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                  c.worst_residual, c.cases, c.detail.empty() ? "" : "  ", c.detail.c_str());
    }
    std::printf("%s: %zu checks, max residual %.3g\n", report.passed() ? "all checks passed" : "verification FAILED",
                report.checks.size(), worst);
  }
  return report.passed() ? 0 : kExitVerify;
}

// ---------------------------------------------------------------------------
// audit

struct AuditOptions {
  FunctionOptions function;
  NoiseOptions noise;
  bool json_output = false;
  bool exact = false;
};

std::string signs(const nc::BitVector& x) {
  std::string s = "(";
  for (int i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::string(x.sign(i) > 0 ? "+1" : "-1");
  return s + ")";
}

int cmd_audit(const AuditOptions& o) {
  const FunctionArg target = parse_function(o.function);
  const nc::RhoParam rho = resolve_rho(o.noise);
  if (target.n > nc::kAuditMaxN) throw nc::CapExceeded("audit", target.n, nc::kAuditMaxN);
  const nc::TruthTable f = target.tabulate();
  const nc::AuditReport report = nc::audit(f, rho);
  const bool condition = nc::tightness_condition(f);
  std::optional<nc::ExactAuditReport> exact;
  if (o.exact) {
    if (!o.noise.rho) throw UsageError("--exact needs --rho");
    const auto [num, den] = decimal_fraction(*o.noise.rho);
    exact = nc::audit_exact(f, num, den);
  }
  if (o.json_output) {
    json j = nc::to_json(report);
    j["function"] = target.label();
    j["n"] = target.n;
    j["rho"] = rho.rho();
    j["tightness_condition"] = condition;
    if (exact) {
      j["exact"] = {{"max_ratio", exact->max_ratio.str()},
                    {"bound", exact->bound.str()},
                    {"within_bound", exact->within_bound},
                    {"tight", exact->tight}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("function             %s\n", target.label().c_str());
    std::printf("n                    %d\n", target.n);
    std::printf("rho                  %s\n", fmt(rho.rho()).c_str());
    std::printf("epsilon_bound        %s\n", fmt(report.epsilon_bound).c_str());
    std::printf("max_log_ratio        %s\n", fmt(report.max_log_ratio).c_str());
    std::printf("within_bound         %s\n",
                report.max_log_ratio <= report.epsilon_bound + nc::kAuditSlack ? "yes" : "no");
    std::printf("tight                %s\n", report.tight ? "yes" : "no");
    std::printf("tightness_condition  %s\n", condition ? "yes" : "no");
    std::printf("witness              x=%s neighbor=%d output=%+d\n", signs(report.attained_at.x).c_str(),
                report.attained_at.neighbor_index, report.attained_at.output_value);
    if (exact) {
      std::printf("exact_max_ratio      %s\n", exact->max_ratio.str().c_str());
      std::printf("exact_bound          %s\n", exact->bound.str().c_str());
      std::printf("exact_tight          %s\n", exact->tight ? "yes" : "no");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy, accuracy and welfare of noisy social choice mechanisms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "noisy-choice 1.0.0");

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Influence, welfare, stability, accuracy and epsilon of one function");
  add_function_options(analyze_cmd, analyze.function);
  add_noise_options(analyze_cmd, analyze.noise);
  analyze_cmd->add_flag("--json", analyze.json_output, "Emit JSON records");
  analyze_cmd->add_option("--bound-constant", analyze.bound_constant, "Constant C in the majority upper bound");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Accuracy over a grid of n and rho (or epsilon)");
  sweep_cmd->add_option("--family", sweep.function.text, "Function family or bf:v1 table")->required();
  sweep_cmd->add_option("--i", sweep.function.voter, "Dictator voter (1-based)");
  sweep_cmd->add_option("--theta", sweep.function.theta, "Threshold for 'threshold'");
  sweep_cmd->add_option("--n-grid", sweep.n_grid, "e.g. 3:101:2 or 3,5,7")->required();
  auto* rg = sweep_cmd->add_option("--rho-grid", sweep.rho_grid, "e.g. 0:1:0.1 or 0.5,0.9");
  auto* eg = sweep_cmd->add_option("--epsilon-grid", sweep.epsilon_grid, "e.g. 0.5,1,2");
  rg->excludes(eg);
  eg->excludes(rg);
  sweep_cmd->add_option("--engine", sweep.engines, "closed | exact | dp | mc (repeatable or comma separated)")
      ->delimiter(',');
  sweep_cmd->add_option("--out", sweep.out, "Output path, '-' for stdout");
  sweep_cmd->add_option("--format", sweep.format, "csv or json");
  sweep_cmd->add_option("--seed", sweep.seed, "Seed for the mc engine");
  sweep_cmd->add_option("--samples", sweep.samples, "Samples per mc cell");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads, 0 for all cores");
  sweep_cmd->add_option("--bound-constant", sweep.bound_constant, "Constant C in the majority upper bound");

  VerifyCliOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run every property check on the corpus");
  verify_cmd->add_option("--corpus-seed", verify.corpus_seed, "Seed for the random part of the corpus");
  verify_cmd->add_option("--max-n", verify.max_n, "Largest n checked");
  verify_cmd->add_flag("--json", verify.json_output, "Emit a JSON summary");
  verify_cmd->add_option("--tamper-welfare-scaling", verify.tamper,
                         "Debug: multiply the expected welfare-scaling factor (negative control)");

  AuditOptions audit;
  auto* audit_cmd = app.add_subcommand("audit", "Exhaustive privacy audit of M_rho f");
  add_function_options(audit_cmd, audit.function);
  add_noise_options(audit_cmd, audit.noise);
  audit_cmd->add_flag("--json", audit.json_output, "Emit JSON");
  audit_cmd->add_flag("--exact", audit.exact, "Also audit in exact rational arithmetic (n <= 10, decimal --rho)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(analyze);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep);
    if (verify_cmd->parsed()) return cmd_verify(verify);
    if (audit_cmd->parsed()) return cmd_audit(audit);
  } catch (const nc::CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCap;
  } catch (const nc::ParseError& e) {
    std::fprintf(stderr, "error: parse error at position %zu: %s\n", e.position(), e.what());
    return kExitUsage;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const nc::InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const nc::PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
