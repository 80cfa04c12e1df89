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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "noisy_choice/accuracy.hpp"
#include "noisy_choice/error.hpp"
#include "noisy_choice/privacy_audit.hpp"
#include "noisy_choice/table_format.hpp"

namespace noisy_choice {

// One computed quantity, e.g. {"maj", 3, 0.5, "welfare", 1.5, "exact"}.
struct MetricRecord {
  std::string function;
  int n = 0;
  std::optional<double> rho;
  std::string metric;
  double value = 0.0;
  std::string method;
};

inline nlohmann::json to_json(const MetricRecord& r) {
  return nlohmann::json{{"function", r.function},
                        {"n", r.n},
                        {"rho", r.rho ? nlohmann::json(*r.rho) : nlohmann::json(nullptr)},
                        {"metric", r.metric},
                        {"value", r.value},
                        {"method", r.method}};
}

// One row of an accuracy sweep. Bounds are filled for majority only and
// ci_halfwidth for Monte Carlo only.
struct SweepRow {
  std::string family;
  int n = 0;
  double rho = 0.0;
  AccuracyMethod method = AccuracyMethod::exact_spectral;
  double accuracy = 0.0;
  double stability = 0.0;
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  std::optional<double> ci_halfwidth;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

inline SweepRow make_sweep_row(std::string family, int n, const RhoParam& rho,
                               const AccuracyReport& report,
                               std::optional<AccuracyBounds> bounds = std::nullopt) {
  SweepRow row;
  row.family = std::move(family);
  row.n = n;
  row.rho = rho.rho();
  row.method = report.method();
  row.accuracy = report.accuracy();
  row.stability = report.stability();
  if (bounds) {
    row.lower_bound = bounds->lower;
    row.upper_bound = bounds->upper;
  }
  row.ci_halfwidth = report.ci_halfwidth();
  return row;
}

inline constexpr std::string_view kSweepCsvHeader =
    "family,n,rho,method,accuracy,stability,lower_bound,upper_bound,ci_halfwidth";

inline std::string write_sweep_csv(const std::vector<SweepRow>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const SweepRow& r : rows) {
    out += r.family + ',' + std::to_string(r.n) + ',' + format_double(r.rho) + ',' +
           to_string(r.method) + ',' + format_double(r.accuracy) + ',' +
           format_double(r.stability) + ',' + opt(r.lower_bound) + ',' + opt(r.upper_bound) +
           ',' + opt(r.ci_halfwidth) + '\n';
  }
  return out;
}

namespace detail {

inline double parse_double(std::string_view s, std::size_t offset) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) throw ParseError("invalid number", offset);
  return v;
}

inline std::optional<double> parse_optional_double(std::string_view s, std::size_t offset) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, offset);
}

}  // namespace detail

inline std::vector<SweepRow> read_sweep_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    if (header) {
      if (line != kSweepCsvHeader) throw ParseError("unexpected sweep CSV header", pos);
      header = false;
    } else if (!line.empty()) {
      std::vector<std::string_view> cells;
      std::vector<std::size_t> starts;
      std::size_t c = 0;
      while (true) {
        const std::size_t comma = line.find(',', c);
        starts.push_back(pos + c);
        cells.push_back(line.substr(c, comma == std::string_view::npos ? std::string_view::npos : comma - c));
        if (comma == std::string_view::npos) break;
        c = comma + 1;
      }
      if (cells.size() != 9) throw ParseError("expected 9 fields, found " + std::to_string(cells.size()), pos);
      SweepRow r;
      r.family = std::string(cells[0]);
      const auto [end, ec] = std::from_chars(cells[1].data(), cells[1].data() + cells[1].size(), r.n);
      if (ec != std::errc{} || end != cells[1].data() + cells[1].size()) {
        throw ParseError("invalid n", starts[1]);
      }
      r.rho = detail::parse_double(cells[2], starts[2]);
      r.method = parse_accuracy_method(std::string(cells[3]));
      r.accuracy = detail::parse_double(cells[4], starts[4]);
      r.stability = detail::parse_double(cells[5], starts[5]);
      r.lower_bound = detail::parse_optional_double(cells[6], starts[6]);
      r.upper_bound = detail::parse_optional_double(cells[7], starts[7]);
      r.ci_halfwidth = detail::parse_optional_double(cells[8], starts[8]);
      rows.push_back(std::move(r));
    }
    pos = eol + 1;
  }
  if (header) throw ParseError("missing sweep CSV header", 0);
  return rows;
}

inline nlohmann::json to_json(const SweepRow& r) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return nlohmann::json{{"family", r.family},
                        {"n", r.n},
                        {"rho", r.rho},
                        {"method", to_string(r.method)},
                        {"accuracy", r.accuracy},
                        {"stability", r.stability},
                        {"lower_bound", opt(r.lower_bound)},
                        {"upper_bound", opt(r.upper_bound)},
                        {"ci_halfwidth", opt(r.ci_halfwidth)}};
}

inline std::string write_sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepRow& r : rows) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

inline std::vector<SweepRow> read_sweep_json(std::string_view text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
  auto opt = [](const nlohmann::json& v) -> std::optional<double> {
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
  };
  std::vector<SweepRow> rows;
  for (const auto& j : arr) {
    SweepRow r;
    r.family = j.at("family").get<std::string>();
    r.n = j.at("n").get<int>();
    r.rho = j.at("rho").get<double>();
    r.method = parse_accuracy_method(j.at("method").get<std::string>());
    r.accuracy = j.at("accuracy").get<double>();
    r.stability = j.at("stability").get<double>();
    r.lower_bound = opt(j.at("lower_bound"));
    r.upper_bound = opt(j.at("upper_bound"));
    r.ci_halfwidth = opt(j.at("ci_halfwidth"));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline nlohmann::json to_json(const AuditReport& a) {
  std::vector<int> x;
  for (int i = 0; i < a.attained_at.x.size(); ++i) x.push_back(a.attained_at.x.sign(i));
  return nlohmann::json{{"max_log_ratio", a.max_log_ratio},
                        {"epsilon_bound", a.epsilon_bound},
                        {"tight", a.tight},
                        {"attained_at",
                         {{"x", x},
                          {"neighbor_index", a.attained_at.neighbor_index},
                          {"output_value", a.attained_at.output_value}}}};
}

}  // namespace noisy_choice
