// Copyright 2026 The PhyPlan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phyplan/bench/results_csv.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include <boost/algorithm/string/split.hpp>
#include <boost/algorithm/string/trim.hpp>

namespace phyplan::bench {
namespace {

template <typename T>
void put(std::ostream& out, T v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.write(buf, res.ptr - buf);
}

template <typename T>
T parse(const std::string& s, std::size_t line, const char* what) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("results line " + std::to_string(line) + ": bad " + what + " '" + s +
                             "'");
  }
  return v;
}

}  // namespace

void check_regret_curves(std::span<const ResultRow> rows) {
  std::map<std::tuple<std::string, std::string, std::uint64_t>, double> last;
  for (const ResultRow& r : rows) {
    auto [it, fresh] = last.try_emplace({r.task, r.agent, r.seed}, r.regret);
    if (!fresh) {
      if (r.regret > it->second) {
        throw std::logic_error("regret curve increases for " + r.task + "/" + r.agent + "/seed " +
                               std::to_string(r.seed) + " at attempt " + std::to_string(r.attempt));
      }
      it->second = r.regret;
    }
  }
}

void write_results_header(std::ostream& out) { out << kResultsHeader << '\n'; }

void write_result_row(std::ostream& out, const ResultRow& r) {
  out << r.task << ',' << r.agent << ',';
  put(out, r.seed);
  out << ',';
  put(out, r.attempt);
  for (double v : {r.reward, r.best_reward, r.regret, r.plan_ms}) {
    out << ',';
    put(out, v);
  }
  out << '\n';
}

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows) {
  check_regret_curves(rows);
  write_results_header(out);
  for (const ResultRow& r : rows) write_result_row(out, r);
}

void save_results_csv(const std::filesystem::path& path, std::span<const ResultRow> rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_results_csv(out, rows);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("results file is empty");
  boost::trim(line);
  if (line != kResultsHeader) throw std::runtime_error("results header mismatch: '" + line + "'");
  std::vector<ResultRow> rows;
  std::size_t n = 1;
  std::vector<std::string> f;
  while (std::getline(in, line)) {
    ++n;
    boost::trim(line);
    if (line.empty()) continue;
    boost::split(f, line, [](char c) { return c == ','; });
    if (f.size() != 8) {
      throw std::runtime_error("results line " + std::to_string(n) + ": expected 8 fields");
    }
    ResultRow r;
    r.task = f[0];
    r.agent = f[1];
    r.seed = parse<std::uint64_t>(f[2], n, "seed");
    r.attempt = parse<int>(f[3], n, "attempt");
    r.reward = parse<double>(f[4], n, "reward");
    r.best_reward = parse<double>(f[5], n, "best_reward");
    r.regret = parse<double>(f[6], n, "regret");
    r.plan_ms = parse<double>(f[7], n, "plan_ms");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRow> load_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_results_csv(in);
}

}  // namespace phyplan::bench
