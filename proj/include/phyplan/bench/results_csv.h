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

#ifndef PHYPLAN_BENCH_RESULTS_CSV_H_
#define PHYPLAN_BENCH_RESULTS_CSV_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace phyplan::bench {

inline constexpr const char* kResultsHeader =
    "task,agent,seed,attempt,reward,best_reward,regret,plan_ms";

struct ResultRow {
  std::string task;
  std::string agent;
  std::uint64_t seed = 0;
  int attempt = 0;
  double reward = 0.0;
  double best_reward = 0.0;
  double regret = 1.0;
  double plan_ms = 0.0;

  bool operator==(const ResultRow&) const = default;
};

// Throws std::logic_error when a (task, agent, seed) regret curve increases.
void check_regret_curves(std::span<const ResultRow> rows);

// Shortest round-trip decimal forms, so parsing reproduces every value.
void write_results_header(std::ostream& out);
void write_result_row(std::ostream& out, const ResultRow& row);
void write_results_csv(std::ostream& out, std::span<const ResultRow> rows);
void save_results_csv(const std::filesystem::path& path, std::span<const ResultRow> rows);

// Throws std::runtime_error with a line number on malformed input.
std::vector<ResultRow> read_results_csv(std::istream& in);
std::vector<ResultRow> load_results_csv(const std::filesystem::path& path);

}  // namespace phyplan::bench

#endif  // PHYPLAN_BENCH_RESULTS_CSV_H_
