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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "phyplan/bench/cli.h"
#include "phyplan/bench/results_csv.h"
#include "phyplan/skills/dataset.h"
#include "phyplan/skills/skill_model.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = phyplan::bench::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("phyplan_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("gen-data writes the requested rows") {
  const fs::path dir = scratch("gen");
  const std::string out = (dir / "d.csv").string();
  const Run r = cli({"gen-data", "--skill", "throwing", "--n", "1000", "--noise", "0", "--seed",
                     "7", "--out", out});
  REQUIRE(r.code == 0);
  const phyplan::skills::Dataset d = phyplan::skills::read_dataset_csv(fs::path(out));
  CHECK(d.size() == 1000);
  CHECK(d.skill == phyplan::skills::SkillKind::kThrowing);
}

TEST_CASE("PHYPLAN_SEED is the seed fallback") {
  const fs::path dir = scratch("seed");
  const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  REQUIRE(cli({"gen-data", "--skill", "sliding", "--n", "20", "--seed", "31", "--out", a}).code == 0);
  ::setenv("PHYPLAN_SEED", "31", 1);
  REQUIRE(cli({"gen-data", "--skill", "sliding", "--n", "20", "--out", b}).code == 0);
  ::unsetenv("PHYPLAN_SEED");
  CHECK(slurp(a) == slurp(b));
  ::setenv("PHYPLAN_SEED", "x1", 1);
  const Run bad = cli({"gen-data", "--skill", "sliding", "--n", "20", "--out", b});
  ::unsetenv("PHYPLAN_SEED");
  CHECK(bad.code != 0);
}

TEST_CASE("train then eval reproduces the model's predictions") {
  const fs::path dir = scratch("train");
  const std::string d = (dir / "d.csv").string(), v = (dir / "v.csv").string(),
                    m = (dir / "m.bin").string();
  REQUIRE(cli({"gen-data", "--skill", "sliding", "--n", "60", "--seed", "1", "--out", d}).code == 0);
  REQUIRE(cli({"gen-data", "--skill", "sliding", "--n", "40", "--seed", "2", "--out", v}).code == 0);
  const Run t = cli({"train", "--skill", "sliding", "--data", d, "--colloc-ratio", "4", "--seed",
                     "42", "--iterations", "30", "--out", m});
  REQUIRE(t.code == 0);
  CHECK(t.out.find("learned mu=") != std::string::npos);
  const Run e = cli({"eval", "--model", m, "--data", v});
  REQUIRE(e.code == 0);
  CHECK(e.out.find("validation MSE: ") == 0);

  const phyplan::skills::SkillModel model = phyplan::skills::load_skill_model(m);
  std::stringstream buf;
  phyplan::skills::write_skill_model(buf, model);
  const phyplan::skills::SkillModel again = phyplan::skills::read_skill_model(buf);
  const phyplan::skills::Dataset val = phyplan::skills::read_dataset_csv(fs::path(v));
  CHECK((phyplan::skills::predict_batch(model, val.inputs).array() ==
         phyplan::skills::predict_batch(again, val.inputs).array())
            .all());
  std::ostringstream mse;
  mse.precision(8);
  mse << "validation MSE: " << phyplan::skills::validation_mse(model, val);
  CHECK(e.out.rfind(mse.str(), 0) == 0);
}

TEST_CASE("identify reports the estimate") {
  const fs::path dir = scratch("identify");
  const std::string d = (dir / "d.csv").string();
  REQUIRE(cli({"gen-data", "--skill", "sliding", "--n", "50", "--seed", "3", "--out", d}).code == 0);
  const Run r = cli({"identify", "--data", d, "--iterations", "20", "--true", "0.2", "--seed", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("mu=", 0) == 0);
  CHECK(r.out.find("relative_error=") != std::string::npos);
}

TEST_CASE("bench writes the results contract and is deterministic") {
  const fs::path dir = scratch("bench");
  const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  const std::vector<std::string> base{"bench",   "--tasks",   "bounce",      "--agents",
                                      "phyplan,random", "--attempts", "2", "--seeds",
                                      "1,2",     "--backend", "slow_oracle", "--D",
                                      "4",       "--K",       "2", "--grid-resolution", "20"};
  std::vector<std::string> ra = base, rb = base;
  ra.insert(ra.end(), {"--out", a});
  rb.insert(rb.end(), {"--out", b});
  const Run r1 = cli(ra);
  REQUIRE(r1.code == 0);
  REQUIRE(cli(rb).code == 0);
  CHECK(slurp(a).rfind(std::string(phyplan::bench::kResultsHeader) + "\n", 0) == 0);
  auto rows_a = phyplan::bench::load_results_csv(a);
  auto rows_b = phyplan::bench::load_results_csv(b);
  CHECK(rows_a.size() == 2 * 2 * 2);
  for (auto* rows : {&rows_a, &rows_b}) {
    for (auto& r : *rows) r.plan_ms = 0.0;
  }
  CHECK(rows_a == rows_b);
  CHECK(r1.out.find("final_regret") != std::string::npos);
}

TEST_CASE("errors are one line and nonzero") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"gen-data", "--skill", "throwing"},
        std::vector<std::string>{"gen-data", "--skill", "juggling", "--out", "x.csv"},
        std::vector<std::string>{"plan", "--task", "launch", "--models", "/nonexistent"},
        std::vector<std::string>{"bench", "--tasks", "all", "--bogus", "--out", "x.csv"},
        std::vector<std::string>{"--config", "/nonexistent.cfg", "grid-opt"},
        std::vector<std::string>{}}) {
    const Run r = cli(args);
    CHECK(r.code != 0);
    CHECK(r.err.rfind("phyplan: error: ", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
  const Run missing = cli({"plan", "--task", "launch", "--models", "/nonexistent"});
  CHECK(missing.err.find("phyplan train --skill") != std::string::npos);
}

TEST_CASE("grid-opt and help") {
  const Run g = cli({"grid-opt", "--task", "bounce", "--resolution", "30"});
  REQUIRE(g.code == 0);
  CHECK(g.out.rfind("bounce: opt_reward=", 0) == 0);
  const Run h = cli({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("grid-opt") != std::string::npos);
}
