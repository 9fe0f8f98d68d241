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

#ifndef PHYPLAN_BENCH_CLI_H_
#define PHYPLAN_BENCH_CLI_H_

#include <iosfwd>
#include <span>
#include <string>

namespace phyplan::bench {

// The `phyplan` command line: gen-data, train, eval, identify, plan, bench,
// grid-opt. Returns 0 on success; failures print one "phyplan: error: ..."
// line to `err` and return nonzero.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace phyplan::bench

#endif  // PHYPLAN_BENCH_CLI_H_
