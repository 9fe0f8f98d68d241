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

#include "phyplan/adapt/grid_optimum.h"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>

#include "phyplan/worldsim/simulator.h"

namespace phyplan::adapt {
namespace {

std::string cache_key(const worldsim::TaskDef& t, int resolution, worldsim::Fidelity f) {
  std::ostringstream k;
  k.precision(17);
  k << static_cast<int>(t.kind) << ' ' << resolution << ' ' << static_cast<int>(f);
  for (const auto& d : t.action_dims) k << ' ' << d.lo << ' ' << d.hi;
  const auto& g = t.geometry;
  k << ' ' << g.table_height << ' ' << g.pivot_xy.transpose() << ' ' << g.wedge_contact.transpose()
    << ' ' << g.gap_start << ' ' << g.gap_end << ' ' << g.bridge_length << ' ' << g.table_edge;
  k << ' ' << t.goal.center.transpose() << ' ' << t.goal.radius << ' ' << t.d_ref;
  const auto& p = t.physics;
  k << ' ' << p.g << ' ' << p.mu << ' ' << p.l << ' ' << p.e << ' ' << p.e_c << ' ' << p.m1 << ' '
    << p.m2;
  return k.str();
}

std::mutex cache_mutex;
std::map<std::string, GridOptimum> cache;

double grid_value(const worldsim::ActionDim& d, int i, int resolution) {
  return d.lo + (d.hi - d.lo) * i / (resolution - 1);
}

}  // namespace

GridOptimum grid_search(const worldsim::TaskDef& task, int resolution, worldsim::Fidelity fidelity) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
  task.validate();
  const std::string key = cache_key(task, resolution, fidelity);
  {
    const std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const std::size_t dims = task.num_dims();
  long total = 1;
  for (std::size_t d = 0; d < dims; ++d) total *= resolution;

  // Grid index -> action, last dimension fastest.
  auto action_at = [&](long idx) {
    std::vector<double> a(dims);
    for (std::size_t d = dims; d-- > 0;) {
      a[d] = grid_value(task.action_dims[d], static_cast<int>(idx % resolution), resolution);
      idx /= resolution;
    }
    return a;
  };

  std::vector<double> rewards(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < total; ++i) {
    rewards[static_cast<std::size_t>(i)] =
        worldsim::simulate_reward(task, action_at(i), {}, fidelity);
  }
  long best = 0;
  for (long i = 1; i < total; ++i) {
    if (rewards[static_cast<std::size_t>(i)] > rewards[static_cast<std::size_t>(best)]) best = i;
  }
  GridOptimum r{rewards[static_cast<std::size_t>(best)], action_at(best)};
  const std::lock_guard lock(cache_mutex);
  cache.emplace(key, r);
  return r;
}

double grid_optimum(const worldsim::TaskDef& task, int resolution) {
  return grid_search(task, resolution).reward;
}

}  // namespace phyplan::adapt
