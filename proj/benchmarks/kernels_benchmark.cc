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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "phyplan/numerics/dense_network.h"
#include "phyplan/numerics/network_kernels.h"
#include "phyplan/numerics/reference_kernels.h"

namespace {

using namespace phyplan::numerics;

struct Fixture {
  DenseNetwork net;
  Eigen::MatrixXd inputs;
  Eigen::VectorXd direction;

  explicit Fixture(Eigen::Index n) {
    const std::vector<std::size_t> sizes = skill_network_sizes(2, 2);
    net = xavier_init(sizes, 1);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    inputs.resize(2, n);
    for (Eigen::Index i = 0; i < inputs.size(); ++i) inputs.data()[i] = u(rng);
    direction = Eigen::Vector2d(0.0, 1.0);
  }
};

// Squared outputs plus squared time derivatives, like a PINN loss.
double head(const DirectionalBatch& out, Eigen::Index, BatchAdjoint& adj, std::span<double>) {
  adj.d_value = 2.0 * out.value;
  adj.d_derivative = out.derivative.size() ? Eigen::MatrixXd(2.0 * out.derivative)
                                           : Eigen::MatrixXd();
  return out.value.squaredNorm() + out.derivative.squaredNorm();
}

void BM_ForwardBatched(benchmark::State& state) {
  const Fixture f(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(forward_batch(f.net, f.inputs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ForwardSerialReference(benchmark::State& state) {
  const Fixture f(state.range(0));
  for (auto _ : state) {
    for (Eigen::Index c = 0; c < f.inputs.cols(); ++c) {
      const double x[] = {f.inputs(0, c), f.inputs(1, c)};
      benchmark::DoNotOptimize(reference::forward(f.net, x));
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LossGradientBatched(benchmark::State& state) {
  const Fixture f(state.range(0));
  std::vector<double> g(f.net.num_parameters());
  for (auto _ : state) {
    benchmark::DoNotOptimize(accumulate_loss_gradient(f.net, f.inputs, &f.direction, head, g, {}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LossGradientSerialReference(benchmark::State& state) {
  const Fixture f(state.range(0));
  std::vector<double> g(f.net.num_parameters());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::accumulate_loss_gradient(f.net, f.inputs, &f.direction, head, g, {}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_ForwardBatched)->Arg(128)->Arg(1024)->Arg(4096);
BENCHMARK(BM_ForwardSerialReference)->Arg(128)->Arg(1024)->Arg(4096);
BENCHMARK(BM_LossGradientBatched)->Arg(128)->Arg(1024)->Arg(4096);
BENCHMARK(BM_LossGradientSerialReference)->Arg(128)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
