// Copyright 2026 The BellForge Authors
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


#include <benchmark/benchmark.h>
#include <bellforge/converters.hpp>
#include <bellforge/optimizer.hpp>
#include <bellforge/random.hpp>
#include <bellforge/schmidt_kak.hpp>

namespace bf = bellforge;

static void BM_SimulateClusterConverter(benchmark::State& state) {
  const bf::Circuit c = bf::c4_converter();
  const bf::FourQubitState t = bf::target_state(bf::Target::C4);
  for (auto _ : state) benchmark::DoNotOptimize(bf::simulate(c, t));
}
BENCHMARK(BM_SimulateClusterConverter);

static void BM_KakDecompose(benchmark::State& state) {
  bf::Rng rng(1);
  const bf::Matrix4 u = bf::haar_unitary(4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(bf::kak_decompose(u));
}
BENCHMARK(BM_KakDecompose);

static void BM_MeritGradient(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  bf::PenaltyMerit m(bf::make_bell_pairs(l), bf::target_state(bf::Target::C4), 10.0);
  bf::Rng rng(2);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  Eigen::VectorXd x(m.num_params()), g;
  for (int k = 0; k < x.size(); ++k) x(k) = uni(rng);
  for (auto _ : state) benchmark::DoNotOptimize(m.value(x, &g));
}
BENCHMARK(BM_MeritGradient)->Arg(2)->Arg(3)->Arg(4);

static void BM_SensitivityGrid(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bf::sensitivity_grid({0.0, 1.0}, {0.0, 1.0}, 0.01, {}, 1));
  }
}
BENCHMARK(BM_SensitivityGrid)->Unit(benchmark::kMillisecond);

static void BM_OptimizeGhz(benchmark::State& state) {
  bf::OptimizerConfig c;
  c.restarts = 1;
  c.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bf::optimize_success(
        bf::make_bell_pairs(2), bf::target_state(bf::Target::GHZ4), c));
  }
}
BENCHMARK(BM_OptimizeGhz)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
