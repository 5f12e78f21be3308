// Copyright 2026 The egalseq Authors
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


// Serial and OpenMP brute-force scans against each other and against the
// branch-and-bound solver.

#include <random>

#include <benchmark/benchmark.h>

#include "egalseq/oracle.hpp"
#include "egalseq/rules.hpp"
#include "egalseq/solver.hpp"

namespace {

using namespace egalseq;

Election instance(std::size_t agents, std::size_t levels) {
  oracle::RandomElectionSpec spec;
  spec.agents = agents;
  spec.levels = levels;
  spec.min_candidates = spec.max_candidates = 5;
  spec.max_utility = 3;
  spec.min_k = spec.max_k = 2;
  std::mt19937_64 rng(agents * 131 + levels);
  return oracle::gen_random(spec, rng);
}

oracle::EnumerationBudget roomy() {
  return {100'000'000, oracle::EnumerationBudget::OnExceed::kError};
}

void BM_BruteSerial(benchmark::State& state) {
  const Election e = instance(8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_rule(e, RuleId::kLex, roomy()));
}

void BM_BruteParallel(benchmark::State& state) {
  const Election e = instance(8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::brute_rule_parallel(e, RuleId::kLex, roomy()));
  }
}

void BM_Solver(benchmark::State& state) {
  const Election e = instance(8, static_cast<std::size_t>(state.range(0)));
  solver::SolveConfig config;
  config.winner_cap = 1'000'000;
  for (auto _ : state) benchmark::DoNotOptimize(rules::rule_exact(e, RuleId::kLex, config));
}

void BM_Greedy(benchmark::State& state) {
  const Election e = instance(100, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rules::rule_greedy(e));
}

}  // namespace

BENCHMARK(BM_BruteSerial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteParallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solver)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Greedy)->RangeMultiplier(2)->Range(5, 40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
