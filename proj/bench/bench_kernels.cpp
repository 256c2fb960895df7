/* Copyright 2026 The actmem Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Serial reference loops against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "actmem/pointer_model.hpp"
#include "actmem/sweep.hpp"

namespace {

using actmem::LayerSpec;

// One 64-channel 3x3 layer at the given resolution.
LayerSpec stacked_layer(std::int64_t n) { return LayerSpec{n, n, 64, 3, 3, 1, 1, 1, 1, 64}; }

void BM_MinOffsetSerial(benchmark::State& state) {
  const LayerSpec l = stacked_layer(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(actmem::min_offset_serial(l));
}

void BM_MinOffsetParallel(benchmark::State& state) {
  const LayerSpec l = stacked_layer(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(actmem::min_offset(l));
}

actmem::SweepBounds small_sweep() {
  actmem::SweepBounds b;
  b.max_dim = 4;
  b.random_networks = 10;
  return b;
}

void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(actmem::run_sweep_serial(small_sweep(), 42));
  }
}

void BM_SweepParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(actmem::run_sweep(small_sweep(), 42));
}

}  // namespace

BENCHMARK(BM_MinOffsetSerial)->Arg(64)->Arg(320)->Arg(640)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinOffsetParallel)->Arg(64)->Arg(320)->Arg(640)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
