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

#ifndef ACTMEM_EXECUTOR_HPP_
#define ACTMEM_EXECUTOR_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "actmem/planner.hpp"

namespace actmem {

// Integer activations. Arithmetic wraps modulo 2^64, which keeps both
// executors bit-exact for any data range.
using Value = std::int64_t;

// Depth-first feature map: index = (y * x + x_pos) * c + channel.
struct Tensor {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t c = 0;
  std::vector<Value> data;

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

struct LayerWeights {
  // [c_out][k_y][k_x][c_in / groups]
  std::vector<Value> kernel;
  // Empty, or one value per output channel.
  std::vector<Value> bias;
};

using NetworkWeights = std::vector<LayerWeights>;

Tensor random_input(const LayerSpec& first_layer, std::mt19937_64& rng,
                    Value lo = -8, Value hi = 8);
NetworkWeights random_weights(const NetworkSpec& net, std::mt19937_64& rng,
                              Value lo = -8, Value hi = 8, bool with_bias = true);

// Centre-tap identity kernels, no bias. Needs c_in == c_out on every layer.
NetworkWeights identity_weights(const NetworkSpec& net);

// Two disjoint buffers, swapped after every layer. Output rows are computed
// in parallel.
Tensor execute_network_reference(const NetworkSpec& net, const Tensor& input,
                                 const NetworkWeights& weights);

struct ExecOptions {
  // Track per-word liveness and throw ClobberError on the first write that
  // destroys data the running layer still needs.
  bool checked = false;
};

// Runs every layer inside one flat arena of plan.arena_size words, reading
// from input_base and committing each output entry at the end of its block
// to output_base + k / packing (mod arena_size). The first entry written to a
// packed word claims the whole word. Residual carry words are filled with a
// marker before each layer and must survive it.
Tensor execute_network_in_arena(const NetworkSpec& net, const MemoryPlan& plan,
                                const Tensor& input,
                                const NetworkWeights& weights,
                                const ExecOptions& options = {});

}  // namespace actmem

#endif  // ACTMEM_EXECUTOR_HPP_
