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

#ifndef ACTMEM_PLANNER_HPP_
#define ACTMEM_PLANNER_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "actmem/layer.hpp"
#include "actmem/pointer_model.hpp"
#include "actmem/rational.hpp"

namespace actmem {

// An ordered chain of layers. Layers are stored unpacked; `packing` is applied
// to every layer when planning.
struct NetworkSpec {
  std::string name;
  std::vector<LayerSpec> layers;
  std::int64_t packing = 1;

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

// Checks each layer and the chaining x_out(i) = x_in(i+1), y_out(i) =
// y_in(i+1), c_out(i) = c_in(i+1). Throws ChainMismatchError on the first
// offending pair.
void validate_network(const NetworkSpec& net);

// Layer i with the network packing applied.
LayerSpec packed_layer(const NetworkSpec& net, std::size_t i);

struct LayerPlan {
  Words m_in = 0;
  Words m_out = 0;
  Words d = 0;
  Words m_min_layer = 0;
  Words input_base = 0;
  Words output_base = 0;

  friend bool operator==(const LayerPlan&, const LayerPlan&) = default;
};

struct MemoryPlan {
  std::string name;
  std::int64_t packing = 1;
  Words arena_size = 0;
  std::vector<LayerPlan> layer_plans;
  Words pingpong_size = 0;
  Words parameter_words = 0;
  double savings_activations_pct = 0.0;
  double savings_total_pct = 0.0;

  friend bool operator==(const MemoryPlan&, const MemoryPlan&) = default;
};

// Arena of max_l (m_in(l) + d_l) words. Layer 0 reads from base 0 and every
// layer writes d words below its input, modulo the arena:
//   output_base(i) = (input_base(i) - d_i) mod arena_size
//   input_base(i+1) = output_base(i)
// A layer never has more than m_in + d circularly consecutive words live, so
// the linear safety argument carries over to the ring.
MemoryPlan plan_network(const NetworkSpec& net,
                        ReadPointerModel model = ReadPointerModel::kLiveness);

// Worst adjacent pair under disjoint buffering, carries included.
Words pingpong_network(const NetworkSpec& net);

// Weights plus biases over all layers, one word per parameter.
std::int64_t count_parameters(const NetworkSpec& net);

// (baseline - planned) / baseline as an exact fraction.
Rational savings_fraction(Words baseline, Words planned);

// plan_network plus parameter words and both savings percentages.
MemoryPlan savings_report(const NetworkSpec& net,
                          ReadPointerModel model = ReadPointerModel::kLiveness);

// First layer whose m_min_layer equals the arena size.
std::size_t tightest_layer(const MemoryPlan& plan);

// Same arena, but layer `index` writes with offset d - 1. Later bases move
// with it. Used to exhibit that the planned offset cannot be reduced.
MemoryPlan with_reduced_offset(const MemoryPlan& plan, std::size_t index);

}  // namespace actmem

#endif  // ACTMEM_PLANNER_HPP_
