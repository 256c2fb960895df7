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

#include "actmem/planner.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "actmem/errors.hpp"

namespace actmem {

namespace {

Words wrap(Words address, Words size) {
  const Words r = address % size;
  return r < 0 ? r + size : r;
}

void assign_bases(MemoryPlan& plan) {
  Words base = 0;
  for (LayerPlan& lp : plan.layer_plans) {
    lp.input_base = base;
    lp.output_base = wrap(base - lp.d, plan.arena_size);
    base = lp.output_base;
  }
}

auto layer_key(const LayerSpec& l) {
  return std::make_tuple(l.x_in, l.y_in, l.c_in, l.k_x, l.k_y, l.s_x, l.s_y,
                         l.p_x, l.p_y, l.c_out, l.groups,
                         l.residual_carry_words, l.packing);
}

}  // namespace

void validate_network(const NetworkSpec& net) {
  if (net.layers.empty()) {
    throw InvalidLayerError("network '" + net.name + "' has no layers");
  }
  if (net.packing < 1) {
    throw PackingMismatchError("packing must be >= 1");
  }
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    validate(packed_layer(net, i));
  }
  for (std::size_t i = 0; i + 1 < net.layers.size(); ++i) {
    const LayerSpec& a = net.layers[i];
    const LayerSpec& b = net.layers[i + 1];
    const DerivedDims da = derive_dims(a);
    if (da.x_out != b.x_in || da.y_out != b.y_in || a.c_out != b.c_in) {
      throw ChainMismatchError(
          i, "chain mismatch between layers " + std::to_string(i + 1) + "->" +
                 std::to_string(i + 2) + ": layer " + std::to_string(i + 1) +
                 " produces " + std::to_string(da.x_out) + "x" +
                 std::to_string(da.y_out) + "x" + std::to_string(a.c_out) +
                 " but layer " + std::to_string(i + 2) + " expects " +
                 std::to_string(b.x_in) + "x" + std::to_string(b.y_in) + "x" +
                 std::to_string(b.c_in));
    }
  }
}

LayerSpec packed_layer(const NetworkSpec& net, std::size_t i) {
  return apply_packing(net.layers.at(i), net.packing);
}

MemoryPlan plan_network(const NetworkSpec& net, ReadPointerModel model) {
  validate_network(net);
  MemoryPlan plan;
  plan.name = net.name;
  plan.packing = net.packing;
  // Stacked networks repeat the same layer many times; scan each shape once.
  std::map<decltype(layer_key(LayerSpec{})), Words> offsets;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const LayerSpec layer = packed_layer(net, i);
    const DerivedDims dims = derive_dims(layer);
    auto [it, fresh] = offsets.try_emplace(layer_key(layer), 0);
    if (fresh) it->second = min_offset(layer, model);
    LayerPlan lp;
    lp.m_in = dims.m_in;
    lp.m_out = dims.m_out;
    lp.d = it->second;
    lp.m_min_layer = lp.m_in + lp.d;
    plan.arena_size = std::max(plan.arena_size, lp.m_min_layer);
    plan.layer_plans.push_back(lp);
  }
  assign_bases(plan);
  plan.pingpong_size = pingpong_network(net);
  return plan;
}

Words pingpong_network(const NetworkSpec& net) {
  validate_network(net);
  Words worst = 0;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const DerivedDims d = derive_dims(packed_layer(net, i));
    worst = std::max(worst, d.m_in + d.m_out);
  }
  return worst;
}

std::int64_t count_parameters(const NetworkSpec& net) {
  std::int64_t total = 0;
  for (const LayerSpec& l : net.layers) total += parameter_count(l);
  return total;
}

Rational savings_fraction(Words baseline, Words planned) {
  if (baseline <= 0) return Rational(0);
  return Rational(baseline - planned, baseline);
}

MemoryPlan savings_report(const NetworkSpec& net, ReadPointerModel model) {
  MemoryPlan plan = plan_network(net, model);
  plan.parameter_words = ceil_div(count_parameters(net), net.packing);
  plan.savings_activations_pct =
      savings_fraction(plan.pingpong_size, plan.arena_size).to_double() * 100.0;
  plan.savings_total_pct =
      savings_fraction(plan.parameter_words + plan.pingpong_size,
                       plan.parameter_words + plan.arena_size)
          .to_double() *
      100.0;
  return plan;
}

std::size_t tightest_layer(const MemoryPlan& plan) {
  for (std::size_t i = 0; i < plan.layer_plans.size(); ++i) {
    if (plan.layer_plans[i].m_min_layer == plan.arena_size) return i;
  }
  return 0;
}

MemoryPlan with_reduced_offset(const MemoryPlan& plan, std::size_t index) {
  MemoryPlan reduced = plan;
  LayerPlan& lp = reduced.layer_plans.at(index);
  lp.d -= 1;
  lp.m_min_layer -= 1;
  assign_bases(reduced);
  return reduced;
}

}  // namespace actmem
