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

#ifndef ACTMEM_REPORT_HPP_
#define ACTMEM_REPORT_HPP_

#include <cstdint>
#include <string>

#include "json.hpp"

#include "actmem/planner.hpp"

namespace actmem {

// Stable report fields:
//   name, packing, arena_size, pingpong_size, parameter_words,
//   savings_activations_pct, savings_total_pct,
//   layers: [{index, m_in, m_out, d, m_min_layer, input_base, output_base}]
// Layer indices are 1-based.
nlohmann::ordered_json plan_to_json(const MemoryPlan& plan);
MemoryPlan plan_from_json(const nlohmann::ordered_json& doc);

// "412.2k", "27.5M": one decimal, matching how word counts are tabulated.
std::string human_words(std::int64_t words);

std::string render_text(const MemoryPlan& plan);

// One bar per layer across the arena: 'i' input, 'o' output, '#' where the
// two regions overlap, '.' free.
std::string render_ascii_map(const MemoryPlan& plan, int width = 64);

}  // namespace actmem

#endif  // ACTMEM_REPORT_HPP_
