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

#include "actmem/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

#include "actmem/errors.hpp"

namespace actmem {

using json = nlohmann::ordered_json;

json plan_to_json(const MemoryPlan& plan) {
  json doc;
  doc["name"] = plan.name;
  doc["packing"] = plan.packing;
  doc["arena_size"] = plan.arena_size;
  doc["pingpong_size"] = plan.pingpong_size;
  doc["parameter_words"] = plan.parameter_words;
  doc["savings_activations_pct"] = plan.savings_activations_pct;
  doc["savings_total_pct"] = plan.savings_total_pct;
  json layers = json::array();
  for (std::size_t i = 0; i < plan.layer_plans.size(); ++i) {
    const LayerPlan& lp = plan.layer_plans[i];
    layers.push_back({{"index", i + 1},
                      {"m_in", lp.m_in},
                      {"m_out", lp.m_out},
                      {"d", lp.d},
                      {"m_min_layer", lp.m_min_layer},
                      {"input_base", lp.input_base},
                      {"output_base", lp.output_base}});
  }
  doc["layers"] = std::move(layers);
  return doc;
}

MemoryPlan plan_from_json(const json& doc) {
  try {
    MemoryPlan plan;
    plan.name = doc.at("name").get<std::string>();
    plan.packing = doc.at("packing").get<std::int64_t>();
    plan.arena_size = doc.at("arena_size").get<Words>();
    plan.pingpong_size = doc.at("pingpong_size").get<Words>();
    plan.parameter_words = doc.at("parameter_words").get<Words>();
    plan.savings_activations_pct = doc.at("savings_activations_pct").get<double>();
    plan.savings_total_pct = doc.at("savings_total_pct").get<double>();
    for (const json& row : doc.at("layers")) {
      LayerPlan lp;
      lp.m_in = row.at("m_in").get<Words>();
      lp.m_out = row.at("m_out").get<Words>();
      lp.d = row.at("d").get<Words>();
      lp.m_min_layer = row.at("m_min_layer").get<Words>();
      lp.input_base = row.at("input_base").get<Words>();
      lp.output_base = row.at("output_base").get<Words>();
      plan.layer_plans.push_back(lp);
    }
    return plan;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed plan report: ") + e.what());
  }
}

std::string human_words(std::int64_t words) {
  char buf[32];
  if (words >= 1'000'000) {
    std::snprintf(buf, sizeof buf, "%.1fM", static_cast<double>(words) / 1e6);
  } else if (words >= 1'000) {
    std::snprintf(buf, sizeof buf, "%.1fk", static_cast<double>(words) / 1e3);
  } else {
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(words));
  }
  return buf;
}

std::string render_text(const MemoryPlan& plan) {
  std::ostringstream os;
  char line[256];
  os << "network: " << plan.name << "  (packing " << plan.packing << ")\n";
  std::snprintf(line, sizeof line, "%6s %12s %12s %10s %12s %12s %12s\n", "layer",
                "m_in", "m_out", "d", "m_min_layer", "input_base", "output_base");
  os << line;
  for (std::size_t i = 0; i < plan.layer_plans.size(); ++i) {
    const LayerPlan& lp = plan.layer_plans[i];
    std::snprintf(line, sizeof line, "%6zu %12lld %12lld %10lld %12lld %12lld %12lld\n",
                  i + 1, static_cast<long long>(lp.m_in),
                  static_cast<long long>(lp.m_out), static_cast<long long>(lp.d),
                  static_cast<long long>(lp.m_min_layer),
                  static_cast<long long>(lp.input_base),
                  static_cast<long long>(lp.output_base));
    os << line;
  }
  os << "parameters:          " << plan.parameter_words << " words ("
     << human_words(plan.parameter_words) << ")\n";
  os << "ping-pong baseline:  " << plan.pingpong_size << " words ("
     << human_words(plan.pingpong_size) << ")\n";
  os << "overlapped arena:    " << plan.arena_size << " words ("
     << human_words(plan.arena_size) << ")\n";
  std::snprintf(line, sizeof line, "savings:             %.1f%% activations (%.1f%% total)\n",
                plan.savings_activations_pct, plan.savings_total_pct);
  os << line;
  return os.str();
}

namespace {

// Does the circular region [base, base + size) meet [lo, hi)?
bool touches(Words base, Words size, Words arena, Words lo, Words hi) {
  if (size <= 0) return false;
  if (size >= arena) return true;
  const Words end = base + size;
  if (end <= arena) return base < hi && lo < end;
  return (base < hi && lo < arena) || (0 < hi && lo < end - arena);
}

}  // namespace

std::string render_ascii_map(const MemoryPlan& plan, int width) {
  std::ostringstream os;
  const Words arena = plan.arena_size;
  if (arena <= 0 || width <= 0) return {};
  const Words cells = std::min<Words>(width, arena);
  os << "arena " << arena << " words, " << cells << " cells ('i' input, 'o' output, "
     << "'#' overlap)\n";
  for (std::size_t i = 0; i < plan.layer_plans.size(); ++i) {
    const LayerPlan& lp = plan.layer_plans[i];
    std::string bar(static_cast<std::size_t>(cells), '.');
    for (Words c = 0; c < cells; ++c) {
      const Words lo = c * arena / cells;
      const Words hi = (c + 1) * arena / cells;
      const bool in = touches(lp.input_base, lp.m_in, arena, lo, hi);
      const bool out = touches(lp.output_base, lp.m_out, arena, lo, hi);
      bar[static_cast<std::size_t>(c)] = in && out ? '#' : in ? 'i' : out ? 'o' : '.';
    }
    char label[32];
    std::snprintf(label, sizeof label, "L%-4zu |", i + 1);
    os << label << bar << "|\n";
  }
  return os.str();
}

}  // namespace actmem
