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

// memplan: overlapped activation-buffer planner for layer-wise CNN inference.
//
//   memplan plan   <net> [--format json|text] [--ascii-map]
//   memplan verify <net> [--read-pointer liveness|velocity] [--offset-bias N]
//   memplan sweep  [--max-dim N] [--seed S] [--networks N]
//   memplan exec   <net> [--seed S] [--checked] [--reduce-tightest]

#include <cstdint>
#include <iostream>
#include <map>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "actmem/errors.hpp"
#include "actmem/executor.hpp"
#include "actmem/network_io.hpp"
#include "actmem/oracle.hpp"
#include "actmem/planner.hpp"
#include "actmem/report.hpp"
#include "actmem/sweep.hpp"

namespace {

using namespace actmem;

const std::map<std::string, ReadPointerModel> kModels = {
    {"liveness", ReadPointerModel::kLiveness},
    {"velocity", ReadPointerModel::kVelocity}};

int cmd_plan(const std::string& file, const std::string& format, bool ascii_map,
             ReadPointerModel model) {
  const NetworkSpec net = parse_network_file(file);
  const MemoryPlan plan = savings_report(net, model);
  if (format == "json") {
    std::cout << plan_to_json(plan).dump(2) << "\n";
  } else {
    std::cout << render_text(plan);
  }
  if (ascii_map) std::cout << render_ascii_map(plan);
  return 0;
}

int cmd_verify(const std::string& file, ReadPointerModel model, std::int64_t bias,
               std::int64_t max_macs) {
  const NetworkSpec net = parse_network_file(file);
  OracleLimits limits;
  limits.max_macs = max_macs;
  int unsafe = 0;
  int oversized = 0;
  std::cout << "verifying " << net.name << " with the " << to_string(model)
            << " read pointer\n";
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const LayerSpec layer = packed_layer(net, i);
    std::cout << "layer " << i + 1 << " [" << describe(layer) << "]: ";
    try {
      const Words oracle = min_safe_offset_bruteforce(layer, limits);
      const Words closed = min_offset(layer, model) + bias;
      const Verdict verdict = classify(closed, oracle);
      std::cout << to_string(verdict) << " (closed form d=" << closed
                << ", oracle d=" << oracle;
      if (verdict != Verdict::kMatch) {
        std::cout << ", gap " << (closed > oracle ? "+" : "") << closed - oracle;
      }
      std::cout << ")\n";
      if (verdict == Verdict::kUnsafe) ++unsafe;
    } catch (const SizeLimitError& e) {
      std::cout << "skipped: " << e.what()
                << " (raise --max-macs or check a scaled-down copy)\n";
      ++oversized;
    }
  }
  if (unsafe > 0) {
    std::cout << unsafe << " UNSAFE layer(s)\n";
    return 1;
  }
  return oversized > 0 ? 2 : 0;
}

int cmd_sweep(const SweepBounds& bounds, std::uint64_t seed, ReadPointerModel model) {
  const SweepSummary s = run_sweep(bounds, seed, model);
  std::cout << "seed " << seed << "\n" << format_summary(s);
  const bool failed = s.unsafe > 0 || s.networks_bit_exact != s.networks ||
                      s.networks_clean != s.networks;
  return failed ? 1 : 0;
}

int cmd_exec(const std::string& file, std::uint64_t seed, bool checked,
             bool reduce_tightest, const std::string& weight_kind,
             std::int64_t max_macs) {
  const NetworkSpec net = parse_network_file(file);
  std::int64_t macs = 0;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const DerivedDims d = derive_dims(net.layers[i]);
    macs += d.t_len * d.block_cycles;
  }
  if (macs > max_macs) {
    throw SizeLimitError("network needs " + std::to_string(macs) +
                         " MACs, above the executor cap of " + std::to_string(max_macs));
  }
  std::mt19937_64 rng(seed);
  const Tensor input = random_input(net.layers.front(), rng);
  const NetworkWeights weights =
      weight_kind == "identity" ? identity_weights(net) : random_weights(net, rng);
  MemoryPlan plan = savings_report(net);
  if (reduce_tightest) {
    const std::size_t t = tightest_layer(plan);
    std::cout << "reducing offset of layer " << t + 1 << " from "
              << plan.layer_plans[t].d << " to " << plan.layer_plans[t].d - 1 << "\n";
    plan = with_reduced_offset(plan, t);
  }
  const Tensor expected = execute_network_reference(net, input, weights);
  try {
    const Tensor got =
        execute_network_in_arena(net, plan, input, weights, {.checked = checked});
    const bool exact = got == expected;
    std::cout << net.name << ": arena " << plan.arena_size << " words, seed " << seed
              << ", " << (checked ? "checked" : "unchecked") << ": "
              << (exact ? "bit-exact" : "MISMATCH") << "\n";
    if (got.x == input.x && got.y == input.y && got.c == input.c) {
      std::cout << "output " << (got.data == input.data ? "equals" : "differs from")
                << " input\n";
    }
    return exact ? 0 : 1;
  } catch (const ClobberError& e) {
    std::cout << e.what() << "\n";
    std::cout << "clobber: layer " << e.layer() + 1 << " block " << e.block()
              << " address " << e.address() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overlapped activation-buffer planner for layer-wise CNN inference"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  bool ascii_map = false;
  ReadPointerModel model = ReadPointerModel::kLiveness;
  std::uint64_t seed = 1;
  std::int64_t bias = 0;
  std::int64_t max_macs = OracleLimits{}.max_macs;
  bool checked = false;
  bool reduce_tightest = false;
  std::string weight_kind = "random";
  SweepBounds bounds;
  bool no_packing = false;

  auto* plan = app.add_subcommand("plan", "Plan the arena and report savings");
  plan->add_option("file", file, "Network file")->required();
  plan->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
  plan->add_flag("--ascii-map", ascii_map, "Draw the per-layer memory map");
  plan->add_option("--read-pointer", model, "Read-pointer model")
      ->transform(CLI::CheckedTransformer(kModels));

  auto* verify = app.add_subcommand("verify", "Compare closed-form offsets with the oracle");
  verify->add_option("file", file, "Network file")->required();
  verify->add_option("--read-pointer", model, "Read-pointer model")
      ->transform(CLI::CheckedTransformer(kModels));
  verify->add_option("--offset-bias", bias, "Add N words to every closed-form offset");
  verify->add_option("--max-macs", max_macs, "Oracle enumeration cap");

  auto* sweep = app.add_subcommand("sweep", "Exhaustive oracle sweep plus random networks");
  sweep->add_option("--max-dim", bounds.max_dim, "Largest x_in/y_in");
  sweep->add_option("--max-channels", bounds.max_channels, "Largest c_in/c_out");
  sweep->add_option("--seed", seed, "Seed for random networks");
  sweep->add_option("--networks", bounds.random_networks, "Random networks to execute");
  sweep->add_flag("--no-packing", no_packing, "Skip packed variants");
  sweep->add_option("--read-pointer", model, "Read-pointer model")
      ->transform(CLI::CheckedTransformer(kModels));

  auto* exec = app.add_subcommand("exec", "Run in-arena and compare with the reference");
  exec->add_option("file", file, "Network file")->required();
  exec->add_option("--seed", seed, "Seed for input and weights");
  exec->add_flag("--checked", checked, "Track liveness and report the first clobber");
  exec->add_flag("--reduce-tightest", reduce_tightest,
                 "Run with the tightest layer's offset reduced by one");
  exec->add_option("--weights", weight_kind, "random or identity")
      ->check(CLI::IsMember({"random", "identity"}));
  exec->add_option("--max-macs", max_macs, "Executor cap");

  CLI11_PARSE(app, argc, argv);
  bounds.packing = !no_packing;

  try {
    if (*plan) return cmd_plan(file, format, ascii_map, model);
    if (*verify) return cmd_verify(file, model, bias, max_macs);
    if (*sweep) return cmd_sweep(bounds, seed, model);
    if (*exec) return cmd_exec(file, seed, checked, reduce_tightest, weight_kind, max_macs);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
