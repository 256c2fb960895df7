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

#ifndef ACTMEM_SWEEP_HPP_
#define ACTMEM_SWEEP_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "actmem/oracle.hpp"
#include "actmem/planner.hpp"

namespace actmem {

// Inclusive upper bounds of the exhaustive layer domain. Lower bounds are 1
// (0 for padding). A zero max_dim gives an empty domain.
struct SweepBounds {
  std::int64_t max_dim = 6;
  std::int64_t max_kernel = 3;
  std::int64_t max_stride = 2;
  std::int64_t max_pad = 1;
  std::int64_t max_channels = 3;
  // Also enumerate q = c_in for every layer.
  bool packing = true;
  // Seeded random networks executed in-arena against the reference.
  int random_networks = 100;
  int min_layers = 3;
  int max_layers = 6;
};

// Every valid layer in the domain, groups in {1, c_in}, packing in {1, c_in}.
std::vector<LayerSpec> enumerate_sweep_layers(const SweepBounds& bounds);

// A chain of `layers` layers whose every layer stays inside `bounds`.
NetworkSpec random_network(std::mt19937_64& rng, const SweepBounds& bounds,
                           int layers);

struct NetworkCheck {
  bool bit_exact = false;
  bool clean_checked_run = false;
  // Reducing the tightest layer's offset by one was caught by the checked
  // executor.
  bool witness_detected = false;
  // Offset of the tightest layer, and whether it equals the containment
  // bound m_out - m_conv_in (output region longer than the input).
  Words tightest_offset = 0;
  bool containment_bound = false;
  std::string detail;
};

// Plans the network, runs it in-arena (unchecked and checked) against the
// reference executor and replays the tightest layer with offset d - 1.
NetworkCheck check_network(const NetworkSpec& net, std::uint64_t data_seed);

struct SweepSummary {
  std::int64_t configurations = 0;
  std::int64_t match = 0;
  std::int64_t conservative = 0;
  std::int64_t unsafe = 0;
  std::optional<LayerSpec> first_unsafe;
  std::optional<OracleReport> first_unsafe_report;

  std::int64_t networks = 0;
  std::int64_t networks_bit_exact = 0;
  std::int64_t networks_clean = 0;
  std::int64_t witnesses_detected = 0;
  // Undetected witnesses split by cause.
  std::int64_t misses_at_floor = 0;
  std::int64_t misses_containment = 0;
  std::optional<std::string> first_network_failure;

  friend bool operator==(const SweepSummary& a, const SweepSummary& b) {
    return a.configurations == b.configurations && a.match == b.match &&
           a.conservative == b.conservative && a.unsafe == b.unsafe &&
           a.first_unsafe == b.first_unsafe && a.networks == b.networks &&
           a.networks_bit_exact == b.networks_bit_exact &&
           a.networks_clean == b.networks_clean &&
           a.witnesses_detected == b.witnesses_detected &&
           a.misses_at_floor == b.misses_at_floor &&
           a.misses_containment == b.misses_containment &&
           a.first_network_failure == b.first_network_failure;
  }
};

// Layer verification fans out over OpenMP threads; results are merged in
// enumeration order so the summary does not depend on scheduling.
SweepSummary run_sweep(const SweepBounds& bounds, std::uint64_t seed,
                       ReadPointerModel model = ReadPointerModel::kLiveness);
SweepSummary run_sweep_serial(const SweepBounds& bounds, std::uint64_t seed,
                              ReadPointerModel model = ReadPointerModel::kLiveness);

std::string format_summary(const SweepSummary& summary);

}  // namespace actmem

#endif  // ACTMEM_SWEEP_HPP_
