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

#include "actmem/sweep.hpp"

#include <numeric>
#include <sstream>

#include "actmem/errors.hpp"
#include "actmem/executor.hpp"

namespace actmem {

namespace {

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

SweepSummary run_sweep_impl(const SweepBounds& bounds, std::uint64_t seed,
                            ReadPointerModel model, bool parallel) {
  SweepSummary summary;
  const std::vector<LayerSpec> layers = enumerate_sweep_layers(bounds);
  const auto n_layers = static_cast<std::int64_t>(layers.size());
  std::vector<OracleReport> reports(layers.size());
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (std::int64_t i = 0; i < n_layers; ++i) {
    reports[static_cast<std::size_t>(i)] =
        verify_layer(layers[static_cast<std::size_t>(i)], model);
  }
  summary.configurations = n_layers;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    switch (reports[i].verdict) {
      case Verdict::kMatch:
        ++summary.match;
        break;
      case Verdict::kConservative:
        ++summary.conservative;
        break;
      case Verdict::kUnsafe:
        if (summary.unsafe++ == 0) {
          summary.first_unsafe = layers[i];
          summary.first_unsafe_report = reports[i];
        }
        break;
    }
  }

  if (n_layers == 0 || bounds.random_networks <= 0) return summary;
  std::mt19937_64 rng(seed);
  std::vector<NetworkSpec> nets;
  std::vector<std::uint64_t> data_seeds;
  for (int i = 0; i < bounds.random_networks; ++i) {
    const int depth = static_cast<int>(uniform(rng, bounds.min_layers, bounds.max_layers));
    nets.push_back(random_network(rng, bounds, depth));
    data_seeds.push_back(rng());
  }
  std::vector<NetworkCheck> checks(nets.size());
  const auto n_nets = static_cast<std::int64_t>(nets.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::int64_t i = 0; i < n_nets; ++i) {
    const auto u = static_cast<std::size_t>(i);
    checks[u] = check_network(nets[u], data_seeds[u]);
  }
  summary.networks = n_nets;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const NetworkCheck& c = checks[i];
    summary.networks_bit_exact += c.bit_exact ? 1 : 0;
    summary.networks_clean += c.clean_checked_run ? 1 : 0;
    summary.witnesses_detected += c.witness_detected ? 1 : 0;
    if (!c.witness_detected) {
      if (c.tightest_offset == 1) {
        ++summary.misses_at_floor;
      } else if (c.containment_bound) {
        ++summary.misses_containment;
      }
    }
    if (!summary.first_network_failure &&
        (!c.bit_exact || !c.clean_checked_run || !c.witness_detected)) {
      summary.first_network_failure =
          "network " + std::to_string(i) + " (" + nets[i].name + "): " + c.detail;
    }
  }
  return summary;
}

}  // namespace

std::vector<LayerSpec> enumerate_sweep_layers(const SweepBounds& b) {
  std::vector<LayerSpec> out;
  for (std::int64_t x = 1; x <= b.max_dim; ++x)
  for (std::int64_t y = 1; y <= b.max_dim; ++y)
  for (std::int64_t c = 1; c <= b.max_channels; ++c)
  for (std::int64_t co = 1; co <= b.max_channels; ++co)
  for (std::int64_t kx = 1; kx <= b.max_kernel; ++kx)
  for (std::int64_t ky = 1; ky <= b.max_kernel; ++ky)
  for (std::int64_t sx = 1; sx <= b.max_stride; ++sx)
  for (std::int64_t sy = 1; sy <= b.max_stride; ++sy)
  for (std::int64_t px = 0; px <= b.max_pad; ++px)
  for (std::int64_t py = 0; py <= b.max_pad; ++py) {
    if (kx > x + 2 * px || ky > y + 2 * py) continue;
    std::vector<std::int64_t> group_options{1};
    if (c > 1 && co % c == 0) group_options.push_back(c);
    std::vector<std::int64_t> packing_options{1};
    if (c > 1 && b.packing) packing_options.push_back(c);
    for (std::int64_t g : group_options) {
      for (std::int64_t q : packing_options) {
        out.push_back(LayerSpec{x, y, c, kx, ky, sx, sy, px, py, co, g, 0, q});
      }
    }
  }
  return out;
}

NetworkSpec random_network(std::mt19937_64& rng, const SweepBounds& b, int depth) {
  NetworkSpec net;
  std::int64_t x = uniform(rng, 1, b.max_dim);
  std::int64_t y = uniform(rng, 1, b.max_dim);
  std::int64_t c = uniform(rng, 1, b.max_channels);
  for (int i = 0; i < depth; ++i) {
    LayerSpec l;
    DerivedDims d;
    // Padding can grow the map past max_dim; redraw until the output fits.
    do {
      l = LayerSpec{};
      l.x_in = x;
      l.y_in = y;
      l.c_in = c;
      l.p_x = uniform(rng, 0, b.max_pad);
      l.p_y = uniform(rng, 0, b.max_pad);
      l.k_x = uniform(rng, 1, std::min(b.max_kernel, x + 2 * l.p_x));
      l.k_y = uniform(rng, 1, std::min(b.max_kernel, y + 2 * l.p_y));
      l.s_x = uniform(rng, 1, b.max_stride);
      l.s_y = uniform(rng, 1, b.max_stride);
      l.c_out = uniform(rng, 1, b.max_channels);
      if (c > 1 && l.c_out % c == 0 && uniform(rng, 0, 1) == 1) l.groups = c;
      d = derive_dims(l);
    } while (d.x_out > b.max_dim || d.y_out > b.max_dim);
    net.layers.push_back(l);
    x = d.x_out;
    y = d.y_out;
    c = l.c_out;
  }
  std::int64_t common = 0;
  for (const LayerSpec& l : net.layers) common = std::gcd(common, l.c_in);
  if (b.packing && common > 1 && uniform(rng, 0, 1) == 1) net.packing = common;
  std::ostringstream name;
  name << "random-" << depth << "L-q" << net.packing;
  net.name = name.str();
  return net;
}

NetworkCheck check_network(const NetworkSpec& net, std::uint64_t data_seed) {
  NetworkCheck check;
  std::mt19937_64 rng(data_seed);
  const Tensor input = random_input(net.layers.front(), rng);
  const NetworkWeights weights = random_weights(net, rng);
  const MemoryPlan plan = savings_report(net);
  const Tensor expected = execute_network_reference(net, input, weights);
  check.bit_exact = execute_network_in_arena(net, plan, input, weights) == expected;
  if (!check.bit_exact) check.detail = "in-arena output differs from reference; ";
  try {
    check.clean_checked_run =
        execute_network_in_arena(net, plan, input, weights, {.checked = true}) == expected;
  } catch (const ClobberError& e) {
    check.detail += std::string("planned arena clobbered: ") + e.what() + "; ";
  }
  const std::size_t tight = tightest_layer(plan);
  const DerivedDims td = derive_dims(packed_layer(net, tight));
  check.tightest_offset = plan.layer_plans[tight].d;
  check.containment_bound = check.tightest_offset == td.m_out - td.m_conv_in;
  const MemoryPlan reduced = with_reduced_offset(plan, tight);
  try {
    execute_network_in_arena(net, reduced, input, weights, {.checked = true});
    check.detail += "tightest layer " + std::to_string(tight + 1) + " (d=" +
                    std::to_string(plan.layer_plans[tight].d) +
                    ") ran clean with offset d-1";
  } catch (const ClobberError&) {
    check.witness_detected = true;
  }
  return check;
}

SweepSummary run_sweep(const SweepBounds& bounds, std::uint64_t seed,
                       ReadPointerModel model) {
  return run_sweep_impl(bounds, seed, model, true);
}

SweepSummary run_sweep_serial(const SweepBounds& bounds, std::uint64_t seed,
                              ReadPointerModel model) {
  return run_sweep_impl(bounds, seed, model, false);
}

std::string format_summary(const SweepSummary& s) {
  std::ostringstream os;
  os << "layer configurations: " << s.configurations << "\n"
     << "  match:        " << s.match << "\n"
     << "  conservative: " << s.conservative << "\n"
     << "  UNSAFE:       " << s.unsafe << "\n";
  if (s.first_unsafe) {
    os << "  first UNSAFE: " << describe(*s.first_unsafe) << " (closed form d="
       << s.first_unsafe_report->d_closed_form
       << ", oracle d=" << s.first_unsafe_report->d_oracle << ")\n";
  }
  os << "random networks: " << s.networks << "\n"
     << "  bit-exact in arena:      " << s.networks_bit_exact << "\n"
     << "  clean checked runs:      " << s.networks_clean << "\n"
     << "  offset d-1 caught:       " << s.witnesses_detected << "\n";
  if (s.witnesses_detected < s.networks) {
    os << "    missed at d=1:         " << s.misses_at_floor << "\n"
       << "    missed, output-bound:  " << s.misses_containment << "\n";
  }
  if (s.first_network_failure) {
    os << "  first failure: " << *s.first_network_failure << "\n";
  }
  return os.str();
}

}  // namespace actmem
