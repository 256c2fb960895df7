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

#include "actmem/oracle.hpp"

#include <algorithm>

#include "actmem/rational.hpp"

namespace actmem {

void check_oracle_size(const LayerSpec& layer, const OracleLimits& limits) {
  const DerivedDims d = derive_dims(layer);
  const std::int64_t macs = d.t_len * d.block_cycles;
  if (macs > limits.max_macs) {
    throw SizeLimitError("layer " + describe(layer) + " needs " +
                         std::to_string(macs) +
                         " MACs to enumerate, above the oracle cap of " +
                         std::to_string(limits.max_macs) +
                         "; use the closed-form planner for this size");
  }
}

AccessTrace trace_layer(const LayerSpec& layer, const OracleLimits& limits) {
  check_oracle_size(layer, limits);
  const DerivedDims d = derive_dims(layer);
  if (d.t_len * d.block_cycles > limits.max_trace_reads) {
    throw SizeLimitError("trace of " + describe(layer) +
                         " exceeds the materialised trace cap");
  }
  AccessTrace trace;
  for_each_read(layer, [&](std::int64_t block, Words address) {
    trace.reads.push_back({block, address});
  });
  trace.writes.reserve(static_cast<std::size_t>(d.t_len));
  for (std::int64_t k = 0; k < d.t_len; ++k) trace.writes.push_back({k, k});
  return trace;
}

std::vector<std::int64_t> last_read_blocks(const LayerSpec& layer,
                                           const OracleLimits& limits) {
  check_oracle_size(layer, limits);
  const DerivedDims d = derive_dims(layer);
  std::vector<std::int64_t> last(static_cast<std::size_t>(d.m_conv_in), -1);
  // Blocks arrive in increasing order, so the final store is the last reader.
  for_each_read(layer, [&](std::int64_t block, Words address) {
    last[static_cast<std::size_t>(address)] = block;
  });
  return last;
}

std::optional<UnsafeWrite> first_unsafe_write(const LayerSpec& layer, Words d,
                                              const OracleLimits& limits) {
  const DerivedDims dims = derive_dims(layer);
  const std::vector<std::int64_t> last = last_read_blocks(layer, limits);
  for (std::int64_t k = 0; k < dims.t_len; ++k) {
    const Words word = k / layer.packing - d;
    if (word < 0) continue;
    if (word >= dims.m_conv_in) {
      return UnsafeWrite{k, word,
                         word < dims.m_in ? "write lands on residual carry"
                                          : "write leaves the m_in + d footprint"};
    }
    if (last[static_cast<std::size_t>(word)] > k) {
      return UnsafeWrite{k, word, "write destroys an input word read by block " +
                                      std::to_string(last[static_cast<std::size_t>(word)])};
    }
  }
  return std::nullopt;
}

Words min_safe_offset_bruteforce(const LayerSpec& layer,
                                 const OracleLimits& limits) {
  const DerivedDims dims = derive_dims(layer);
  const std::vector<std::int64_t> last = last_read_blocks(layer, limits);
  const std::int64_t q = layer.packing;
  // The output has to end at or below the end of the convolution input.
  Words d = std::max<Words>(1, dims.m_out - dims.m_conv_in);
  for (Words a = 0; a < dims.m_conv_in; ++a) {
    const std::int64_t reader = last[static_cast<std::size_t>(a)];
    // Word a is claimed by output word a + d at block q * (a + d), which must
    // not precede its last reader.
    if (reader >= 0) d = std::max(d, ceil_div(reader, q) - a);
  }
  return d;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kMatch:
      return "match";
    case Verdict::kConservative:
      return "conservative";
    case Verdict::kUnsafe:
      return "UNSAFE";
  }
  return "?";
}

Verdict classify(Words d_closed_form, Words d_oracle) {
  if (d_closed_form < d_oracle) return Verdict::kUnsafe;
  if (d_closed_form > d_oracle) return Verdict::kConservative;
  return Verdict::kMatch;
}

OracleReport verify_layer(const LayerSpec& layer, ReadPointerModel model,
                          const OracleLimits& limits) {
  OracleReport report;
  report.model = model;
  report.d_oracle = min_safe_offset_bruteforce(layer, limits);
  report.d_closed_form = min_offset(layer, model);
  report.verdict = classify(report.d_closed_form, report.d_oracle);
  return report;
}

}  // namespace actmem
