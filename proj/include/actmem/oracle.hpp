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

#ifndef ACTMEM_ORACLE_HPP_
#define ACTMEM_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "actmem/errors.hpp"
#include "actmem/layer.hpp"
#include "actmem/pointer_model.hpp"

namespace actmem {

// Caps on exhaustive enumeration. Anything bigger belongs to the closed form.
struct OracleLimits {
  // t_len * block_cycles, padded taps included.
  std::int64_t max_macs = std::int64_t{1} << 28;
  // Materialised reads in an AccessTrace.
  std::int64_t max_trace_reads = std::int64_t{1} << 24;
};

struct AccessTrace {
  struct Read {
    std::int64_t block;
    Words address;
    friend bool operator==(const Read&, const Read&) = default;
  };
  struct Write {
    std::int64_t block;
    std::int64_t index;
    friend bool operator==(const Write&, const Write&) = default;
  };
  std::vector<Read> reads;
  std::vector<Write> writes;
};

void check_oracle_size(const LayerSpec& layer, const OracleLimits& limits);

// Walks the six-deep convolution loop nest (y_out, x_out, c_out, k_y, k_x,
// c_in) and calls visit(block, word_address) for every tap that lands on a
// real input pixel. Padded taps produce no read.
template <typename Visit>
void for_each_read(const LayerSpec& l, Visit&& visit) {
  const DerivedDims d = derive_dims(l);
  const std::int64_t cig = l.c_in / l.groups;
  const std::int64_t cog = l.c_out / l.groups;
  std::int64_t block = 0;
  for (std::int64_t yo = 0; yo < d.y_out; ++yo) {
    for (std::int64_t xo = 0; xo < d.x_out; ++xo) {
      for (std::int64_t co = 0; co < l.c_out; ++co) {
        const std::int64_t channel0 = (co / cog) * cig;
        for (std::int64_t ky = 0; ky < l.k_y; ++ky) {
          const std::int64_t y = yo * l.s_y - l.p_y + ky;
          for (std::int64_t kx = 0; kx < l.k_x; ++kx) {
            const std::int64_t x = xo * l.s_x - l.p_x + kx;
            if (y < 0 || y >= l.y_in || x < 0 || x >= l.x_in) continue;
            const std::int64_t pixel = (y * l.x_in + x) * l.c_in + channel0;
            for (std::int64_t ci = 0; ci < cig; ++ci) {
              visit(block, (pixel + ci) / l.packing);
            }
          }
        }
        ++block;
      }
    }
  }
}

AccessTrace trace_layer(const LayerSpec& layer, const OracleLimits& limits = {});

// Last block reading each convolution-input word, -1 if never read.
std::vector<std::int64_t> last_read_blocks(const LayerSpec& layer,
                                           const OracleLimits& limits = {});

struct UnsafeWrite {
  std::int64_t block;
  Words address;  // relative to the input base
  std::string reason;
};

// Simulates every output commit with p_w0 = -d against the enumerated
// last-read table. A packed word is claimed by its first entry. Writes at or
// above the end of the convolution input fall outside the m_in + d footprint
// (or onto the residual carry) and count as unsafe.
std::optional<UnsafeWrite> first_unsafe_write(const LayerSpec& layer, Words d,
                                              const OracleLimits& limits = {});

// Least d >= 1 with no unsafe write, derived per input word from its
// last-reader block.
Words min_safe_offset_bruteforce(const LayerSpec& layer,
                                 const OracleLimits& limits = {});

enum class Verdict { kMatch, kConservative, kUnsafe };

const char* to_string(Verdict verdict);

struct OracleReport {
  Words d_oracle = 0;
  Words d_closed_form = 0;
  Verdict verdict = Verdict::kMatch;
  ReadPointerModel model = ReadPointerModel::kLiveness;
};

Verdict classify(Words d_closed_form, Words d_oracle);

OracleReport verify_layer(const LayerSpec& layer,
                          ReadPointerModel model = ReadPointerModel::kLiveness,
                          const OracleLimits& limits = {});

}  // namespace actmem

#endif  // ACTMEM_ORACLE_HPP_
