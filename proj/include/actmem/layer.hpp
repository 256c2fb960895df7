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

#ifndef ACTMEM_LAYER_HPP_
#define ACTMEM_LAYER_HPP_

#include <cstdint>
#include <string>

namespace actmem {

// All addresses and sizes are counted in memory words. With packing q > 1 a
// word holds q consecutive channel entries of one pixel.
using Words = std::int64_t;
// MAC cycle index within one layer, starting at 0.
using Cycle = std::int64_t;

// Geometry of one convolution layer. Activations are stored depth-first:
// channels of a pixel are contiguous, then pixels along x, then rows along y.
struct LayerSpec {
  std::int64_t x_in = 1;
  std::int64_t y_in = 1;
  std::int64_t c_in = 1;
  std::int64_t k_x = 1;
  std::int64_t k_y = 1;
  std::int64_t s_x = 1;
  std::int64_t s_y = 1;
  std::int64_t p_x = 0;
  std::int64_t p_y = 0;
  std::int64_t c_out = 1;
  // 1 is a standard convolution, groups == c_in a depthwise one.
  std::int64_t groups = 1;
  // Identity-connection data (in entries) that stays live across the layer.
  // It is placed directly above the convolution input.
  std::int64_t residual_carry_words = 0;
  // Data entries per memory word. Set through apply_packing().
  std::int64_t packing = 1;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct DerivedDims {
  std::int64_t x_out = 0;
  std::int64_t y_out = 0;
  // Convolution input only, without the residual carry.
  Words m_conv_in = 0;
  // Convolution input plus residual carry.
  Words m_in = 0;
  Words m_out = 0;
  // MAC cycles spent on one output entry: (c_in / groups) * k_x * k_y.
  Cycle block_cycles = 0;
  // Number of output entries, i.e. the number of blocks in the layer.
  std::int64_t t_len = 0;

  friend bool operator==(const DerivedDims&, const DerivedDims&) = default;
};

// Throws InvalidLayerError (or PackingMismatchError) naming the first
// violated constraint.
void validate(const LayerSpec& layer);

DerivedDims derive_dims(const LayerSpec& layer);

// Re-expresses the layer in words of q entries. Requires q | c_in so that a
// word never straddles two pixels.
LayerSpec apply_packing(const LayerSpec& layer, std::int64_t q);

// Input plus output held in disjoint regions.
Words ping_pong_pair_memory(const LayerSpec& layer);

// Weights plus biases, one word per parameter (unpacked).
std::int64_t parameter_count(const LayerSpec& layer);

std::string describe(const LayerSpec& layer);

}  // namespace actmem

#endif  // ACTMEM_LAYER_HPP_
