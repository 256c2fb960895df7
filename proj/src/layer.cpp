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

#include "actmem/layer.hpp"

#include <sstream>

#include "actmem/errors.hpp"
#include "actmem/rational.hpp"

namespace actmem {

namespace {

void require(bool ok, const LayerSpec& layer, const char* what) {
  if (!ok) {
    throw InvalidLayerError(std::string("invalid layer (") + describe(layer) +
                            "): " + what);
  }
}

}  // namespace

void validate(const LayerSpec& l) {
  require(l.x_in >= 1 && l.y_in >= 1, l, "input dimensions must be >= 1");
  require(l.c_in >= 1 && l.c_out >= 1, l, "channel counts must be >= 1");
  require(l.k_x >= 1 && l.k_y >= 1, l, "kernel dimensions must be >= 1");
  require(l.s_x >= 1 && l.s_y >= 1, l, "strides must be >= 1");
  require(l.p_x >= 0 && l.p_y >= 0, l, "padding must be >= 0");
  require(l.k_x <= l.x_in + 2 * l.p_x, l, "k_x exceeds padded input width");
  require(l.k_y <= l.y_in + 2 * l.p_y, l, "k_y exceeds padded input height");
  require(l.groups >= 1, l, "groups must be >= 1");
  require(l.c_in % l.groups == 0 && l.c_out % l.groups == 0, l,
          "groups must divide c_in and c_out");
  require(l.residual_carry_words >= 0, l, "residual_carry_words must be >= 0");
  if (l.packing < 1 || l.c_in % l.packing != 0) {
    throw PackingMismatchError("packing factor " + std::to_string(l.packing) +
                               " does not divide c_in=" +
                               std::to_string(l.c_in));
  }
}

DerivedDims derive_dims(const LayerSpec& l) {
  validate(l);
  DerivedDims d;
  d.x_out = floor_div(2 * l.p_x + l.x_in - l.k_x, l.s_x) + 1;
  d.y_out = floor_div(2 * l.p_y + l.y_in - l.k_y, l.s_y) + 1;
  d.m_conv_in = l.x_in * l.y_in * l.c_in / l.packing;
  d.m_in = d.m_conv_in + ceil_div(l.residual_carry_words, l.packing);
  d.t_len = d.x_out * d.y_out * l.c_out;
  d.m_out = ceil_div(d.t_len, l.packing);
  d.block_cycles = (l.c_in / l.groups) * l.k_x * l.k_y;
  return d;
}

LayerSpec apply_packing(const LayerSpec& layer, std::int64_t q) {
  if (q < 1 || layer.c_in % q != 0) {
    throw PackingMismatchError("packing factor " + std::to_string(q) +
                               " does not divide c_in=" +
                               std::to_string(layer.c_in));
  }
  LayerSpec packed = layer;
  packed.packing = q;
  validate(packed);
  return packed;
}

Words ping_pong_pair_memory(const LayerSpec& layer) {
  const DerivedDims d = derive_dims(layer);
  return d.m_in + d.m_out;
}

std::int64_t parameter_count(const LayerSpec& l) {
  return l.k_x * l.k_y * (l.c_in / l.groups) * l.c_out + l.c_out;
}

std::string describe(const LayerSpec& l) {
  std::ostringstream os;
  os << l.x_in << 'x' << l.y_in << 'x' << l.c_in << " k" << l.k_x << 'x'
     << l.k_y << " s" << l.s_x << 'x' << l.s_y << " p" << l.p_x << 'x' << l.p_y
     << " -> " << l.c_out;
  if (l.groups != 1) os << " g" << l.groups;
  if (l.residual_carry_words != 0) os << " carry" << l.residual_carry_words;
  if (l.packing != 1) os << " q" << l.packing;
  return os.str();
}

}  // namespace actmem
