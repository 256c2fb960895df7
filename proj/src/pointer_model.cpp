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

#include "actmem/pointer_model.hpp"

#include <algorithm>

namespace actmem {

namespace {

// Below this many blocks the OpenMP fork costs more than the scan.
constexpr std::int64_t kParallelBlockThreshold = 1 << 16;

// Layer constants hoisted out of the per-block scan. Addresses here are in
// unpacked entries.
struct Geometry {
  explicit Geometry(const LayerSpec& l) : layer(l), dims(derive_dims(l)) {
    x_in = l.x_in;
    c_in = l.c_in;
    cig = l.c_in / l.groups;
    cog = l.c_out / l.groups;
    row_entries = l.x_in * l.c_in;
    block = dims.block_cycles;
    pixel_cycles = l.c_out * block;
    row_cycles = dims.x_out * pixel_cycles;
    side_skip = std::max<std::int64_t>(0, dims.x_out * l.s_x - l.x_in) *
                (l.s_x * l.c_in);
    conv_entries = l.x_in * l.y_in * l.c_in;

    // Windows that touch at least one real pixel form a contiguous range of
    // columns and rows.
    col_first = l.p_x >= l.k_x ? floor_div(l.p_x - l.k_x, l.s_x) + 1 : 0;
    col_last = std::min(dims.x_out - 1, floor_div(l.x_in + l.p_x - 1, l.s_x));
    row_first = l.p_y >= l.k_y ? floor_div(l.p_y - l.k_y, l.s_y) + 1 : 0;
    row_last = std::min(dims.y_out - 1, floor_div(l.y_in + l.p_y - 1, l.s_y));
  }

  std::int64_t window_base(std::int64_t row, std::int64_t col) const {
    const std::int64_t y0 = std::max<std::int64_t>(0, row * layer.s_y - layer.p_y);
    const std::int64_t x0 = std::max<std::int64_t>(0, col * layer.s_x - layer.p_x);
    return y0 * row_entries + x0 * c_in;
  }

  // Velocity form, unpacked entries, p_r0 = 0.
  std::int64_t velocity_read(Cycle t) const {
    const std::int64_t x_term = (t / pixel_cycles) * (layer.s_x * c_in);
    const std::int64_t y_term = (t / row_cycles) * ((layer.s_y - 1) * row_entries);
    const std::int64_t top_padding = row_entries * layer.p_y;
    const std::int64_t side_offset = ceil_div(t, row_cycles) * side_skip;
    return std::max<std::int64_t>(0, x_term + y_term - top_padding - side_offset);
  }

  std::int64_t lowest_read_from(std::int64_t first) const {
    std::int64_t best = conv_entries;
    if (first >= dims.t_len || col_first > col_last || row_first > row_last) {
      return best;
    }
    const std::int64_t pixel = first / layer.c_out;
    const std::int64_t co = first % layer.c_out;
    const std::int64_t row = pixel / dims.x_out;
    const std::int64_t col = pixel % dims.x_out;
    const bool row_live = row >= row_first && row <= row_last;
    if (row_live && col >= col_first && col <= col_last) {
      best = std::min(best, window_base(row, col) + (co / cog) * cig);
    }
    if (row_live) {
      const std::int64_t next_col = std::max(col + 1, col_first);
      if (next_col <= col_last) best = std::min(best, window_base(row, next_col));
    }
    const std::int64_t next_row = std::max(row + 1, row_first);
    if (next_row <= row_last) {
      best = std::min(best, window_base(next_row, col_first));
    }
    return best;
  }

  // Write minus lowest read (packed words) during block k, for p_w0 = p_r0.
  std::int64_t gap(std::int64_t k, ReadPointerModel model) const {
    const std::int64_t q = layer.packing;
    const std::int64_t read = model == ReadPointerModel::kLiveness
                                  ? lowest_read_from(k + 1)
                                  : velocity_read(k * block + block - 1);
    return k / q - read / q;
  }

  LayerSpec layer;
  DerivedDims dims;
  std::int64_t x_in, c_in, cig, cog, row_entries;
  std::int64_t block, pixel_cycles, row_cycles, side_skip, conv_entries;
  std::int64_t col_first, col_last, row_first, row_last;
};

}  // namespace

const char* to_string(ReadPointerModel model) {
  return model == ReadPointerModel::kLiveness ? "liveness" : "velocity";
}

PointerParams pointer_params(const LayerSpec& layer, Words p_w0, Words p_r0) {
  const Geometry g(layer);
  const std::int64_t q = layer.packing;
  PointerParams p;
  p.v_pw = Rational(1, q * g.block);
  p.v_pr = (Rational(layer.s_x * g.c_in, g.pixel_cycles) +
            Rational((layer.s_y - 1) * g.row_entries, g.row_cycles)) /
           Rational(q);
  p.p_w0 = p_w0;
  p.p_r0 = p_r0;
  return p;
}

Words write_pointer_at(Cycle t, const LayerSpec& layer, Words p_w0) {
  const PointerParams p = pointer_params(layer, p_w0);
  return floor_mul(p.v_pw, t) + p_w0;
}

Words read_pointer_at(Cycle t, const LayerSpec& layer, Words p_r0) {
  const Geometry g(layer);
  return g.velocity_read(t) / layer.packing + p_r0;
}

Words live_read_pointer_at(Cycle t, const LayerSpec& layer, Words p_r0) {
  const Geometry g(layer);
  return g.lowest_read_from(t / g.block + 1) / layer.packing + p_r0;
}

std::int64_t lowest_read_from(const LayerSpec& layer, std::int64_t first_block) {
  return Geometry(layer).lowest_read_from(first_block);
}

Words min_offset_serial(const LayerSpec& layer, ReadPointerModel model) {
  const Geometry g(layer);
  std::int64_t worst = 0;
  for (std::int64_t k = 0; k < g.dims.t_len; ++k) {
    worst = std::max(worst, g.gap(k, model));
  }
  return worst + 1;
}

Words min_offset(const LayerSpec& layer, ReadPointerModel model) {
  const Geometry g(layer);
  const std::int64_t blocks = g.dims.t_len;
  std::int64_t worst = 0;
#pragma omp parallel for reduction(max : worst) schedule(static) \
    if (blocks >= kParallelBlockThreshold)
  for (std::int64_t k = 0; k < blocks; ++k) {
    worst = std::max(worst, g.gap(k, model));
  }
  return worst + 1;
}

Words min_layer_memory(const LayerSpec& layer, ReadPointerModel model) {
  return derive_dims(layer).m_in + min_offset(layer, model);
}

}  // namespace actmem
