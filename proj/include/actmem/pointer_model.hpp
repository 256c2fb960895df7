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

#ifndef ACTMEM_POINTER_MODEL_HPP_
#define ACTMEM_POINTER_MODEL_HPP_

#include <cstdint>

#include "actmem/layer.hpp"
#include "actmem/rational.hpp"

namespace actmem {

// Which read-pointer formula bounds the write pointer.
//
// kVelocity is the closed form built from average pointer velocities: an
// x-position term, a y-position term that skips s_y - 1 rows, minus top
// padding and a side-padding offset, clamped at zero.
//
// kLiveness is the exact lowest input address read by any block after the
// current one, evaluated in closed form from the window geometry. Once the
// last window has been issued it parks at the end of the convolution input.
//
// The two agree on stride-1 lockstep layers. Elsewhere the velocity form can
// be both too loose and too tight; kLiveness is what the planner uses.
enum class ReadPointerModel { kLiveness, kVelocity };

const char* to_string(ReadPointerModel model);

struct PointerParams {
  // Words per MAC cycle.
  Rational v_pw;
  Rational v_pr;
  Words p_w0 = 0;
  Words p_r0 = 0;
};

PointerParams pointer_params(const LayerSpec& layer, Words p_w0 = 0,
                             Words p_r0 = 0);

// floor(v_pw * t) + p_w0: the write pointer advances one word per finished
// block (or per q blocks when packed).
Words write_pointer_at(Cycle t, const LayerSpec& layer, Words p_w0);

// Velocity-form read pointer at cycle t.
Words read_pointer_at(Cycle t, const LayerSpec& layer, Words p_r0);

// Liveness-form read pointer at cycle t.
Words live_read_pointer_at(Cycle t, const LayerSpec& layer, Words p_r0);

// Lowest unpacked entry address read by any block >= first_block, or the
// convolution input size when no such read exists.
std::int64_t lowest_read_from(const LayerSpec& layer, std::int64_t first_block);

// Least d >= 1 such that, with p_r0 = 0 and p_w0 = -d, the write pointer stays
// strictly below the read pointer at every cycle. The write pointer and the
// liveness read pointer are constant within a block. The velocity read pointer
// can only fall inside a block (its side-padding term rounds up), so each
// block is checked at its last cycle.
// min_offset runs the block scan with OpenMP; min_offset_serial is the
// single-threaded reference loop.
Words min_offset(const LayerSpec& layer,
                 ReadPointerModel model = ReadPointerModel::kLiveness);
Words min_offset_serial(const LayerSpec& layer,
                        ReadPointerModel model = ReadPointerModel::kLiveness);

// m_in + min_offset. The write pointer ends strictly below the read pointer,
// which never exceeds the end of the convolution input, so the output region
// [-d, m_out - d) lies inside [-d, m_in) and m_in + d words hold the pair.
Words min_layer_memory(const LayerSpec& layer,
                       ReadPointerModel model = ReadPointerModel::kLiveness);

}  // namespace actmem

#endif  // ACTMEM_POINTER_MODEL_HPP_
