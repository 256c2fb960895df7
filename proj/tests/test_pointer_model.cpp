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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "actmem/layer.hpp"
#include "actmem/pointer_model.hpp"
#include "naive_oracle.hpp"
#include "sample_layers.hpp"

using namespace actmem;

namespace {

LayerSpec conv(std::int64_t x, std::int64_t c_in, std::int64_t k, std::int64_t s,
               std::int64_t p, std::int64_t c_out) {
  return LayerSpec{x, x, c_in, k, k, s, s, p, p, c_out};
}

const LayerSpec kPadded3x3 = conv(4, 1, 3, 1, 1, 1);

}  // namespace

TEST_CASE("write pointer advances once per block") {
  CHECK(write_pointer_at(0, kPadded3x3, 0) == 0);
  CHECK(write_pointer_at(17, kPadded3x3, 0) == 1);
  CHECK(write_pointer_at(53, kPadded3x3, -5) == 0);
  CHECK(write_pointer_at(8, kPadded3x3, 0) == 0);
  CHECK(write_pointer_at(9, kPadded3x3, 0) == 1);
}

TEST_CASE("packed write pointer advances once per q blocks") {
  const LayerSpec l = apply_packing(conv(4, 64, 3, 1, 1, 64), 4);
  const PointerParams p = pointer_params(l);
  CHECK(p.v_pw == Rational(1, 2304));
  CHECK(write_pointer_at(2303, l, 0) == 0);
  CHECK(write_pointer_at(2304, l, 0) == 1);
}

TEST_CASE("velocity read pointer") {
  // Top padding pulls the raw value negative; it clamps to the initial offset.
  CHECK(read_pointer_at(0, kPadded3x3, 0) == 0);
  CHECK(read_pointer_at(0, kPadded3x3, 3) == 3);
  const LayerSpec lockstep = conv(4, 1, 1, 1, 0, 1);
  CHECK(read_pointer_at(7, lockstep, 0) == 7);
  CHECK(read_pointer_at(45, kPadded3x3, 0) == 1);
}

TEST_CASE("liveness read pointer is the lowest address still to be read") {
  const naive::Layout lay = naive::walk(kPadded3x3);
  CHECK(naive::lowest_read_from(kPadded3x3, lay, 6) == 1);
  CHECK(live_read_pointer_at(45, kPadded3x3, 0) == 1);
  CHECK(live_read_pointer_at(0, kPadded3x3, 0) == 0);
  // After the last block nothing is read again.
  CHECK(live_read_pointer_at(15 * 9, kPadded3x3, 0) == 16);
}

TEST_CASE("closed-form lowest read matches enumeration") {
  for (const LayerSpec& l : sample_layers(1500)) {
    const naive::Layout lay = naive::walk(l);
    for (std::int64_t k = 0; k <= lay.blocks; ++k) {
      INFO(describe(l), " block ", k);
      REQUIRE(lowest_read_from(l, k) == naive::lowest_read_from(l, lay, k));
    }
  }
}

TEST_CASE("minimum offset examples") {
  CHECK(min_offset(conv(4, 1, 1, 1, 0, 1)) == 1);
  // Two outputs per input pixel: the output region outgrows the input.
  CHECK(min_offset(conv(2, 1, 1, 1, 0, 2)) == 4);
  CHECK(min_offset(kPadded3x3) == 5);
  CHECK(min_layer_memory(conv(4, 1, 1, 1, 0, 1)) == 17);
  CHECK(min_layer_memory(kPadded3x3) == 21);
  CHECK(min_layer_memory(conv(2, 1, 1, 1, 0, 2)) == 8);
}

TEST_CASE("packed pointwise layer needs one word") {
  CHECK(min_offset(apply_packing(conv(4, 2, 1, 1, 0, 2), 2)) == 1);
  CHECK(min_offset(apply_packing(conv(4, 1, 1, 1, 0, 1), 1)) == 1);
}

TEST_CASE("lockstep layers need exactly one extra word") {
  for (std::int64_t n : {1, 2, 3, 7, 10, 64, 1000}) {
    for (std::int64_t c : {1, 3}) {
      LayerSpec l = conv(n, c, 1, 1, 0, c);
      l.groups = c;
      CAPTURE(n);
      CAPTURE(c);
      CHECK(min_offset(l) == 1);
      CHECK(min_layer_memory(l) == n * n * c + 1);
    }
  }
}

TEST_CASE("liveness read pointer never moves backwards") {
  for (const LayerSpec& l : sample_layers(1500)) {
    const DerivedDims d = derive_dims(l);
    Words prev = live_read_pointer_at(0, l, 0);
    for (Cycle t = 1; t <= d.t_len * d.block_cycles; ++t) {
      const Words now = live_read_pointer_at(t, l, 0);
      INFO(describe(l), " t=", t);
      REQUIRE(now >= prev);
      prev = now;
    }
  }
}

TEST_CASE("velocity read pointer can move backwards under stride 2") {
  // A row break with s_x * W > X subtracts more than the x term added.
  bool found = false;
  for (const LayerSpec& l : sample_layers(4000)) {
    const DerivedDims d = derive_dims(l);
    for (Cycle t = 1; t <= d.t_len * d.block_cycles && !found; ++t) {
      if (read_pointer_at(t, l, 0) < read_pointer_at(t - 1, l, 0)) found = true;
    }
    if (found) break;
  }
  CHECK(found);
}

TEST_CASE("offset and memory bounds") {
  for (const LayerSpec& l : sample_layers(3000)) {
    const DerivedDims d = derive_dims(l);
    const Words dmin = min_offset(l);
    const Words m = min_layer_memory(l);
    INFO(describe(l));
    CHECK(dmin >= 1);
    CHECK(m == d.m_in + dmin);
    CHECK(d.m_in < m);
    CHECK(d.m_out <= m);
    CHECK(m <= ping_pong_pair_memory(l));
  }
}

TEST_CASE("checking block starts is enough") {
  // Both pointers are constant inside a block, so scanning every cycle gives
  // the same offset as scanning block starts.
  for (const LayerSpec& l : sample_layers(400)) {
    const DerivedDims d = derive_dims(l);
    for (ReadPointerModel model :
         {ReadPointerModel::kLiveness, ReadPointerModel::kVelocity}) {
      Words worst = 0;
      for (Cycle t = 0; t < d.t_len * d.block_cycles; ++t) {
        const Words w = write_pointer_at(t, l, 0);
        const Words r = model == ReadPointerModel::kLiveness
                            ? live_read_pointer_at(t, l, 0)
                            : read_pointer_at(t, l, 0);
        worst = std::max(worst, w - r + 1);
      }
      INFO(describe(l), " ", std::string(to_string(model)));
      CHECK(min_offset_serial(l, model) == std::max<Words>(1, worst));
    }
  }
}

TEST_CASE("parallel scan equals serial scan") {
  for (const LayerSpec& l : sample_layers(500)) {
    CHECK(min_offset(l) == min_offset_serial(l));
    CHECK(min_offset(l, ReadPointerModel::kVelocity) ==
          min_offset_serial(l, ReadPointerModel::kVelocity));
  }
  const LayerSpec big = conv(64, 16, 3, 1, 1, 16);
  CHECK(min_offset(big) == min_offset_serial(big));
  CHECK(min_offset(big, ReadPointerModel::kVelocity) ==
        min_offset_serial(big, ReadPointerModel::kVelocity));
}

TEST_CASE("closed form equals the naive offset search") {
  for (const LayerSpec& l : sample_layers(2000, 11)) {
    INFO(describe(l));
    CHECK(min_offset(l) == naive::min_offset(l));
  }
}
