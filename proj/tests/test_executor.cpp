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
#include <random>

#include "actmem/errors.hpp"
#include "actmem/executor.hpp"
#include "actmem/planner.hpp"
#include "actmem/sweep.hpp"

using namespace actmem;

namespace {

LayerSpec conv(std::int64_t x, std::int64_t c_in, std::int64_t k, std::int64_t s,
               std::int64_t p, std::int64_t c_out) {
  return LayerSpec{x, x, c_in, k, k, s, s, p, p, c_out};
}

NetworkSpec mixed() {
  LayerSpec dw = conv(6, 3, 3, 2, 1, 3);
  dw.groups = 3;
  return NetworkSpec{"mixed",
                     {conv(6, 2, 3, 1, 1, 3), dw, conv(3, 3, 1, 1, 0, 2),
                      conv(3, 2, 2, 1, 1, 3)},
                     1};
}

Tensor run_both(const NetworkSpec& net, std::uint64_t seed, Tensor* reference) {
  std::mt19937_64 rng(seed);
  const Tensor in = random_input(net.layers.front(), rng);
  const NetworkWeights w = random_weights(net, rng);
  *reference = execute_network_reference(net, in, w);
  return execute_network_in_arena(net, plan_network(net), in, w, {true});
}

}  // namespace

TEST_CASE("identity weights pass the input through") {
  LayerSpec dw = conv(5, 3, 3, 1, 1, 3);
  dw.groups = 3;
  const NetworkSpec net{"id", {conv(5, 3, 1, 1, 0, 3), dw}, 1};
  std::mt19937_64 rng(1);
  const Tensor in = random_input(net.layers.front(), rng);
  const NetworkWeights w = identity_weights(net);
  CHECK(execute_network_reference(net, in, w) == in);
  CHECK(execute_network_in_arena(net, plan_network(net), in, w, {true}) == in);
  const NetworkSpec widen{"w", {conv(2, 1, 1, 1, 0, 2)}, 1};
  CHECK_THROWS_AS(identity_weights(widen), DimensionMismatchError);
}

TEST_CASE("zero kernels give zeros or the bias") {
  const NetworkSpec net{"z", {conv(4, 2, 3, 1, 1, 3)}, 1};
  std::mt19937_64 rng(2);
  const Tensor in = random_input(net.layers.front(), rng);
  NetworkWeights w = random_weights(net, rng);
  std::fill(w[0].kernel.begin(), w[0].kernel.end(), 0);
  w[0].bias = {0, 0, 0};
  Tensor out = execute_network_reference(net, in, w);
  CHECK(std::all_of(out.data.begin(), out.data.end(), [](Value v) { return v == 0; }));
  w[0].bias = {5, -1, 7};
  out = execute_network_in_arena(net, plan_network(net), in, w);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    CHECK(out.data[i] == w[0].bias[i % 3]);
  }
}

TEST_CASE("known convolution") {
  // 3x3 all-ones kernel over a padded 3x3 image of ones counts the taps.
  const NetworkSpec net{"ones", {conv(3, 1, 3, 1, 1, 1)}, 1};
  const Tensor in{3, 3, 1, std::vector<Value>(9, 1)};
  const NetworkWeights w{{std::vector<Value>(9, 1), {}}};
  const Tensor out = execute_network_in_arena(net, plan_network(net), in, w, {true});
  CHECK(out.data == std::vector<Value>{4, 6, 4, 6, 9, 6, 4, 6, 4});
}

TEST_CASE("in-arena run is bit-exact and deterministic") {
  Tensor ref;
  const Tensor a = run_both(mixed(), 17, &ref);
  CHECK(a == ref);
  Tensor ref2;
  CHECK(run_both(mixed(), 17, &ref2) == a);
  CHECK(ref2 == ref);
}

TEST_CASE("wide values wrap identically") {
  const NetworkSpec net = mixed();
  std::mt19937_64 rng(3);
  const Value big = std::int64_t{1} << 60;
  const Tensor in = random_input(net.layers.front(), rng, -big, big);
  const NetworkWeights w = random_weights(net, rng, -big, big);
  CHECK(execute_network_in_arena(net, plan_network(net), in, w) ==
        execute_network_reference(net, in, w));
}

TEST_CASE("residual carry survives the layer") {
  NetworkSpec net = mixed();
  net.layers[1].residual_carry_words = 5;
  net.layers[2].residual_carry_words = 2;
  Tensor ref;
  CHECK(run_both(net, 4, &ref) == ref);
}

TEST_CASE("packed network") {
  const NetworkSpec net{"q",
                        {conv(4, 2, 3, 1, 1, 4), conv(4, 4, 1, 2, 0, 2),
                         conv(2, 2, 3, 1, 1, 2)},
                        2};
  Tensor ref;
  CHECK(run_both(net, 5, &ref) == ref);
}

TEST_CASE("reduced offset is caught") {
  const NetworkSpec net{"p", {conv(4, 1, 3, 1, 1, 1), conv(4, 1, 3, 1, 1, 1)}, 1};
  const MemoryPlan plan = plan_network(net);
  const MemoryPlan bad = with_reduced_offset(plan, tightest_layer(plan));
  std::mt19937_64 rng(6);
  const Tensor in = random_input(net.layers.front(), rng);
  const NetworkWeights w = random_weights(net, rng);
  try {
    execute_network_in_arena(net, bad, in, w, {true});
    FAIL("expected ClobberError");
  } catch (const ClobberError& e) {
    CHECK(e.layer() == 0);
    CHECK(e.block() >= 0);
  }
}

TEST_CASE("mismatched inputs are rejected") {
  const NetworkSpec net = mixed();
  std::mt19937_64 rng(7);
  const NetworkWeights w = random_weights(net, rng);
  const Tensor wrong{2, 2, 1, std::vector<Value>(4, 0)};
  CHECK_THROWS_AS(execute_network_reference(net, wrong, w), DimensionMismatchError);
  const Tensor in = random_input(net.layers.front(), rng);
  CHECK_THROWS_AS(execute_network_reference(net, in, NetworkWeights{}),
                  DimensionMismatchError);
}
