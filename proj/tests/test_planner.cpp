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

#include <random>

#include "actmem/errors.hpp"
#include "actmem/planner.hpp"
#include "actmem/sweep.hpp"

using namespace actmem;

namespace {

LayerSpec conv(std::int64_t x, std::int64_t c_in, std::int64_t k, std::int64_t s,
               std::int64_t p, std::int64_t c_out) {
  return LayerSpec{x, x, c_in, k, k, s, s, p, p, c_out};
}

NetworkSpec lockstep(std::int64_t n) {
  return NetworkSpec{"lockstep", {conv(n, 1, 1, 1, 0, 1), conv(n, 1, 1, 1, 0, 1)}, 1};
}

}  // namespace

TEST_CASE("lockstep network needs one word beyond the input") {
  for (std::int64_t n : {2, 10, 1000}) {
    const MemoryPlan plan = plan_network(lockstep(n));
    CHECK(plan.arena_size == n * n + 1);
    CHECK(plan.pingpong_size == 2 * n * n);
    CHECK(savings_fraction(plan.pingpong_size, plan.arena_size) ==
          Rational(n * n - 1, 2 * n * n));
  }
}

TEST_CASE("padded 3x3 pair") {
  const NetworkSpec net{"p", {conv(4, 1, 3, 1, 1, 1), conv(4, 1, 3, 1, 1, 1)}, 1};
  const MemoryPlan plan = plan_network(net);
  CHECK(plan.arena_size == 21);
  CHECK(plan.pingpong_size == 32);
  REQUIRE(plan.layer_plans.size() == 2);
  CHECK(plan.layer_plans[0].d == 5);
  CHECK(plan.layer_plans[0].input_base == 0);
  CHECK(plan.layer_plans[0].output_base == 16);
  CHECK(plan.layer_plans[1].input_base == 16);
  CHECK(plan.layer_plans[1].output_base == 11);
}

TEST_CASE("ping-pong takes the worst adjacent pair") {
  const NetworkSpec net{"pp", {conv(2, 1, 1, 1, 0, 2), conv(2, 2, 1, 2, 0, 2)}, 1};
  CHECK(pingpong_network(net) == 12);
}

TEST_CASE("parameter counts") {
  CHECK(count_parameters(lockstep(4)) == 4);
  const NetworkSpec vd{"vd", {conv(8, 64, 3, 1, 1, 64)}, 1};
  CHECK(count_parameters(vd) == 36928);
}

TEST_CASE("savings") {
  CHECK(savings_fraction(32, 21) == Rational(11, 32));
  CHECK(savings_fraction(10, 10) == Rational(0));
  const NetworkSpec net{"p", {conv(4, 1, 3, 1, 1, 1), conv(4, 1, 3, 1, 1, 1)}, 1};
  const MemoryPlan r = savings_report(net);
  CHECK(r.parameter_words == 20);
  CHECK(r.savings_activations_pct == doctest::Approx(100.0 * 11 / 32));
  CHECK(r.savings_total_pct == doctest::Approx(100.0 * 11 / 52));
}

TEST_CASE("packed parameters round up") {
  const NetworkSpec net{"q", {conv(2, 2, 1, 1, 0, 2)}, 2};
  CHECK(count_parameters(net) == 6);
  CHECK(savings_report(net).parameter_words == 3);
}

TEST_CASE("chain mismatch names the pair") {
  const NetworkSpec net{"bad", {conv(8, 1, 1, 1, 0, 8), conv(8, 4, 1, 1, 0, 4)}, 1};
  try {
    validate_network(net);
    FAIL("expected ChainMismatchError");
  } catch (const ChainMismatchError& e) {
    CHECK(e.first_layer() == 0);
    CHECK(std::string(e.what()).find("1->2") != std::string::npos);
  }
  CHECK_THROWS_AS(plan_network(net), ChainMismatchError);
}

TEST_CASE("packing must divide every layer") {
  const NetworkSpec net{"q", {conv(2, 2, 1, 1, 0, 3), conv(2, 3, 1, 1, 0, 2)}, 2};
  CHECK_THROWS_AS(plan_network(net), PackingMismatchError);
}

TEST_CASE("tightest layer and reduced offset") {
  const NetworkSpec net{"t", {conv(4, 1, 1, 1, 0, 1), conv(4, 1, 3, 1, 1, 1)}, 1};
  const MemoryPlan plan = plan_network(net);
  CHECK(tightest_layer(plan) == 1);
  const MemoryPlan reduced = with_reduced_offset(plan, 1);
  CHECK(reduced.arena_size == plan.arena_size);
  CHECK(reduced.layer_plans[1].d == plan.layer_plans[1].d - 1);
  CHECK(reduced.layer_plans[0] == plan.layer_plans[0]);
}

TEST_CASE("random plans respect the layer bounds") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const NetworkSpec net = random_network(rng, {}, 3 + i % 4);
    const MemoryPlan plan = plan_network(net);
    CHECK(plan.arena_size <= plan.pingpong_size);
    Words prev_out = 0;
    for (std::size_t k = 0; k < plan.layer_plans.size(); ++k) {
      const LayerPlan& lp = plan.layer_plans[k];
      CHECK(lp.m_min_layer <= plan.arena_size);
      CHECK(lp.m_out <= lp.m_min_layer);
      CHECK(lp.input_base == prev_out);
      CHECK(lp.output_base == ((lp.input_base - lp.d) % plan.arena_size +
                               plan.arena_size) % plan.arena_size);
      prev_out = lp.output_base;
    }
  }
}
