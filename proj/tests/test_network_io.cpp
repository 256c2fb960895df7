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
#include <string>

#include "actmem/errors.hpp"
#include "actmem/network_io.hpp"
#include "actmem/planner.hpp"
#include "actmem/report.hpp"
#include "actmem/sweep.hpp"

using namespace actmem;

TEST_CASE("later layers inherit their input shape") {
  const NetworkSpec net = parse_network_text(R"(
name: two
layers:
  - {x_in: 6, y_in: 4, c_in: 2, k_x: 3, k_y: 3, s_x: 1, s_y: 1, p_x: 1, p_y: 1, c_out: 3}
  - {k_x: 1, k_y: 1, s_x: 2, s_y: 2, p_x: 0, p_y: 0, c_out: 3, groups: 3}
)",
                                             "two.net");
  CHECK(net.name == "two");
  CHECK(net.packing == 1);
  REQUIRE(net.layers.size() == 2);
  CHECK(net.layers[1].x_in == 6);
  CHECK(net.layers[1].y_in == 4);
  CHECK(net.layers[1].c_in == 3);
  CHECK(net.layers[1].groups == 3);
}

TEST_CASE("JSON syntax is accepted") {
  const NetworkSpec net = parse_network_text(
      R"({"name": "j", "packing": 1, "layers": [{"x_in": 2, "y_in": 2, "c_in": 1,
          "k_x": 1, "k_y": 1, "s_x": 1, "s_y": 1, "p_x": 0, "p_y": 0, "c_out": 1}]})",
      "j.json");
  CHECK(net.layers.size() == 1);
}

TEST_CASE("errors carry a location and a field") {
  try {
    parse_network_text("layers:\n  - {x_in: 2, y_in: 2, c_in: 1, k_x: 1}\n", "f.net");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.field() == "layers[0].k_y");
    CHECK(std::string(e.what()).rfind("f.net:2:", 0) == 0);
  }
  CHECK_THROWS_AS(parse_network_text("layers: []\n", "e.net"), ParseError);
  CHECK_THROWS_AS(parse_network_text("bogus: 1\nlayers: []\n", "e.net"), ParseError);
  CHECK_THROWS_AS(parse_network_text("layers:\n  - {x_in: two}\n", "e.net"), ParseError);
  CHECK_THROWS_AS(parse_network_text("layers: [\n", "e.net"), ParseError);
}

TEST_CASE("stated shapes must chain") {
  const std::string text = R"(layers:
  - {x_in: 8, y_in: 8, c_in: 1, k_x: 1, k_y: 1, s_x: 1, s_y: 1, p_x: 0, p_y: 0, c_out: 8}
  - {c_in: 4, k_x: 1, k_y: 1, s_x: 1, s_y: 1, p_x: 0, p_y: 0, c_out: 4}
)";
  try {
    parse_network_text(text, "c.net");
    FAIL("expected ChainMismatchError");
  } catch (const ChainMismatchError& e) {
    const std::string msg = e.what();
    CHECK(msg.rfind("c.net:3:", 0) == 0);
    CHECK(msg.find("layers[1].c_in") != std::string::npos);
    CHECK(msg.find("1->2") != std::string::npos);
  }
}

TEST_CASE("network text round-trips") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    NetworkSpec net = random_network(rng, {}, 4);
    net.layers.front().residual_carry_words = i % 3;
    CHECK(parse_network_text(network_to_yaml(net), "rt") == net);
  }
}

TEST_CASE("plan JSON round-trips") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const MemoryPlan plan = savings_report(random_network(rng, {}, 3));
    CHECK(plan_from_json(plan_to_json(plan)) == plan);
  }
}

TEST_CASE("plan JSON field names") {
  const NetworkSpec net{
      "id", {LayerSpec{16, 16, 1, 1, 1, 1, 1, 0, 0, 1}}, 1};
  const nlohmann::ordered_json doc = plan_to_json(savings_report(net));
  CHECK(doc["arena_size"] == 257);
  CHECK(doc["pingpong_size"] == 512);
  CHECK(doc["layers"][0]["index"] == 1);
  CHECK(doc["layers"][0]["d"] == 1);
  CHECK(doc.contains("savings_total_pct"));
}

TEST_CASE("text rendering") {
  CHECK(human_words(999) == "999");
  CHECK(human_words(26255487) == "26.3M");
  CHECK(human_words(1500) == "1.5k");
  const NetworkSpec net{
      "id", {LayerSpec{16, 16, 1, 1, 1, 1, 1, 0, 0, 1}}, 1};
  const MemoryPlan plan = savings_report(net);
  const std::string text = render_text(plan);
  CHECK(text.find("257") != std::string::npos);
  const std::string map = render_ascii_map(plan, 32);
  CHECK(map.find('i') != std::string::npos);
  CHECK(map.find('o') != std::string::npos);
}
