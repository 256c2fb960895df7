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

#include "actmem/network_io.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <optional>
#include <sstream>

#include "actmem/errors.hpp"

namespace actmem {

namespace {

constexpr std::array<const char*, 13> kLayerKeys = {
    "x_in", "y_in", "c_in",  "k_x",    "k_y",
    "s_x",  "s_y",  "p_x",   "p_y",    "c_out",
    "groups", "residual_carry_words", "packing"};

[[noreturn]] void fail(const std::string& source, const YAML::Mark& mark,
                       const std::string& field, const std::string& what) {
  const int line = mark.line + 1;
  const int column = mark.column + 1;
  throw ParseError(line, column, field,
                   source + ":" + std::to_string(line) + ":" +
                       std::to_string(column) + ": " + field + ": " + what);
}

std::int64_t read_int(const std::string& source, const YAML::Node& node,
                      const std::string& field) {
  if (!node.IsScalar()) fail(source, node.Mark(), field, "expected an integer");
  try {
    return node.as<std::int64_t>();
  } catch (const YAML::Exception&) {
    fail(source, node.Mark(), field,
         "expected an integer, got '" + node.Scalar() + "'");
  }
}

std::optional<std::int64_t> optional_int(const std::string& source,
                                         const YAML::Node& map,
                                         const std::string& key,
                                         const std::string& prefix) {
  const YAML::Node node = map[key];
  if (!node) return std::nullopt;
  return read_int(source, node, prefix + key);
}

std::int64_t required_int(const std::string& source, const YAML::Node& map,
                          const std::string& key, const std::string& prefix) {
  const YAML::Node node = map[key];
  if (!node) fail(source, map.Mark(), prefix + key, "missing required key");
  return read_int(source, node, prefix + key);
}

}  // namespace

NetworkSpec parse_network_text(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    fail(source, e.mark, "<document>", e.msg);
  }
  if (!root.IsMap()) fail(source, root.Mark(), "<document>", "expected a mapping");
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (key != "name" && key != "packing" && key != "layers") {
      fail(source, kv.first.Mark(), key, "unknown top-level key");
    }
  }

  NetworkSpec net;
  if (const YAML::Node name = root["name"]) {
    if (!name.IsScalar()) fail(source, name.Mark(), "name", "expected a string");
    net.name = name.as<std::string>();
  }
  net.packing = optional_int(source, root, "packing", "").value_or(1);
  if (net.packing < 1) fail(source, root["packing"].Mark(), "packing", "must be >= 1");

  const YAML::Node layers = root["layers"];
  if (!layers) fail(source, root.Mark(), "layers", "missing required key");
  if (!layers.IsSequence() || layers.size() == 0) {
    fail(source, layers.Mark(), "layers", "expected a non-empty sequence");
  }

  for (std::size_t i = 0; i < layers.size(); ++i) {
    const YAML::Node node = layers[i];
    const std::string prefix = "layers[" + std::to_string(i) + "].";
    if (!node.IsMap()) fail(source, node.Mark(), prefix, "expected a mapping");
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      if (std::find(kLayerKeys.begin(), kLayerKeys.end(), key) == kLayerKeys.end() ||
          key == "packing") {
        fail(source, kv.first.Mark(), prefix + key, "unknown layer key");
      }
    }
    LayerSpec l;
    const auto x_in = optional_int(source, node, "x_in", prefix);
    const auto y_in = optional_int(source, node, "y_in", prefix);
    const auto c_in = optional_int(source, node, "c_in", prefix);
    if (i == 0) {
      if (!x_in || !y_in || !c_in) {
        fail(source, node.Mark(), prefix + (!x_in ? "x_in" : !y_in ? "y_in" : "c_in"),
             "the first layer must state x_in, y_in and c_in");
      }
    }
    l.k_x = required_int(source, node, "k_x", prefix);
    l.k_y = required_int(source, node, "k_y", prefix);
    l.s_x = required_int(source, node, "s_x", prefix);
    l.s_y = required_int(source, node, "s_y", prefix);
    l.p_x = required_int(source, node, "p_x", prefix);
    l.p_y = required_int(source, node, "p_y", prefix);
    l.c_out = required_int(source, node, "c_out", prefix);
    l.groups = optional_int(source, node, "groups", prefix).value_or(1);
    l.residual_carry_words =
        optional_int(source, node, "residual_carry_words", prefix).value_or(0);

    if (i == 0) {
      l.x_in = *x_in;
      l.y_in = *y_in;
      l.c_in = *c_in;
    } else {
      const LayerSpec& prev = net.layers.back();
      const DerivedDims pd = derive_dims(prev);
      l.x_in = x_in.value_or(pd.x_out);
      l.y_in = y_in.value_or(pd.y_out);
      l.c_in = c_in.value_or(prev.c_out);
      if (l.x_in != pd.x_out || l.y_in != pd.y_out || l.c_in != prev.c_out) {
        const YAML::Mark mark = node.Mark();
        const char* field = l.x_in != pd.x_out   ? "x_in"
                            : l.y_in != pd.y_out ? "y_in"
                                                 : "c_in";
        throw ChainMismatchError(
            i - 1, source + ":" + std::to_string(mark.line + 1) + ":" +
                       std::to_string(mark.column + 1) + ": " + prefix +
                       field + ": chain mismatch between layers " + std::to_string(i) +
                       "->" + std::to_string(i + 1) + ": layer " + std::to_string(i) +
                       " produces " + std::to_string(pd.x_out) + "x" +
                       std::to_string(pd.y_out) + "x" + std::to_string(prev.c_out) +
                       " but layer " + std::to_string(i + 1) + " states " +
                       std::to_string(l.x_in) + "x" + std::to_string(l.y_in) + "x" +
                       std::to_string(l.c_in));
      }
    }
    try {
      validate(l);
    } catch (const Error& e) {
      fail(source, node.Mark(), prefix.substr(0, prefix.size() - 1), e.what());
    }
    net.layers.push_back(l);
  }
  validate_network(net);
  return net;
}

NetworkSpec parse_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open network file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network_text(buf.str(), path);
}

std::string network_to_yaml(const NetworkSpec& net) {
  std::ostringstream os;
  os << "name: " << (net.name.empty() ? "unnamed" : net.name) << "\n";
  os << "packing: " << net.packing << "\n";
  os << "layers:\n";
  for (const LayerSpec& l : net.layers) {
    os << "  - {x_in: " << l.x_in << ", y_in: " << l.y_in << ", c_in: " << l.c_in
       << ", k_x: " << l.k_x << ", k_y: " << l.k_y << ", s_x: " << l.s_x
       << ", s_y: " << l.s_y << ", p_x: " << l.p_x << ", p_y: " << l.p_y
       << ", c_out: " << l.c_out;
    if (l.groups != 1) os << ", groups: " << l.groups;
    if (l.residual_carry_words != 0) {
      os << ", residual_carry_words: " << l.residual_carry_words;
    }
    os << "}\n";
  }
  return os.str();
}

}  // namespace actmem
