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

#include "actmem/executor.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "actmem/errors.hpp"
#include "actmem/oracle.hpp"

namespace actmem {

namespace {

constexpr Value kPoison = static_cast<Value>(0x5eadbeefdeadbeefULL);
constexpr Value kCarryMarker = static_cast<Value>(0x0ca11a7ec0ffee00ULL);

Value wrap_mac(Value acc, Value a, Value b) {
  return static_cast<Value>(static_cast<std::uint64_t>(acc) +
                            static_cast<std::uint64_t>(a) *
                                static_cast<std::uint64_t>(b));
}

void check_weights(const LayerSpec& l, const LayerWeights& w, std::size_t i) {
  const auto expect = static_cast<std::size_t>(l.c_out * l.k_y * l.k_x *
                                               (l.c_in / l.groups));
  if (w.kernel.size() != expect) {
    throw DimensionMismatchError("layer " + std::to_string(i + 1) + " expects " +
                                 std::to_string(expect) + " kernel weights, got " +
                                 std::to_string(w.kernel.size()));
  }
  if (!w.bias.empty() && w.bias.size() != static_cast<std::size_t>(l.c_out)) {
    throw DimensionMismatchError("layer " + std::to_string(i + 1) +
                                 " bias must be empty or have c_out entries");
  }
}

void check_inputs(const NetworkSpec& net, const Tensor& input,
                  const NetworkWeights& weights) {
  validate_network(net);
  const LayerSpec& first = net.layers.front();
  if (input.x != first.x_in || input.y != first.y_in || input.c != first.c_in ||
      input.data.size() !=
          static_cast<std::size_t>(first.x_in * first.y_in * first.c_in)) {
    throw DimensionMismatchError("input tensor does not match layer 1 dimensions");
  }
  if (weights.size() != net.layers.size()) {
    throw DimensionMismatchError("expected weights for " +
                                 std::to_string(net.layers.size()) + " layers, got " +
                                 std::to_string(weights.size()));
  }
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    check_weights(net.layers[i], weights[i], i);
  }
}

// Accumulates one output entry. `load` maps an input entry index to its value.
template <typename Load>
Value convolve_entry(const LayerSpec& l, const LayerWeights& w, std::int64_t yo,
                     std::int64_t xo, std::int64_t co, Load&& load) {
  const std::int64_t cig = l.c_in / l.groups;
  const std::int64_t channel0 = (co / (l.c_out / l.groups)) * cig;
  Value acc = w.bias.empty() ? 0 : w.bias[static_cast<std::size_t>(co)];
  std::size_t wi = static_cast<std::size_t>(co * l.k_y * l.k_x * cig);
  for (std::int64_t ky = 0; ky < l.k_y; ++ky) {
    const std::int64_t y = yo * l.s_y - l.p_y + ky;
    for (std::int64_t kx = 0; kx < l.k_x; ++kx, wi += static_cast<std::size_t>(cig)) {
      const std::int64_t x = xo * l.s_x - l.p_x + kx;
      if (y < 0 || y >= l.y_in || x < 0 || x >= l.x_in) continue;
      const std::int64_t entry = (y * l.x_in + x) * l.c_in + channel0;
      for (std::int64_t ci = 0; ci < cig; ++ci) {
        acc = wrap_mac(acc, load(entry + ci), w.kernel[wi + static_cast<std::size_t>(ci)]);
      }
    }
  }
  return acc;
}

enum class WordState : std::uint8_t { kFree, kInput, kCarry, kOutput };

}  // namespace

Tensor random_input(const LayerSpec& first, std::mt19937_64& rng, Value lo, Value hi) {
  std::uniform_int_distribution<Value> dist(lo, hi);
  Tensor t{first.x_in, first.y_in, first.c_in, {}};
  t.data.resize(static_cast<std::size_t>(first.x_in * first.y_in * first.c_in));
  for (Value& v : t.data) v = dist(rng);
  return t;
}

NetworkWeights random_weights(const NetworkSpec& net, std::mt19937_64& rng,
                              Value lo, Value hi, bool with_bias) {
  std::uniform_int_distribution<Value> dist(lo, hi);
  NetworkWeights weights;
  for (const LayerSpec& l : net.layers) {
    LayerWeights w;
    w.kernel.resize(static_cast<std::size_t>(l.c_out * l.k_y * l.k_x * (l.c_in / l.groups)));
    for (Value& v : w.kernel) v = dist(rng);
    if (with_bias) {
      w.bias.resize(static_cast<std::size_t>(l.c_out));
      for (Value& v : w.bias) v = dist(rng);
    }
    weights.push_back(std::move(w));
  }
  return weights;
}

Tensor execute_network_reference(const NetworkSpec& net, const Tensor& input,
                                 const NetworkWeights& weights) {
  check_inputs(net, input, weights);
  Tensor ping = input;
  Tensor pong;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const LayerSpec& l = net.layers[i];
    const DerivedDims d = derive_dims(l);
    pong.x = d.x_out;
    pong.y = d.y_out;
    pong.c = l.c_out;
    pong.data.assign(static_cast<std::size_t>(d.t_len), 0);
    const std::vector<Value>& src = ping.data;
#pragma omp parallel for schedule(static) if (d.t_len >= 4096)
    for (std::int64_t yo = 0; yo < d.y_out; ++yo) {
      for (std::int64_t xo = 0; xo < d.x_out; ++xo) {
        for (std::int64_t co = 0; co < l.c_out; ++co) {
          pong.data[static_cast<std::size_t>((yo * d.x_out + xo) * l.c_out + co)] =
              convolve_entry(l, weights[i], yo, xo, co, [&](std::int64_t e) {
                return src[static_cast<std::size_t>(e)];
              });
        }
      }
    }
    std::swap(ping, pong);
  }
  return ping;
}

Tensor execute_network_in_arena(const NetworkSpec& net, const MemoryPlan& plan,
                                const Tensor& input,
                                const NetworkWeights& weights,
                                const ExecOptions& options) {
  check_inputs(net, input, weights);
  if (plan.layer_plans.size() != net.layers.size() || plan.packing != net.packing) {
    throw DimensionMismatchError("plan does not belong to network '" + net.name + "'");
  }
  const Words arena_words = plan.arena_size;
  const std::int64_t q = net.packing;
  if (arena_words <= 0) throw DimensionMismatchError("plan has an empty arena");

  std::vector<Value> arena(static_cast<std::size_t>(arena_words * q), kPoison);
  std::vector<WordState> state;
  std::vector<std::int64_t> last_reader;
  std::vector<std::int64_t> owner;
  if (options.checked) {
    state.resize(static_cast<std::size_t>(arena_words));
    last_reader.resize(static_cast<std::size_t>(arena_words));
    owner.resize(static_cast<std::size_t>(arena_words));
  }
  auto word_at = [&](Words base, std::int64_t offset) {
    const Words w = (base + offset) % arena_words;
    return w < 0 ? w + arena_words : w;
  };
  auto slot = [&](Words word, std::int64_t entry) -> Value& {
    return arena[static_cast<std::size_t>(word * q + entry % q)];
  };

  {
    const Words base = plan.layer_plans.front().input_base;
    for (std::size_t e = 0; e < input.data.size(); ++e) {
      const auto entry = static_cast<std::int64_t>(e);
      slot(word_at(base, entry / q), entry) = input.data[e];
    }
  }

  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const LayerSpec layer = packed_layer(net, i);
    const DerivedDims dims = derive_dims(layer);
    const LayerPlan& lp = plan.layer_plans[i];
    const LayerWeights& w = weights[i];

    for (Words c = dims.m_conv_in; c < dims.m_in; ++c) {
      const Words word = word_at(lp.input_base, c);
      for (std::int64_t s = 0; s < q; ++s) {
        arena[static_cast<std::size_t>(word * q + s)] = kCarryMarker + c;
      }
    }
    if (options.checked) {
      std::fill(state.begin(), state.end(), WordState::kFree);
      const std::vector<std::int64_t> last = last_read_blocks(layer, OracleLimits{
          std::numeric_limits<std::int64_t>::max(), 0});
      for (Words a = 0; a < dims.m_in; ++a) {
        const auto word = static_cast<std::size_t>(word_at(lp.input_base, a));
        if (a < dims.m_conv_in) {
          state[word] = WordState::kInput;
          last_reader[word] = last[static_cast<std::size_t>(a)];
        } else {
          state[word] = WordState::kCarry;
        }
      }
    }

    std::int64_t k = 0;
    for (std::int64_t yo = 0; yo < dims.y_out; ++yo) {
      for (std::int64_t xo = 0; xo < dims.x_out; ++xo) {
        for (std::int64_t co = 0; co < layer.c_out; ++co, ++k) {
          const Value value = convolve_entry(layer, w, yo, xo, co, [&](std::int64_t e) {
            return slot(word_at(lp.input_base, e / q), e);
          });
          const Words out_word = k / q;
          const Words word = word_at(lp.output_base, out_word);
          const auto wi = static_cast<std::size_t>(word);
          bool claims_word = k % q == 0;
          if (options.checked) {
            const char* what = nullptr;
            if (state[wi] == WordState::kInput && last_reader[wi] > k) {
              what = "an input word still needed by a later block";
            } else if (state[wi] == WordState::kCarry) {
              what = "a residual carry word";
            } else if (state[wi] == WordState::kOutput && owner[wi] != out_word) {
              what = "an output word written earlier in this layer";
            }
            if (what != nullptr) {
              throw ClobberError(
                  i, k, word,
                  "clobber in layer " + std::to_string(i + 1) + " at block " +
                      std::to_string(k) + ": write to arena word " +
                      std::to_string(word) + " destroys " + what +
                      (state[wi] == WordState::kInput
                           ? " (last reader " + std::to_string(last_reader[wi]) + ")"
                           : std::string()));
            }
            claims_word = state[wi] != WordState::kOutput;
            state[wi] = WordState::kOutput;
            owner[wi] = out_word;
          }
          if (claims_word && q > 1) {
            for (std::int64_t s = 0; s < q; ++s) {
              arena[static_cast<std::size_t>(word * q + s)] = kPoison;
            }
          }
          slot(word, k) = value;
        }
      }
    }
  }

  const LayerSpec& last = net.layers.back();
  const DerivedDims d = derive_dims(last);
  Tensor out{d.x_out, d.y_out, last.c_out, {}};
  out.data.resize(static_cast<std::size_t>(d.t_len));
  const Words base = plan.layer_plans.back().output_base;
  for (std::int64_t e = 0; e < d.t_len; ++e) {
    out.data[static_cast<std::size_t>(e)] = slot(word_at(base, e / q), e);
  }
  return out;
}

NetworkWeights identity_weights(const NetworkSpec& net) {
  NetworkWeights weights;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const LayerSpec& l = net.layers[i];
    if (l.c_in != l.c_out) {
      throw DimensionMismatchError("identity weights need c_in == c_out (layer " +
                                   std::to_string(i + 1) + ")");
    }
    const std::int64_t cig = l.c_in / l.groups;
    LayerWeights w;
    w.kernel.assign(static_cast<std::size_t>(l.c_out * l.k_y * l.k_x * cig), 0);
    for (std::int64_t co = 0; co < l.c_out; ++co) {
      const std::int64_t tap = (co * l.k_y + l.k_y / 2) * l.k_x + l.k_x / 2;
      w.kernel[static_cast<std::size_t>(tap * cig + co % cig)] = 1;
    }
    weights.push_back(std::move(w));
  }
  return weights;
}

}  // namespace actmem
