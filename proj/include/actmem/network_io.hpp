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

#ifndef ACTMEM_NETWORK_IO_HPP_
#define ACTMEM_NETWORK_IO_HPP_

#include <string>

#include "actmem/planner.hpp"

namespace actmem {

// Network files are YAML documents (JSON is a subset and parses too):
//
//   name: example
//   packing: 1            # optional
//   layers:
//     - {x_in: 8, y_in: 8, c_in: 3, k_x: 3, k_y: 3, s_x: 1, s_y: 1,
//        p_x: 1, p_y: 1, c_out: 16}
//     - {k_x: 1, k_y: 1, s_x: 1, s_y: 1, p_x: 0, p_y: 0, c_out: 8,
//        groups: 1, residual_carry_words: 0}
//
// Only the first layer must state x_in, y_in and c_in; later layers inherit
// them from the previous layer's output. Explicit values are checked against
// the chain. Errors carry the line, column and field of the offending entry.
NetworkSpec parse_network_text(const std::string& text,
                               const std::string& source = "<string>");
NetworkSpec parse_network_file(const std::string& path);

std::string network_to_yaml(const NetworkSpec& net);

}  // namespace actmem

#endif  // ACTMEM_NETWORK_IO_HPP_
