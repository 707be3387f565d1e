// Copyright 2026 The stin developers
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <array>
#include <vector>

#include "stin/geometry.hpp"
#include "stin/graph.hpp"

namespace stin {

// Layout energy steering a graph drawing toward a hardware-feasible unit-disk
// form. Four ingredients:
//   crowding   — pairs below their target separation (hard floor for adjacent
//                pairs, disk radius for non-adjacent ones),
//   stretching — adjacent pairs past the disk radius, non-adjacent pairs past
//                the register diagonal scale,
//   rows       — vertical offsets strictly between 0 and the row pitch,
//   disk gap   — largest adjacent minus smallest non-adjacent squared
//                separation (negative once the drawing is unit-disk).
// Above 20 vertices the stretching term is dropped and the gap term is scaled
// by 0.1; both sums run over unordered pairs.
struct ElfTerms {
    double l_min = 0.0;
    double l_max = 0.0;
    double l_row = 0.0;
    double l_ud = 0.0;
    double total = 0.0;
};

ElfTerms elf_loss(const WeightedGraph& g, const std::vector<std::array<double, 2>>& coords,
                  const HardwareGeometry& geom);

// Gradient of ElfTerms::total with respect to every coordinate. At hinge
// points of the max(0, .) pieces and at ties of the gap extremes this is the
// one-sided subgradient that treats the boundary as inactive.
std::vector<std::array<double, 2>> elf_grad(const WeightedGraph& g,
                                            const std::vector<std::array<double, 2>>& coords,
                                            const HardwareGeometry& geom);

}  // namespace stin
