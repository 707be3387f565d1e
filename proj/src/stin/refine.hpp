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

#include "stin/geometry.hpp"
#include "stin/graph.hpp"

namespace stin {

struct RefineOptions {
    int max_repair_passes = 200;
    int max_iters = 200;      // quasi-Newton iterations
    int memory = 8;           // history pairs kept
};

struct RefineResult {
    Layout layout;
    bool success = false;
    std::vector<Violation> violations;  // empty on success
    int iterations = 0;
};

// Drives a drawing to grid-snapped hardware-legal coordinates:
//   1. translate the bounding box corner to the origin and snap to the grid,
//   2. repair passes resolve spacing and row offenses (x-axis pushes, row
//      merges), failing honestly if the drawing stays overcrowded,
//   3. per-vertex safe boxes are carved so that any simultaneous choice of
//      points, one per box, keeps every hard constraint (half the pairwise
//      slack, zero vertical extent inside shared rows),
//   4. a projected quasi-Newton descent minimizes the disk margin loss
//      (adjacent pairs past d_adj, non-adjacent pairs inside d_adj) within
//      the boxes, and the result is snapped back to the grid.
// On success the returned layout has zero hard violations by construction.
RefineResult refine_layout(const WeightedGraph& g, const Layout& in,
                           const RefineOptions& opts = {});

// The margin loss minimized in step 4; exposed for tests.
double margin_loss(const WeightedGraph& g, const std::vector<std::array<double, 2>>& coords,
                   double d_adj);
std::vector<std::array<double, 2>> margin_grad(const WeightedGraph& g,
                                               const std::vector<std::array<double, 2>>& coords,
                                               double d_adj);

}  // namespace stin
