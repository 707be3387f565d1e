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

// Force-directed seeding layout. Repulsion k^2/d^2 acts between all pairs,
// attraction d/k along edges, so an isolated edge settles near separation k.
// Runs in micrometers with a linearly cooled step cap, then recenters on the
// register (shrinking to fit only when the drawing spills over).
Layout fr_init(const WeightedGraph& g, std::uint64_t seed, const HardwareGeometry& geom,
               double k = 7.0, int iterations = 1000);

}  // namespace stin
