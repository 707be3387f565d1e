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

#include "stin/den.hpp"
#include "stin/fr_layout.hpp"
#include "stin/geometry.hpp"
#include "stin/refine.hpp"

namespace stin {

struct EmbedOptions {
    DenOptions den;
    double fr_k = 7.0;
    int fr_iterations = 1000;
    RefineOptions refine;
    // Training lands in a crossing-ridden local optimum now and then. Retries
    // under fresh derived seeds stop at the first clean unit-disk drawing.
    int max_attempts = 6;
};

struct EmbedOutcome {
    Layout layout;
    EmbeddingReport report;
    std::vector<double> loss_trace;
    int epochs_run = 0;
    double best_loss = 0.0;
    bool refine_success = false;
    int attempts = 1;
    double elapsed_s = 0.0;
};

// Force-directed seed, network training, constraint refinement, validation.
// Child seeds are derived per stage so reruns with one root seed reproduce
// the whole chain.
EmbedOutcome embed_graph(const WeightedGraph& g, std::uint64_t seed,
                         const HardwareGeometry& geom = {}, const EmbedOptions& opts = {});

std::string embed_outcome_to_json(const EmbedOutcome& o);

}  // namespace stin
