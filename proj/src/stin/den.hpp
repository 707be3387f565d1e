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

#include <vector>

#include "stin/geometry.hpp"
#include "stin/graph.hpp"

namespace stin {

struct DenOptions {
    int max_epochs = 5000;
    double lr = 1e-2;
    double weight_decay = 1e-2;
    double dropout = 0.3;
    double stall_eps = 1e-8;  // loss-change threshold for early stopping
    int stall_window = 200;   // consecutive stalled epochs before stopping
};

struct DenResult {
    Layout layout;             // best drawing seen at inference, register frame
    double best_loss = 0.0;
    std::vector<double> loss_trace;  // inference loss per epoch
    int epochs_run = 0;
};

// Bottlenecked coordinate network (2N-64-36-18-9-18-36-64-2N, ReLU inside,
// register-scaled tanh out) trained with AdamW against the layout energy.
// The seeding layout enters as the fixed input vector; training reshapes the
// output drawing. Dropout perturbs training steps only; the returned drawing
// is the best dropout-free forward pass over all epochs.
DenResult den_train(const WeightedGraph& g, const Layout& init, std::uint64_t seed,
                    const DenOptions& opts = {});

}  // namespace stin
