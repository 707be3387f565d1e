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

#include <string>
#include <vector>

#include "stin/common.hpp"
#include "stin/graph.hpp"

namespace stin::testing {

inline WeightedGraph path_graph(int n, std::vector<double> weights = {}) {
    if (weights.empty()) weights.assign(n, 1.0);
    WeightedGraph g(n, std::move(weights));
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline WeightedGraph cycle_graph(int n, std::vector<double> weights = {}) {
    WeightedGraph g = path_graph(n, std::move(weights));
    if (n > 2) g.add_edge(n - 1, 0);
    return g;
}

inline WeightedGraph grid_graph(int rows, int cols) {
    const int n = rows * cols;
    WeightedGraph g(n, std::vector<double>(n, 1.0));
    auto id = [&](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
            if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
        }
    return g;
}

inline WeightedGraph complete_graph(int n, std::vector<double> weights = {}) {
    if (weights.empty()) weights.assign(n, 1.0);
    WeightedGraph g(n, std::move(weights));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

// Outer 5-cycle, inner 5-star, spokes between them.
inline WeightedGraph petersen_graph() {
    WeightedGraph g(10, std::vector<double>(10, 1.0));
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, 5 + i);
    }
    return g;
}

// Edge-density graph with weights in (0, 1]; density is the per-pair
// probability, so the draw count stays identical across runs.
inline WeightedGraph random_graph(int n, double density, Rng& rng) {
    std::vector<double> w(n);
    for (auto& x : w) x = 1.0 - rng.uniform();
    WeightedGraph g(n, std::move(w));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < density) g.add_edge(i, j);
    return g;
}

// Runs fn and reports the error category it threw with, or -1 on no throw.
template <typename Fn>
int thrown_code(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return static_cast<int>(e.code());
    }
    return -1;
}

}  // namespace stin::testing
