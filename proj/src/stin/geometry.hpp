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
#include <limits>
#include <string>
#include <vector>

#include "stin/graph.hpp"

namespace stin {

// Trap-array limits of the target register, micrometers throughout.
struct HardwareGeometry {
    double d_min = 4.0;    // hard floor on any pairwise separation
    double d_row = 2.0;    // rows coincide exactly or differ by at least this
    double d_adj = 10.0;   // soft target separation for adjacent pairs
    double width = 76.0;   // register extent in x
    double height = 128.0; // register extent in y
    double grid = 0.1;     // coordinate resolution

    double diag() const;
};

struct Layout {
    std::vector<std::array<double, 2>> coords;
    HardwareGeometry geom;

    int size() const { return static_cast<int>(coords.size()); }
};

double pair_distance(const Layout& l, int i, int j);

struct Violation {
    std::string type;  // "min_distance" | "row_spacing" | "register_bounds"
    int a = -1, b = -1;
    double value = 0.0;
};

// d: largest adjacent separation (0 if no edges). D: smallest non-adjacent
// separation (+inf if the graph is complete). Unit-disk iff d < D.
struct EmbeddingReport {
    double d = 0.0;
    double D = std::numeric_limits<double>::infinity();
    double gap = std::numeric_limits<double>::infinity();
    bool is_unit_disk = true;
    std::vector<Violation> violations;
};

EmbeddingReport validate_embedding(const WeightedGraph& g, const Layout& l);

std::vector<Violation> hard_violations(const Layout& l);

Layout read_layout(const std::string& path);
Layout parse_layout(const std::string& json_text);
void write_layout(const Layout& l, const std::string& path);
std::string layout_to_json(const Layout& l);
std::string report_to_json(const EmbeddingReport& r);

}  // namespace stin
