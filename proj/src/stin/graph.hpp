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

#include <optional>
#include <string>
#include <vector>

#include "stin/common.hpp"

namespace stin {

// Undirected vertex-weighted graph. Weights are non-negative; parallel edges
// and self-loops are rejected at construction time.
class WeightedGraph {
  public:
    WeightedGraph() = default;
    WeightedGraph(int n, std::vector<double> weights);

    void add_edge(int u, int v);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    double weight(int v) const { return weights_.at(v); }
    const std::vector<double>& weights() const { return weights_; }
    // Edges normalized to (min, max) and sorted lexicographically.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
    bool has_edge(int u, int v) const;

    std::vector<std::string>& labels() { return labels_; }
    const std::vector<std::string>& labels() const { return labels_; }

  private:
    int n_ = 0;
    std::vector<double> weights_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::uint64_t> bits_;  // n_ x n_ adjacency matrix, row-major bitset
    std::vector<std::string> labels_;
};

// A selected subset of vertices together with its cached total weight.
struct VertexSet {
    std::vector<int> members;  // sorted ascending
    double objective = 0.0;
};

VertexSet make_vertex_set(const WeightedGraph& g, std::vector<int> members);

bool is_independent(const WeightedGraph& g, const VertexSet& s);

// Pre: s is independent (errc::contract otherwise).
bool is_maximal(const WeightedGraph& g, const VertexSet& s);

// Gateway-assignment instance. `n`/`weights` describe the satellite side;
// `satellites` is the subset of [0, n) actually in play, `gateways` are ids
// [0, m), and `links` are (satellite index, gateway index) pairs.
struct BipartiteInstance {
    int n = 0;
    std::vector<double> weights;
    std::vector<int> satellites;
    std::vector<int> gateways;
    std::vector<std::pair<int, int>> links;
    std::vector<double> link_costs;  // aligned with links; empty = all 1
    std::vector<std::string> labels;
    std::vector<std::string> warnings;  // e.g. satellites with no feasible link
};

// Band-assignment instance over interfering paths. Bands are an ordered list
// of frequency labels; cost of putting path p on the band at position q is
// costs[p][q], defaulting to the 1-based position when costs is empty.
struct ColoringInstance {
    int num_paths = 0;
    std::vector<std::pair<int, int>> conflicts;
    std::vector<int> bands;
    std::vector<std::vector<double>> costs;
    std::vector<std::string> labels;

    double cost(int path, int band_pos) const {
        if (costs.empty()) return static_cast<double>(band_pos + 1);
        return costs.at(path).at(band_pos);
    }
};

// One instance file. Exactly one of the payloads is populated, matching kind.
struct Instance {
    std::string kind;  // "ssp" | "gsp" | "sap"
    std::optional<WeightedGraph> ssp;
    std::optional<BipartiteInstance> gsp;
    std::optional<ColoringInstance> sap;
};

Instance read_instance(const std::string& path);
Instance parse_instance(const std::string& json_text);
void write_instance(const Instance& inst, const std::string& path);
std::string instance_to_json(const Instance& inst);

Instance make_ssp_instance(WeightedGraph g);
Instance make_gsp_instance(BipartiteInstance b);
Instance make_sap_instance(ColoringInstance c);

}  // namespace stin
