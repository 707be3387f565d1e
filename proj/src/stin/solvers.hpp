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

#include <limits>
#include <string>
#include <vector>

#include "stin/graph.hpp"

namespace stin {

enum class SolveStatus { optimal, feasible, feasible_timeout, infeasible };

std::string to_string(SolveStatus s);

struct MwisResult {
    VertexSet set;
    SolveStatus status = SolveStatus::optimal;
    double elapsed_s = 0.0;
    std::uint64_t nodes = 0;  // search-tree nodes visited
};

// Exhaustive optimum, n <= 25 (errc::size_limit beyond).
MwisResult mwis_bruteforce(const WeightedGraph& g);

// Branch and bound with a residual-weight bound and weight-to-degree
// branching. `budget_s` is wall-clock; on expiry the incumbent is returned
// with status feasible_timeout. Pass +inf for a guaranteed optimum.
MwisResult mwis_exact(const WeightedGraph& g,
                      double budget_s = std::numeric_limits<double>::infinity());

// Heaviest-first insertion, ties broken toward the lowest vertex index.
// Always returns a maximal independent set.
MwisResult greedy_mwis(const WeightedGraph& g);

struct GspResult {
    int load = 0;  // minimized maximum satellites per gateway
    std::vector<std::pair<int, int>> assignment;  // (satellite index, gateway index)
    SolveStatus status = SolveStatus::optimal;
    double elapsed_s = 0.0;
    std::vector<int> unservable;  // satellites with no link at all
};

// True iff every satellite can be assigned over its links with no gateway
// exceeding `load`.
bool gsp_feasible(const BipartiteInstance& b, int load);

// Binary search on the load bound with a max-flow feasibility check.
GspResult gsp_solve(const BipartiteInstance& b);

// Exhaustive reference, |satellites| <= 8 and |gateways| <= 5.
GspResult gsp_bruteforce(const BipartiteInstance& b);

struct SapResult {
    std::vector<int> band_of_path;  // positions into ColoringInstance::bands
    int distinct_bands = 0;
    double total_cost = 0.0;
    SolveStatus status = SolveStatus::optimal;
    double elapsed_s = 0.0;
    std::vector<int> conflict_clique;  // infeasibility witness, when one was found
};

enum class SapMode { exact, dsatur };

// exact: fewest distinct bands first, then minimum total cost among such
// assignments (<= 30 paths). dsatur: saturation-order heuristic.
SapResult sap_solve(const ColoringInstance& c, SapMode mode);

// Result serialization shared by the CLI and pipeline reports.
std::string mwis_result_to_json(const MwisResult& r);
std::string gsp_result_to_json(const GspResult& r);
std::string sap_result_to_json(const SapResult& r);

}  // namespace stin
