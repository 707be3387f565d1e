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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stin/graph.hpp"
#include "stin/rydberg.hpp"

namespace stin {

// Measurement readout: '0' (dark trap, excited atom) selects the vertex.
std::vector<std::pair<VertexSet, int>> decode_shots(const ShotSet& shots,
                                                    const WeightedGraph& g);

// Extend an independent set to a maximal one, trying vertices by descending
// weight with ascending index as the tie-break. Augmenting the empty set
// reproduces greedy_mwis, the no-quantum baseline.
VertexSet greedy_augment(const WeightedGraph& g, const VertexSet& s);

struct RefinementOutcome {
    std::vector<std::pair<VertexSet, int>> raw_sets;       // decoded, with multiplicities
    std::vector<std::pair<VertexSet, int>> feasible_sets;  // the independent ones
    std::vector<std::pair<VertexSet, int>> refined_sets;   // aligned with feasible_sets
    VertexSet best;
    int n_nonindependent = 0;
    double hamming_mean = 0.0;  // |refined \ raw| / n over kept shots, count-weighted
    double hamming_max = 0.0;
};

// Discard-and-augment refinement: non-independent patterns are dropped (and
// counted), the rest are augmented to maximal sets, and the best survivor is
// picked by objective with the lexicographically smallest member list as the
// tie-break. With nothing to keep, the greedy baseline is returned.
RefinementOutcome refine(const ShotSet& shots, const WeightedGraph& g);

// Resample `subsample` shots with replacement `reps` times, refine each
// resample, and report the best objectives. Deterministic per seed.
std::vector<double> bootstrap_objectives(const ShotSet& shots, const WeightedGraph& g,
                                         int subsample, int reps, std::uint64_t seed);

std::string refinement_to_json(const RefinementOutcome& o);

}  // namespace stin
