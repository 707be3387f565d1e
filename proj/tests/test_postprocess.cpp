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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "stin/postprocess.hpp"
#include "stin/solvers.hpp"

using namespace stin;
using namespace stin::testing;

namespace {

ShotSet shots_of(int n, const std::vector<std::pair<std::string, int>>& counts) {
    ShotSet s;
    s.n = n;
    s.seed = 0;
    for (const auto& [pattern, c] : counts) {
        s.counts[pattern] += c;
        s.shots += c;
    }
    return s;
}

}  // namespace

TEST_CASE("dark traps decode to selected vertices") {
    const WeightedGraph g = path_graph(3);
    // Patterns are indexed left to right by vertex. '0' means the trap went
    // dark, so the atom was excited and the vertex is in the set.
    const ShotSet s = shots_of(3, {{"011", 5}, {"110", 2}, {"111", 1}});
    auto decoded = decode_shots(s, g);
    REQUIRE(decoded.size() == 3);
    std::sort(decoded.begin(), decoded.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    CHECK(decoded[0].first.members == std::vector<int>{0});
    CHECK(decoded[0].second == 5);
    CHECK(decoded[1].first.members == std::vector<int>{2});
    CHECK(decoded[1].second == 2);
    CHECK(decoded[2].first.members.empty());
    CHECK(decoded[2].second == 1);
    for (const auto& [set, count] : decoded)
        CHECK(set.objective == doctest::Approx(set.members.size() * 1.0));
}

TEST_CASE("decoding rejects mismatched pattern width") {
    const WeightedGraph g = path_graph(3);
    const ShotSet s = shots_of(2, {{"01", 4}});
    CHECK(thrown_code([&] { decode_shots(s, g); }) == static_cast<int>(errc::contract));
}

TEST_CASE("augmenting the empty set reproduces the greedy baseline") {
    Rng rng(2026);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(12));
        const double density = 0.1 + 0.8 * rng.uniform();
        const WeightedGraph g = random_graph(n, density, rng);
        VertexSet empty;
        empty.objective = 0.0;
        const VertexSet aug = greedy_augment(g, empty);
        const VertexSet greedy = greedy_mwis(g).set;
        CHECK(aug.members == greedy.members);
        CHECK(aug.objective == doctest::Approx(greedy.objective));
    }
}

TEST_CASE("augmentation keeps the seed and only adds") {
    const WeightedGraph g = path_graph(5, {1, 10, 1, 10, 1});
    VertexSet seed = make_vertex_set(g, {0});
    const VertexSet aug = greedy_augment(g, seed);
    CHECK(is_independent(g, aug));
    CHECK(is_maximal(g, aug));
    CHECK(std::find(aug.members.begin(), aug.members.end(), 0) != aug.members.end());
    // Vertex 1 is heavy but blocked by the seed; 3 is the best remaining add,
    // and it shuts out both of its light neighbors.
    CHECK(aug.members == std::vector<int>{0, 3});
    CHECK(aug.objective == doctest::Approx(11.0));
}

TEST_CASE("augmenting a dependent set is refused") {
    const WeightedGraph g = path_graph(3);
    VertexSet bad;
    bad.members = {0, 1};
    CHECK(thrown_code([&] { greedy_augment(g, bad); }) == static_cast<int>(errc::contract));
}

TEST_CASE("refinement drops dependent patterns and augments the rest") {
    const WeightedGraph g = path_graph(4, {1, 5, 1, 1});
    // "1011" decodes to {1} alone (augments to {1, 3}); "0110" decodes to
    // {0, 3} (already maximal); "0011" decodes to {0, 1}, dependent.
    const ShotSet s = shots_of(4, {{"1011", 6}, {"0110", 3}, {"0011", 2}});
    const RefinementOutcome o = refine(s, g);
    CHECK(o.n_nonindependent == 2);
    REQUIRE(o.feasible_sets.size() == 2);
    REQUIRE(o.refined_sets.size() == 2);
    int kept = 0;
    for (const auto& [set, count] : o.feasible_sets) kept += count;
    CHECK(kept + o.n_nonindependent == s.shots);
    for (const auto& [set, count] : o.refined_sets) {
        CHECK(is_independent(g, set));
        CHECK(is_maximal(g, set));
    }
    CHECK(o.best.members == std::vector<int>{1, 3});
    CHECK(o.best.objective == doctest::Approx(6.0));
    // {1} grew by one vertex out of four; {0, 3} was untouched.
    CHECK(o.hamming_mean == doctest::Approx((6 * 0.25 + 3 * 0.0) / 9));
    CHECK(o.hamming_max == doctest::Approx(0.25));
}

TEST_CASE("refinement of nothing usable falls back to greedy") {
    const WeightedGraph g = path_graph(3, {1, 9, 1});
    const ShotSet s = shots_of(3, {{"001", 4}, {"000", 1}});  // both dependent
    const RefinementOutcome o = refine(s, g);
    CHECK(o.n_nonindependent == 5);
    CHECK(o.feasible_sets.empty());
    CHECK(o.best.members == greedy_mwis(g).set.members);
    CHECK(o.hamming_mean == 0.0);
    CHECK(o.hamming_max == 0.0);
}

TEST_CASE("ties between refined sets go to the smaller member list") {
    // Unit weights on a 4-cycle: {0, 2} and {1, 3} both score 2.
    const WeightedGraph g = cycle_graph(4);
    const ShotSet s = shots_of(4, {{"0101", 5}, {"1010", 5}});
    const RefinementOutcome o = refine(s, g);
    CHECK(o.best.members == std::vector<int>{0, 2});
}

TEST_CASE("refinement statistics stay in range on random shot sets") {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(8));
        const WeightedGraph g = random_graph(n, 0.4, rng);
        ShotSet s;
        s.n = n;
        for (int shot = 0; shot < 40; ++shot) {
            std::string pattern(n, '1');
            for (int i = 0; i < n; ++i)
                if (rng.uniform() < 0.3) pattern[i] = '0';
            s.counts[pattern] += 1;
            s.shots += 1;
        }
        const RefinementOutcome o = refine(s, g);
        CHECK(o.hamming_mean >= 0.0);
        CHECK(o.hamming_mean <= 1.0);
        CHECK(o.hamming_max >= o.hamming_mean);
        CHECK(o.hamming_max <= 1.0);
        CHECK(o.n_nonindependent >= 0);
        CHECK(o.n_nonindependent <= 40);
        if (!o.feasible_sets.empty()) {
            for (const auto& [set, count] : o.refined_sets) {
                CHECK(is_independent(g, set));
                CHECK(is_maximal(g, set));
            }
            double best = 0.0;
            for (const auto& [set, count] : o.refined_sets)
                best = std::max(best, set.objective);
            CHECK(o.best.objective == doctest::Approx(best));
        }
    }
}

TEST_CASE("bootstrap objectives are deterministic and bounded") {
    Rng rng(5);
    const WeightedGraph g = random_graph(7, 0.4, rng);
    ShotSet s;
    s.n = 7;
    for (int shot = 0; shot < 60; ++shot) {
        std::string pattern(7, '1');
        for (int i = 0; i < 7; ++i)
            if (rng.uniform() < 0.25) pattern[i] = '0';
        s.counts[pattern] += 1;
        s.shots += 1;
    }
    const auto a = bootstrap_objectives(s, g, 30, 12, 99);
    const auto b = bootstrap_objectives(s, g, 30, 12, 99);
    REQUIRE(a.size() == 12);
    CHECK(a == b);
    const double exact = mwis_bruteforce(g).set.objective;
    for (const double obj : a) {
        CHECK(obj > 0.0);
        CHECK(obj <= exact + 1e-12);
    }
}

TEST_CASE("refinement serializes with its statistics") {
    const WeightedGraph g = path_graph(3, {1, 9, 1});
    const ShotSet s = shots_of(3, {{"101", 3}, {"011", 1}});
    const std::string j = refinement_to_json(refine(s, g));
    CHECK(j.find("\"n_nonindependent\"") != std::string::npos);
    CHECK(j.find("\"hamming_mean\"") != std::string::npos);
    CHECK(j.find("\"best\"") != std::string::npos);
}
