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

#include "stin/postprocess.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

namespace stin {

std::vector<std::pair<VertexSet, int>> decode_shots(const ShotSet& shots,
                                                    const WeightedGraph& g) {
    const int n = g.num_vertices();
    std::vector<std::pair<VertexSet, int>> out;
    out.reserve(shots.counts.size());
    for (const auto& [pattern, count] : shots.counts) {
        require(static_cast<int>(pattern.size()) == n, errc::contract,
                "pattern length does not match the graph");
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (pattern[i] == '0') members.push_back(i);
        out.emplace_back(make_vertex_set(g, std::move(members)), count);
    }
    return out;
}

VertexSet greedy_augment(const WeightedGraph& g, const VertexSet& s) {
    require(is_independent(g, s), errc::contract, "augmentation needs an independent set");
    const int n = g.num_vertices();
    std::vector<char> selected(n, 0), blocked(n, 0);
    for (const int v : s.members) {
        selected[v] = 1;
        for (const int u : g.neighbors(v)) blocked[u] = 1;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.weight(a) > g.weight(b); });
    std::vector<int> members(s.members);
    for (const int v : order) {
        if (selected[v] || blocked[v]) continue;
        selected[v] = 1;
        members.push_back(v);
        for (const int u : g.neighbors(v)) blocked[u] = 1;
    }
    return make_vertex_set(g, std::move(members));
}

namespace {

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

RefinementOutcome refine(const ShotSet& shots, const WeightedGraph& g) {
    RefinementOutcome out;
    out.raw_sets = decode_shots(shots, g);

    const int n = g.num_vertices();
    double ham_total = 0.0;
    int kept = 0;
    bool have_best = false;
    for (const auto& [raw, count] : out.raw_sets) {
        if (!is_independent(g, raw)) {
            out.n_nonindependent += count;
            continue;
        }
        VertexSet refined = greedy_augment(g, raw);
        const double dist =
            n > 0 ? double(refined.members.size() - raw.members.size()) / n : 0.0;
        ham_total += dist * count;
        out.hamming_max = std::max(out.hamming_max, dist);
        kept += count;
        if (!have_best || refined.objective > out.best.objective ||
            (refined.objective == out.best.objective &&
             lex_less(refined.members, out.best.members))) {
            out.best = refined;
            have_best = true;
        }
        out.feasible_sets.emplace_back(raw, count);
        out.refined_sets.emplace_back(std::move(refined), count);
    }
    if (kept > 0) out.hamming_mean = ham_total / kept;
    // Every pattern discarded (or no shots at all): fall back to the greedy
    // baseline so callers always receive a feasible maximal set.
    if (!have_best) out.best = greedy_augment(g, VertexSet{});
    return out;
}

std::vector<double> bootstrap_objectives(const ShotSet& shots, const WeightedGraph& g,
                                         int subsample, int reps, std::uint64_t seed) {
    require(subsample >= 0 && subsample <= shots.shots, errc::invalid,
            "subsample must lie in [0, shots]");
    require(reps >= 0, errc::invalid, "repetition count must be non-negative");

    std::vector<std::string> patterns;
    patterns.reserve(shots.shots);
    for (const auto& [pattern, count] : shots.counts)
        for (int k = 0; k < count; ++k) patterns.push_back(pattern);

    std::vector<double> out;
    out.reserve(reps);
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(derive_seed(seed, "bootstrap:" + std::to_string(rep)));
        ShotSet sub;
        sub.n = shots.n;
        sub.shots = subsample;
        sub.seed = seed;
        for (int k = 0; k < subsample; ++k)
            ++sub.counts[patterns[rng.below(patterns.size())]];
        out.push_back(refine(sub, g).best.objective);
    }
    return out;
}

std::string refinement_to_json(const RefinementOutcome& o) {
    nlohmann::json j;
    j["n_nonindependent"] = o.n_nonindependent;
    j["hamming_mean"] = o.hamming_mean;
    j["hamming_max"] = o.hamming_max;
    j["best"] = {{"members", o.best.members}, {"objective", o.best.objective}};

    int independent = 0, sampled = 0, augmented = 0, hit_best = 0;
    nlohmann::json outcomes = nlohmann::json::array();
    for (std::size_t k = 0; k < o.feasible_sets.size(); ++k) {
        const auto& [raw, count] = o.feasible_sets[k];
        const auto& refined = o.refined_sets[k].first;
        const bool grew = refined.members.size() != raw.members.size();
        independent += count;
        (grew ? augmented : sampled) += count;
        if (refined.members == o.best.members) hit_best += count;
        outcomes.push_back({{"members", raw.members},
                            {"count", count},
                            {"refined", refined.members},
                            {"objective", refined.objective},
                            {"augmented", grew}});
    }
    j["categories"] = {{"independent", independent},
                       {"non_independent", o.n_nonindependent},
                       {"best", hit_best},
                       {"refined_sampled", sampled},
                       {"refined_augmented", augmented}};
    j["outcomes"] = outcomes;
    return j.dump(2) + "\n";
}

}  // namespace stin
