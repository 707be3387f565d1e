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

#include "stin/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stin {

using nlohmann::json;

WeightedGraph::WeightedGraph(int n, std::vector<double> weights) {
    require(n >= 0, errc::invalid, "vertex count must be non-negative");
    require(static_cast<int>(weights.size()) == n, errc::invalid,
            "weight list length must equal the vertex count");
    for (int i = 0; i < n; ++i)
        require(weights[i] >= 0.0 && std::isfinite(weights[i]), errc::invalid,
                "weight of vertex " + std::to_string(i) + " must be finite and non-negative");
    n_ = n;
    weights_ = std::move(weights);
    adj_.assign(n_, {});
    const std::size_t words = (static_cast<std::size_t>(n_) * n_ + 63) / 64;
    bits_.assign(words, 0);
}

void WeightedGraph::add_edge(int u, int v) {
    require(u >= 0 && u < n_ && v >= 0 && v < n_, errc::invalid,
            "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    require(u != v, errc::invalid, "self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    require(!has_edge(u, v), errc::invalid,
            "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    edges_.emplace_back(u, v);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    const std::size_t a = static_cast<std::size_t>(u) * n_ + v;
    const std::size_t b = static_cast<std::size_t>(v) * n_ + u;
    bits_[a / 64] |= 1ULL << (a % 64);
    bits_[b / 64] |= 1ULL << (b % 64);
    std::sort(edges_.begin(), edges_.end());
    std::sort(adj_[u].begin(), adj_[u].end());
    std::sort(adj_[v].begin(), adj_[v].end());
}

bool WeightedGraph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    const std::size_t a = static_cast<std::size_t>(u) * n_ + v;
    return (bits_[a / 64] >> (a % 64)) & 1ULL;
}

VertexSet make_vertex_set(const WeightedGraph& g, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    VertexSet s;
    s.objective = 0.0;
    for (const int v : members) {
        require(v >= 0 && v < g.num_vertices(), errc::invalid,
                "vertex " + std::to_string(v) + " out of range");
        s.objective += g.weight(v);
    }
    s.members = std::move(members);
    return s;
}

bool is_independent(const WeightedGraph& g, const VertexSet& s) {
    for (std::size_t i = 0; i < s.members.size(); ++i)
        for (std::size_t j = i + 1; j < s.members.size(); ++j)
            if (g.has_edge(s.members[i], s.members[j])) return false;
    return true;
}

bool is_maximal(const WeightedGraph& g, const VertexSet& s) {
    require(is_independent(g, s), errc::contract, "is_maximal requires an independent set");
    std::vector<char> in(g.num_vertices(), 0);
    for (const int v : s.members) in[v] = 1;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (in[v]) continue;
        bool addable = true;
        for (const int u : g.neighbors(v))
            if (in[u]) {
                addable = false;
                break;
            }
        if (addable) return false;
    }
    return true;
}

namespace {

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(errc::parse, "malformed JSON");
    return j;
}

void check_field(const json& j, const char* key, const char* type_name, bool ok) {
    if (!j.contains(key)) fail(errc::schema, std::string("missing field '") + key + "'");
    if (!ok) fail(errc::schema, std::string("field '") + key + "' must be " + type_name);
}

std::vector<double> read_weights(const json& j, int n) {
    check_field(j, "weights", "an array", j.contains("weights") && j["weights"].is_array());
    const auto& w = j["weights"];
    require(static_cast<int>(w.size()) == n, errc::schema,
            "weights length " + std::to_string(w.size()) + " does not match n=" + std::to_string(n));
    std::vector<double> out;
    out.reserve(w.size());
    for (const auto& x : w) {
        if (!x.is_string()) fail(errc::schema, "weights must be decimal strings");
        const double v = parse_double(x.get<std::string>(), errc::schema, "weight");
        if (v < 0.0) fail(errc::invalid, "negative weight " + x.get<std::string>());
        out.push_back(v);
    }
    return out;
}

std::vector<std::pair<int, int>> read_pairs(const json& j, const char* key) {
    check_field(j, key, "an array", j.contains(key) && j[key].is_array());
    std::vector<std::pair<int, int>> out;
    for (const auto& e : j[key]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            fail(errc::schema, std::string("entries of '") + key + "' must be [int, int]");
        out.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return out;
}

std::vector<int> read_int_list(const json& j, const char* key) {
    check_field(j, key, "an array", j.contains(key) && j[key].is_array());
    std::vector<int> out;
    for (const auto& e : j[key]) {
        if (!e.is_number_integer()) fail(errc::schema, std::string("'") + key + "' must hold integers");
        out.push_back(e.get<int>());
    }
    return out;
}

std::vector<std::string> read_labels(const json& j) {
    std::vector<std::string> out;
    if (!j.contains("labels")) return out;
    if (!j["labels"].is_array()) fail(errc::schema, "labels must be an array of strings");
    for (const auto& e : j["labels"]) {
        if (!e.is_string()) fail(errc::schema, "labels must be an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

int read_n(const json& j) {
    check_field(j, "n", "an integer", j.contains("n") && j["n"].is_number_integer());
    const int n = j["n"].get<int>();
    require(n >= 0, errc::schema, "n must be non-negative");
    return n;
}

json weights_to_json(const std::vector<double>& w) {
    json arr = json::array();
    for (const double x : w) arr.push_back(format_double(x));
    return arr;
}

json pairs_to_json(const std::vector<std::pair<int, int>>& ps) {
    json arr = json::array();
    for (const auto& [a, b] : ps) arr.push_back(json::array({a, b}));
    return arr;
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
    const json j = parse_json(json_text);
    if (!j.is_object()) fail(errc::schema, "instance file must hold one JSON object");
    check_field(j, "kind", "a string", j.contains("kind") && j["kind"].is_string());
    const std::string kind = j["kind"].get<std::string>();
    const int n = read_n(j);
    auto weights = read_weights(j, n);
    auto edges = read_pairs(j, "edges");
    auto labels = read_labels(j);

    Instance inst;
    inst.kind = kind;
    if (kind == "ssp") {
        WeightedGraph g(n, std::move(weights));
        for (const auto& [u, v] : edges) g.add_edge(u, v);
        g.labels() = std::move(labels);
        inst.ssp = std::move(g);
    } else if (kind == "gsp") {
        BipartiteInstance b;
        b.n = n;
        b.weights = std::move(weights);
        b.satellites = read_int_list(j, "satellites");
        b.gateways = read_int_list(j, "gateways");
        b.links = read_pairs(j, "links");
        for (const int s : b.satellites)
            require(s >= 0 && s < n, errc::schema, "satellite index out of range");
        for (const auto& [s, g] : b.links) {
            require(s >= 0 && s < n, errc::schema, "link satellite index out of range");
            require(g >= 0 && g < static_cast<int>(b.gateways.size()), errc::schema,
                    "link gateway index out of range");
        }
        if (j.contains("link_costs")) {
            if (!j["link_costs"].is_array()) fail(errc::schema, "link_costs must be an array");
            for (const auto& c : j["link_costs"]) b.link_costs.push_back(c.get<double>());
            require(b.link_costs.size() == b.links.size(), errc::schema,
                    "link_costs must align with links");
        }
        if (j.contains("warnings"))
            for (const auto& w : j["warnings"]) b.warnings.push_back(w.get<std::string>());
        b.labels = std::move(labels);
        inst.gsp = std::move(b);
    } else if (kind == "sap") {
        ColoringInstance c;
        c.num_paths = n;
        c.conflicts = read_pairs(j, "conflicts");
        for (auto& [p, q] : c.conflicts) {
            require(p >= 0 && p < n && q >= 0 && q < n, errc::schema, "conflict index out of range");
            require(p != q, errc::schema, "self-conflict on path " + std::to_string(p));
            if (p > q) std::swap(p, q);
        }
        std::sort(c.conflicts.begin(), c.conflicts.end());
        for (std::size_t i = 1; i < c.conflicts.size(); ++i)
            require(c.conflicts[i] != c.conflicts[i - 1], errc::invalid,
                    "duplicate conflict (" + std::to_string(c.conflicts[i].first) + "," +
                        std::to_string(c.conflicts[i].second) + ")");
        c.bands = read_int_list(j, "bands");
        if (j.contains("costs") && !j["costs"].is_null()) {
            if (!j["costs"].is_array()) fail(errc::schema, "costs must be a matrix");
            for (const auto& row : j["costs"]) {
                std::vector<double> r;
                for (const auto& x : row) r.push_back(x.get<double>());
                require(r.size() == c.bands.size(), errc::schema,
                        "costs rows must match the band count");
                c.costs.push_back(std::move(r));
            }
            require(static_cast<int>(c.costs.size()) == n, errc::schema,
                    "costs must have one row per path");
        }
        c.labels = std::move(labels);
        inst.sap = std::move(c);
    } else {
        fail(errc::schema, "unknown instance kind '" + kind + "'");
    }
    return inst;
}

Instance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

std::string instance_to_json(const Instance& inst) {
    json j;
    j["kind"] = inst.kind;
    if (inst.kind == "ssp") {
        const WeightedGraph& g = *inst.ssp;
        j["n"] = g.num_vertices();
        j["weights"] = weights_to_json(g.weights());
        j["edges"] = pairs_to_json(g.edges());
        if (!g.labels().empty()) j["labels"] = g.labels();
    } else if (inst.kind == "gsp") {
        const BipartiteInstance& b = *inst.gsp;
        j["n"] = b.n;
        j["weights"] = weights_to_json(b.weights);
        j["edges"] = json::array();
        j["satellites"] = b.satellites;
        j["gateways"] = b.gateways;
        j["links"] = pairs_to_json(b.links);
        if (!b.link_costs.empty()) j["link_costs"] = b.link_costs;
        if (!b.warnings.empty()) j["warnings"] = b.warnings;
        if (!b.labels.empty()) j["labels"] = b.labels;
    } else if (inst.kind == "sap") {
        const ColoringInstance& c = *inst.sap;
        j["n"] = c.num_paths;
        json zero = json::array();
        for (int i = 0; i < c.num_paths; ++i) zero.push_back("0");
        j["weights"] = zero;
        j["edges"] = json::array();
        json paths = json::array();
        for (int i = 0; i < c.num_paths; ++i) paths.push_back(i);
        j["paths"] = paths;
        j["conflicts"] = pairs_to_json(c.conflicts);
        j["bands"] = c.bands;
        if (!c.costs.empty()) j["costs"] = c.costs;
        if (!c.labels.empty()) j["labels"] = c.labels;
    } else {
        fail(errc::internal, "unset instance kind");
    }
    return j.dump(2) + "\n";
}

void write_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(errc::io, "cannot write " + path);
    out << instance_to_json(inst);
}

Instance make_ssp_instance(WeightedGraph g) {
    Instance i;
    i.kind = "ssp";
    i.ssp = std::move(g);
    return i;
}

Instance make_gsp_instance(BipartiteInstance b) {
    Instance i;
    i.kind = "gsp";
    i.gsp = std::move(b);
    return i;
}

Instance make_sap_instance(ColoringInstance c) {
    Instance i;
    i.kind = "sap";
    i.sap = std::move(c);
    return i;
}

}  // namespace stin
