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

#include "helpers.hpp"
#include "stin/graph.hpp"

using namespace stin;
using namespace stin::testing;

TEST_CASE("construction rejects malformed graphs") {
    CHECK(thrown_code([] { WeightedGraph(-1, {}); }) == static_cast<int>(errc::invalid));
    CHECK(thrown_code([] { WeightedGraph(2, {1.0}); }) == static_cast<int>(errc::invalid));
    CHECK(thrown_code([] { WeightedGraph(1, {-0.5}); }) == static_cast<int>(errc::invalid));
    CHECK(thrown_code([] {
              WeightedGraph(1, {std::numeric_limits<double>::quiet_NaN()});
          }) == static_cast<int>(errc::invalid));

    WeightedGraph g(3, {1.0, 1.0, 1.0});
    g.add_edge(0, 1);
    CHECK(thrown_code([&] { g.add_edge(1, 1); }) == static_cast<int>(errc::invalid));
    CHECK(thrown_code([&] { g.add_edge(1, 0); }) == static_cast<int>(errc::invalid));
    CHECK(thrown_code([&] { g.add_edge(0, 3); }) == static_cast<int>(errc::invalid));
}

TEST_CASE("edges are stored normalized and sorted") {
    WeightedGraph g(4, {1, 1, 1, 1});
    g.add_edge(3, 1);
    g.add_edge(2, 0);
    const std::vector<std::pair<int, int>> want{{0, 2}, {1, 3}};
    CHECK(g.edges() == want);
    CHECK(g.has_edge(1, 3));
    CHECK(g.has_edge(3, 1));
    CHECK_FALSE(g.has_edge(0, 1));
    CHECK_FALSE(g.has_edge(0, 0));
    CHECK_FALSE(g.has_edge(-1, 2));
    CHECK(g.degree(1) == 1);
    CHECK(g.neighbors(0) == std::vector<int>{2});
}

TEST_CASE("vertex sets sort, deduplicate, and total the weights") {
    WeightedGraph g(4, {0.25, 0.5, 1.0, 2.0});
    const VertexSet s = make_vertex_set(g, {3, 1, 3});
    CHECK(s.members == std::vector<int>{1, 3});
    CHECK(s.objective == 2.5);
    CHECK(thrown_code([&] { make_vertex_set(g, {4}); }) == static_cast<int>(errc::invalid));
}

TEST_CASE("independence and maximality checks agree with definitions") {
    const WeightedGraph g = path_graph(4);
    CHECK(is_independent(g, make_vertex_set(g, {0, 2})));
    CHECK_FALSE(is_independent(g, make_vertex_set(g, {0, 1})));
    CHECK(is_maximal(g, make_vertex_set(g, {0, 2})));
    CHECK_FALSE(is_maximal(g, make_vertex_set(g, {0})));
    CHECK(is_maximal(g, make_vertex_set(g, {1, 3})));
    CHECK(thrown_code([&] { is_maximal(g, make_vertex_set(g, {0, 1})); }) ==
          static_cast<int>(errc::contract));

    const WeightedGraph empty(0, {});
    CHECK(is_independent(empty, {}));
    CHECK(is_maximal(empty, {}));
}

TEST_CASE("selection instances survive a serialization round trip") {
    WeightedGraph g = path_graph(3, {0.1, 0.2, 0.30000000000000004});
    g.labels() = {"a", "b", "c"};
    const Instance inst = make_ssp_instance(std::move(g));
    const Instance back = parse_instance(instance_to_json(inst));
    REQUIRE(back.kind == "ssp");
    const WeightedGraph& h = *back.ssp;
    REQUIRE(h.num_vertices() == 3);
    // Weights travel as shortest round-trip decimal strings, so equality is
    // bitwise, including the non-representable ones.
    for (int v = 0; v < 3; ++v) CHECK(h.weight(v) == inst.ssp->weight(v));
    CHECK(h.edges() == inst.ssp->edges());
    CHECK(h.labels() == inst.ssp->labels());
}

TEST_CASE("gateway instances survive a serialization round trip") {
    BipartiteInstance b;
    b.n = 3;
    b.weights = {0.5, 0.25, 0.125};
    b.satellites = {0, 2};
    b.gateways = {0, 1};
    b.links = {{0, 0}, {0, 1}, {2, 1}};
    b.link_costs = {1.0, 2.0, 1.5};
    b.labels = {"s0", "s1", "s2"};
    b.warnings = {"note"};
    const Instance inst = make_gsp_instance(b);
    const Instance back = parse_instance(instance_to_json(inst));
    REQUIRE(back.kind == "gsp");
    CHECK(back.gsp->satellites == b.satellites);
    CHECK(back.gsp->gateways == b.gateways);
    CHECK(back.gsp->links == b.links);
    CHECK(back.gsp->link_costs == b.link_costs);
    CHECK(back.gsp->weights == b.weights);
}

TEST_CASE("band instances survive a serialization round trip") {
    ColoringInstance c;
    c.num_paths = 3;
    c.conflicts = {{0, 1}, {1, 2}};
    c.bands = {1, 2, 3, 4};
    c.costs = {{1, 2, 3, 4}, {4, 3, 2, 1}, {1, 1, 1, 1}};
    const Instance inst = make_sap_instance(c);
    const Instance back = parse_instance(instance_to_json(inst));
    REQUIRE(back.kind == "sap");
    CHECK(back.sap->num_paths == 3);
    CHECK(back.sap->conflicts == c.conflicts);
    CHECK(back.sap->bands == c.bands);
    CHECK(back.sap->costs == c.costs);
    CHECK(back.sap->cost(1, 0) == 4.0);

    ColoringInstance bare;
    bare.num_paths = 2;
    bare.bands = {7, 9};
    // No cost matrix: position in the band list, counted from one.
    CHECK(bare.cost(0, 0) == 1.0);
    CHECK(bare.cost(1, 1) == 2.0);
}

TEST_CASE("instance parsing reports the right error category") {
    CHECK(thrown_code([] { parse_instance("{nope"); }) == static_cast<int>(errc::parse));
    CHECK(thrown_code([] { parse_instance("[1,2]"); }) == static_cast<int>(errc::schema));
    CHECK(thrown_code([] { parse_instance(R"({"kind":"xyz"})"); }) ==
          static_cast<int>(errc::schema));
    CHECK(thrown_code([] {
              parse_instance(R"({"kind":"ssp","n":1,"weights":["-1"],"edges":[]})");
          }) == static_cast<int>(errc::invalid));
    CHECK(thrown_code([] { parse_instance(R"({"kind":"ssp","n":1})"); }) ==
          static_cast<int>(errc::schema));
    CHECK(thrown_code([] { read_instance("/nonexistent/file.json"); }) ==
          static_cast<int>(errc::io));
}
