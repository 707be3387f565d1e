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

#include "stin/geometry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stin {

using nlohmann::json;

double HardwareGeometry::diag() const { return std::hypot(width, height); }

double pair_distance(const Layout& l, int i, int j) {
    return std::hypot(l.coords[i][0] - l.coords[j][0], l.coords[i][1] - l.coords[j][1]);
}

std::vector<Violation> hard_violations(const Layout& l) {
    std::vector<Violation> out;
    const HardwareGeometry& g = l.geom;
    const int n = l.size();
    const double eps = 1e-9;
    for (int i = 0; i < n; ++i) {
        const auto& [x, y] = l.coords[i];
        if (x < -eps || x > g.width + eps || y < -eps || y > g.height + eps)
            out.push_back({"register_bounds", i, -1, std::max({-x, x - g.width, -y, y - g.height})});
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dist = pair_distance(l, i, j);
            if (dist < g.d_min - eps) out.push_back({"min_distance", i, j, dist});
            const double dy = std::abs(l.coords[i][1] - l.coords[j][1]);
            if (dy > eps && dy < g.d_row - eps) out.push_back({"row_spacing", i, j, dy});
        }
    return out;
}

EmbeddingReport validate_embedding(const WeightedGraph& g, const Layout& l) {
    require(l.size() == g.num_vertices(), errc::contract,
            "layout size does not match the graph");
    EmbeddingReport r;
    r.d = 0.0;
    r.D = std::numeric_limits<double>::infinity();
    for (int i = 0; i < l.size(); ++i)
        for (int j = i + 1; j < l.size(); ++j) {
            const double dist = pair_distance(l, i, j);
            if (g.has_edge(i, j))
                r.d = std::max(r.d, dist);
            else
                r.D = std::min(r.D, dist);
        }
    r.is_unit_disk = r.d < r.D;
    r.gap = r.D - r.d;
    r.violations = hard_violations(l);
    return r;
}

namespace {

json geometry_to_json(const HardwareGeometry& g) {
    return json{{"d_min", g.d_min}, {"d_row", g.d_row},   {"d_adj", g.d_adj},
                {"width", g.width}, {"height", g.height}, {"grid", g.grid}};
}

HardwareGeometry geometry_from_json(const json& j) {
    HardwareGeometry g;
    if (j.contains("d_min")) g.d_min = j["d_min"].get<double>();
    if (j.contains("d_row")) g.d_row = j["d_row"].get<double>();
    if (j.contains("d_adj")) g.d_adj = j["d_adj"].get<double>();
    if (j.contains("width")) g.width = j["width"].get<double>();
    if (j.contains("height")) g.height = j["height"].get<double>();
    if (j.contains("grid")) g.grid = j["grid"].get<double>();
    require(g.d_min > 0 && g.d_row > 0 && g.d_adj > 0 && g.width > 0 && g.height > 0 &&
                g.grid > 0,
            errc::schema, "geometry fields must be positive");
    return g;
}

}  // namespace

Layout parse_layout(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded()) fail(errc::parse, "malformed layout JSON");
    Layout l;
    if (j.contains("geometry")) l.geom = geometry_from_json(j["geometry"]);
    require(j.contains("coords") && j["coords"].is_array(), errc::schema,
            "layout needs a 'coords' array");
    for (const auto& c : j["coords"]) {
        require(c.is_array() && c.size() == 2, errc::schema, "coords entries must be [x, y]");
        l.coords.push_back({c[0].get<double>(), c[1].get<double>()});
    }
    return l;
}

Layout read_layout(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_layout(ss.str());
}

std::string layout_to_json(const Layout& l) {
    json j;
    json coords = json::array();
    for (const auto& [x, y] : l.coords) coords.push_back(json::array({x, y}));
    j["coords"] = coords;
    j["geometry"] = geometry_to_json(l.geom);
    return j.dump(2) + "\n";
}

void write_layout(const Layout& l, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(errc::io, "cannot write " + path);
    out << layout_to_json(l);
}

std::string report_to_json(const EmbeddingReport& r) {
    json j;
    j["d"] = r.d;
    if (std::isinf(r.D)) {
        j["D"] = nullptr;
        j["gap"] = nullptr;
    } else {
        j["D"] = r.D;
        j["gap"] = r.gap;
    }
    j["is_unit_disk"] = r.is_unit_disk;
    json vs = json::array();
    for (const auto& v : r.violations)
        vs.push_back({{"type", v.type}, {"a", v.a}, {"b", v.b}, {"value", v.value}});
    j["violations"] = vs;
    return j.dump(2) + "\n";
}

}  // namespace stin
