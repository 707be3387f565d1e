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

#include "stin/instgen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stin/solvers.hpp"

namespace stin {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * kPi / 180.0; }
double rad2deg(double r) { return r * 180.0 / kPi; }

std::array<double, 3> unit_vector(double lat_deg, double lon_deg) {
    const double lat = deg2rad(lat_deg), lon = deg2rad(lon_deg);
    return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

int orientation(const std::array<double, 2>& a, const std::array<double, 2>& b,
                const std::array<double, 2>& c) {
    const double v = (b[1] - a[1]) * (c[0] - a[0]) - (b[0] - a[0]) * (c[1] - a[1]);
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

bool on_segment(const std::array<double, 2>& a, const std::array<double, 2>& b,
                const std::array<double, 2>& p) {
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

bool segments_intersect(const std::array<double, 2>& a, const std::array<double, 2>& b,
                        const std::array<double, 2>& c, const std::array<double, 2>& d) {
    const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

void validate_polygon(const std::vector<std::array<double, 2>>& poly, const char* what) {
    require(poly.size() >= 3, errc::invalid, std::string(what) + " needs at least 3 vertices");
    for (const auto& [lat, lon] : poly) {
        require(lat >= -90.0 && lat <= 90.0, errc::invalid,
                std::string(what) + " latitude out of range");
        require(lon >= -180.0 && lon <= 180.0, errc::invalid,
                std::string(what) + " longitude out of range");
    }
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Segments sharing an endpoint (neighbors in the ring) may touch.
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
                fail(errc::invalid, std::string(what) + " polygon self-intersects");
        }
    }
}

// Even-odd rule in the (lon, lat) plane.
bool point_in_polygon(const std::vector<std::array<double, 2>>& poly, double lat, double lon) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double yi = poly[i][0], xi = poly[i][1];
        const double yj = poly[j][0], xj = poly[j][1];
        if ((yi > lat) != (yj > lat) && lon < (xj - xi) * (lat - yi) / (yj - yi) + xi)
            inside = !inside;
    }
    return inside;
}

std::vector<std::array<double, 2>> parse_polygon(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) fail(errc::schema, std::string(what) + " must be an array of [lat,lon]");
    std::vector<std::array<double, 2>> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            fail(errc::schema, std::string(what) + " vertices must be [lat, lon] numbers");
        out.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return out;
}

std::string node_name(const Topology& topo, int node) {
    if (node < static_cast<int>(topo.labels.size())) return topo.labels[node];
    if (node < topo.num_gateways) return "gw" + std::to_string(node);
    return "base" + std::to_string(node - topo.num_gateways);
}

}  // namespace

Region parse_region(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse, std::string("bad region file: ") + e.what());
    }
    require(j.is_object() && j.contains("boundary"), errc::schema,
            "region file needs a 'boundary' polygon");
    Region r;
    r.boundary = parse_polygon(j.at("boundary"), "boundary");
    validate_polygon(r.boundary, "boundary");
    if (j.contains("covered")) {
        if (!j.at("covered").is_array()) fail(errc::schema, "'covered' must be an array");
        for (const auto& poly : j.at("covered")) {
            r.covered.push_back(parse_polygon(poly, "covered"));
            validate_polygon(r.covered.back(), "covered");
        }
    }
    return r;
}

Region read_region(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_region(buf.str());
}

std::string region_to_json(const Region& r) {
    nlohmann::json j;
    auto poly_json = [](const std::vector<std::array<double, 2>>& poly) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& [lat, lon] : poly) out.push_back({lat, lon});
        return out;
    };
    j["boundary"] = poly_json(r.boundary);
    nlohmann::json covered = nlohmann::json::array();
    for (const auto& poly : r.covered) covered.push_back(poly_json(poly));
    j["covered"] = covered;
    return j.dump(2) + "\n";
}

RegionSampler sample_region(const Region& r, int n_samples, std::uint64_t seed) {
    validate_polygon(r.boundary, "boundary");
    require(n_samples >= 1, errc::invalid, "sample count must be positive");
    double lat_lo = 90.0, lat_hi = -90.0, lon_lo = 180.0, lon_hi = -180.0;
    for (const auto& [lat, lon] : r.boundary) {
        lat_lo = std::min(lat_lo, lat);
        lat_hi = std::max(lat_hi, lat);
        lon_lo = std::min(lon_lo, lon);
        lon_hi = std::max(lon_hi, lon);
    }
    const double z_lo = std::sin(deg2rad(lat_lo)), z_hi = std::sin(deg2rad(lat_hi));

    // Latitude is drawn through its sine so the box is sampled uniformly by
    // area; plain rejection then restricts to the polygon.
    Rng rng(seed);
    RegionSampler s;
    long in_boundary = 0, kept = 0;
    for (int k = 0; k < n_samples; ++k) {
        const double lat = rad2deg(std::asin(rng.uniform(z_lo, z_hi)));
        const double lon = rng.uniform(lon_lo, lon_hi);
        if (!point_in_polygon(r.boundary, lat, lon)) continue;
        ++in_boundary;
        bool covered = false;
        for (const auto& poly : r.covered)
            if (point_in_polygon(poly, lat, lon)) {
                covered = true;
                break;
            }
        if (covered) continue;
        ++kept;
        s.points.push_back({lat, lon});
        s.units.push_back(unit_vector(lat, lon));
    }
    require(in_boundary > 0, errc::invalid, "region boundary has no area");
    s.uncovered_fraction = static_cast<double>(kept) / in_boundary;
    const double box_sr = (z_hi - z_lo) * deg2rad(lon_hi - lon_lo);
    s.boundary_area_sr = box_sr * in_boundary / n_samples;
    return s;
}

bool is_remote(const RegionSampler& s) { return s.uncovered_fraction >= 0.40; }

double footprint_radius_deg(double alt_km, double half_angle_deg) {
    require(half_angle_deg > 0.0 && half_angle_deg < 90.0, errc::invalid,
            "cone half-angle must lie in (0, 90) degrees");
    require(alt_km > 0.0, errc::invalid, "satellite altitude must be positive");
    const double ratio = (kEarthRadiusKm + alt_km) / kEarthRadiusKm;
    const double s = ratio * std::sin(deg2rad(half_angle_deg));
    if (s >= 1.0) return rad2deg(std::acos(1.0 / ratio));  // cone misses the limb
    return rad2deg(std::asin(s)) - half_angle_deg;
}

double coverage_fraction(const GroundSample& sub, const RegionSampler& s,
                         double half_angle_deg) {
    const double radius = footprint_radius_deg(sub.alt_km, half_angle_deg);
    if (s.points.empty()) return 0.0;
    const std::array<double, 3> center = unit_vector(sub.lat_deg, sub.lon_deg);
    const double cos_r = std::cos(deg2rad(radius));
    long hits = 0;
    for (const auto& u : s.units) {
        const double dot = u[0] * center[0] + u[1] * center[1] + u[2] * center[2];
        if (dot >= cos_r) ++hits;
    }
    return static_cast<double>(hits) / s.points.size();
}

double coverage_fraction(const GroundSample& sub, const Region& r, double half_angle_deg) {
    return coverage_fraction(sub, sample_region(r), half_angle_deg);
}

CoverageTrack build_coverage_track(const GroundTrack& track, const RegionSampler& s,
                                   double half_angle_deg) {
    CoverageTrack out;
    out.satellite = track.satellite;
    out.samples.reserve(track.samples.size());
    for (const GroundSample& g : track.samples) {
        CoverageSample c;
        c.t = g.t;
        c.fraction = coverage_fraction(g, s, half_angle_deg);
        c.lat_deg = g.lat_deg;
        c.lon_deg = g.lon_deg;
        c.radius_deg = footprint_radius_deg(g.alt_km, half_angle_deg);
        out.samples.push_back(c);
    }
    return out;
}

WeightedGraph build_ssp_instance(const std::vector<CoverageTrack>& tracks,
                                 const RegionSampler& s, double overlap_threshold) {
    require(overlap_threshold >= 0.0, errc::invalid, "overlap threshold must be non-negative");
    const int num_sats = static_cast<int>(tracks.size());
    const std::size_t num_t = num_sats > 0 ? tracks[0].samples.size() : 0;
    for (const CoverageTrack& tr : tracks) {
        require(tr.samples.size() == num_t, errc::invalid,
                "tracks are not on a common time grid");
        for (std::size_t k = 0; k < num_t; ++k)
            require(std::abs(tr.samples[k].t - tracks[0].samples[k].t) <= 1e-9,
                    errc::invalid, "tracks are not on a common time grid");
    }

    const std::size_t num_p = s.points.size();
    const std::size_t words = (num_p + 63) / 64;
    std::vector<long> cov(num_sats, 0);
    std::vector<std::vector<long>> inter(num_sats, std::vector<long>(num_sats, 0));
    std::vector<std::vector<std::uint64_t>> member(num_sats,
                                                   std::vector<std::uint64_t>(words));
    for (std::size_t k = 0; k < num_t; ++k) {
        for (int i = 0; i < num_sats; ++i) {
            auto& bits = member[i];
            std::fill(bits.begin(), bits.end(), 0);
            const CoverageSample& c = tracks[i].samples[k];
            const std::array<double, 3> center = unit_vector(c.lat_deg, c.lon_deg);
            const double cos_r = std::cos(deg2rad(c.radius_deg));
            for (std::size_t p = 0; p < num_p; ++p) {
                const auto& u = s.units[p];
                const double dot =
                    u[0] * center[0] + u[1] * center[1] + u[2] * center[2];
                if (dot >= cos_r) bits[p >> 6] |= std::uint64_t{1} << (p & 63);
            }
            for (const std::uint64_t w : bits) cov[i] += std::popcount(w);
        }
        for (int i = 0; i < num_sats; ++i)
            for (int j = i + 1; j < num_sats; ++j) {
                long acc = 0;
                for (std::size_t w = 0; w < words; ++w)
                    acc += std::popcount(member[i][w] & member[j][w]);
                inter[i][j] += acc;
            }
    }

    // Satellites that never cover the unserved area drop out.
    std::vector<int> keep, new_id(num_sats, -1);
    std::vector<double> weights;
    std::vector<std::string> names;
    const double denom = static_cast<double>(num_t) * std::max<std::size_t>(num_p, 1);
    for (int i = 0; i < num_sats; ++i) {
        if (cov[i] <= 0) continue;
        new_id[i] = static_cast<int>(keep.size());
        keep.push_back(i);
        weights.push_back(static_cast<double>(cov[i]) / denom);
        names.push_back(tracks[i].satellite);
    }
    WeightedGraph g(static_cast<int>(keep.size()), weights);
    g.labels() = names;
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = a + 1; b < keep.size(); ++b) {
            const int i = keep[a], j = keep[b];
            const double ratio =
                static_cast<double>(inter[i][j]) / std::min(cov[i], cov[j]);
            if (ratio > overlap_threshold) g.add_edge(new_id[i], new_id[j]);
        }
    return g;
}

BipartiteInstance build_gsp_instance(const WeightedGraph& ssp, const VertexSet& selected,
                                     const std::vector<GroundTrack>& tracks,
                                     const std::vector<Site>& gateways,
                                     double min_elevation_deg) {
    require(static_cast<int>(tracks.size()) == ssp.num_vertices(), errc::contract,
            "one ground track per satellite is required");
    BipartiteInstance b;
    b.n = ssp.num_vertices();
    b.weights = ssp.weights();
    b.labels = ssp.labels();
    b.satellites = selected.members;
    b.gateways.resize(gateways.size());
    std::iota(b.gateways.begin(), b.gateways.end(), 0);
    for (const int sat : selected.members) {
        require(sat >= 0 && sat < b.n, errc::invalid, "selected satellite out of range");
        bool linked = false;
        for (std::size_t gw = 0; gw < gateways.size(); ++gw) {
            bool visible = false;
            for (const GroundSample& sample : tracks[sat].samples)
                if (elevation_deg(gateways[gw].lat_deg, gateways[gw].lon_deg,
                                  sample.lat_deg, sample.lon_deg,
                                  sample.alt_km) > min_elevation_deg) {
                    visible = true;
                    break;
                }
            if (visible) {
                b.links.emplace_back(sat, static_cast<int>(gw));
                linked = true;
            }
        }
        if (!linked)
            b.warnings.push_back("satellite " + std::to_string(sat) +
                                 " has no feasible gateway link");
    }
    return b;
}

Topology parse_topology(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse, std::string("bad topology file: ") + e.what());
    }
    require(j.is_object() && j.contains("gateways") && j.contains("bases"), errc::schema,
            "topology needs 'gateways' and 'bases' counts");
    Topology t;
    t.num_gateways = j.at("gateways").get<int>();
    t.num_bases = j.at("bases").get<int>();
    require(t.num_gateways >= 0 && t.num_bases >= 0, errc::schema,
            "node counts must be non-negative");
    const int nodes = t.num_gateways + t.num_bases;
    if (j.contains("edges")) {
        for (const auto& e : j.at("edges")) {
            require(e.is_array() && e.size() == 2, errc::schema, "edges must be pairs");
            int u = e[0].get<int>(), v = e[1].get<int>();
            require(u >= 0 && u < nodes && v >= 0 && v < nodes && u != v, errc::schema,
                    "edge endpoints out of range");
            t.edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(t.edges.begin(), t.edges.end());
        require(std::adjacent_find(t.edges.begin(), t.edges.end()) == t.edges.end(),
                errc::invalid, "duplicate terrestrial edge");
    }
    if (j.contains("sat_links")) {
        for (const auto& e : j.at("sat_links")) {
            require(e.is_array() && e.size() == 2, errc::schema, "sat_links must be pairs");
            int s = e[0].get<int>(), g = e[1].get<int>();
            require(s >= 0 && g >= 0 && g < t.num_gateways, errc::schema,
                    "satellite link endpoints out of range");
            t.sat_links.emplace_back(s, g);
        }
        std::sort(t.sat_links.begin(), t.sat_links.end());
        require(std::adjacent_find(t.sat_links.begin(), t.sat_links.end()) ==
                    t.sat_links.end(),
                errc::invalid, "duplicate satellite link");
    }
    if (j.contains("labels")) {
        for (const auto& l : j.at("labels")) t.labels.push_back(l.get<std::string>());
        require(static_cast<int>(t.labels.size()) == nodes, errc::schema,
                "labels must name every node");
    }
    return t;
}

Topology read_topology(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_topology(buf.str());
}

std::string topology_to_json(const Topology& t) {
    nlohmann::json j;
    j["gateways"] = t.num_gateways;
    j["bases"] = t.num_bases;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [u, v] : t.edges) edges.push_back({u, v});
    j["edges"] = edges;
    nlohmann::json links = nlohmann::json::array();
    for (const auto& [s, g] : t.sat_links) links.push_back({s, g});
    j["sat_links"] = links;
    if (!t.labels.empty()) j["labels"] = t.labels;
    return j.dump(2) + "\n";
}

SapBuild build_sap_instance(const std::vector<std::pair<int, int>>& assignment,
                            const Topology& topo, int num_bands) {
    require(num_bands >= 1, errc::invalid, "band count must be positive");
    const int nodes = topo.num_gateways + topo.num_bases;
    std::vector<std::vector<int>> adj(nodes);
    std::map<std::pair<int, int>, int> edge_id;
    for (std::size_t e = 0; e < topo.edges.size(); ++e) {
        const auto& [u, v] = topo.edges[e];
        adj[u].push_back(v);
        adj[v].push_back(u);
        edge_id[{u, v}] = static_cast<int>(e);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

    std::vector<std::pair<int, int>> assigned(assignment);
    std::sort(assigned.begin(), assigned.end());
    for (std::size_t k = 0; k < assigned.size(); ++k) {
        const auto& [s, g] = assigned[k];
        require(s >= 0, errc::invalid, "satellite index must be non-negative");
        require(g >= 0 && g < topo.num_gateways, errc::invalid, "gateway index out of range");
        require(k == 0 || assigned[k - 1].first != s, errc::invalid,
                "satellite assigned to more than one gateway");
    }

    SapBuild out;
    std::vector<std::vector<int>> path_links;
    std::vector<int> dist(nodes), parent(nodes);
    for (std::size_t k = 0; k < assigned.size(); ++k) {
        const auto& [sat, gw] = assigned[k];
        // One uplink per satellite, shared by all of that satellite's paths.
        const int uplink = static_cast<int>(topo.edges.size() + k);
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::queue<int> frontier;
        dist[gw] = 0;
        frontier.push(gw);
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            for (const int v : adj[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    frontier.push(v);
                }
        }
        for (int base = topo.num_gateways; base < nodes; ++base) {
            if (dist[base] < 0) {
                out.warnings.push_back("satellite " + std::to_string(sat) + ": " +
                                       node_name(topo, base) + " unreachable from " +
                                       node_name(topo, gw));
                continue;
            }
            std::vector<int> links{uplink};
            for (int v = base; v != gw; v = parent[v]) {
                const int u = parent[v];
                links.push_back(edge_id.at({std::min(u, v), std::max(u, v)}));
            }
            std::sort(links.begin(), links.end());
            path_links.push_back(std::move(links));
            out.instance.labels.push_back("sat" + std::to_string(sat) + "->" +
                                          node_name(topo, gw) + "->" +
                                          node_name(topo, base));
        }
    }

    out.instance.num_paths = static_cast<int>(path_links.size());
    for (int p = 0; p < out.instance.num_paths; ++p)
        for (int q = p + 1; q < out.instance.num_paths; ++q) {
            const auto& a = path_links[p];
            const auto& b = path_links[q];
            std::size_t ia = 0, ib = 0;
            bool shared = false;
            while (ia < a.size() && ib < b.size()) {
                if (a[ia] == b[ib]) {
                    shared = true;
                    break;
                }
                (a[ia] < b[ib] ? ia : ib) += 1;
            }
            if (shared) out.instance.conflicts.emplace_back(p, q);
        }
    out.instance.bands.resize(num_bands);
    std::iota(out.instance.bands.begin(), out.instance.bands.end(), 1);
    return out;
}

BipartiteInstance restrict_to_selected(const BipartiteInstance& universe,
                                       const VertexSet& selected) {
    std::set<int> pool(universe.satellites.begin(), universe.satellites.end());
    for (const int s : selected.members)
        require(pool.count(s) > 0, errc::invalid,
                "selected satellite " + std::to_string(s) + " is not in the instance");
    BipartiteInstance b;
    b.n = universe.n;
    b.weights = universe.weights;
    b.gateways = universe.gateways;
    b.labels = universe.labels;
    b.satellites = selected.members;
    std::set<int> chosen(selected.members.begin(), selected.members.end());
    for (std::size_t k = 0; k < universe.links.size(); ++k)
        if (chosen.count(universe.links[k].first)) {
            b.links.push_back(universe.links[k]);
            if (!universe.link_costs.empty()) b.link_costs.push_back(universe.link_costs[k]);
        }
    std::set<int> linked;
    for (const auto& [s, g] : b.links) linked.insert(s);
    for (const int s : selected.members)
        if (!linked.count(s))
            b.warnings.push_back("satellite " + std::to_string(s) +
                                 " has no feasible gateway link");
    return b;
}

std::vector<InstanceTriple> synth_suite(std::uint64_t seed, int count, int n_min, int n_max) {
    require(count >= 0, errc::invalid, "instance count must be non-negative");
    require(n_min >= 1, errc::invalid, "minimum size must be at least 1");
    require(n_max >= n_min, errc::invalid, "size range is empty");

    std::vector<InstanceTriple> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        Rng rng(derive_seed(seed, "synth:" + std::to_string(k)));
        const int n = n_min + static_cast<int>(rng.below(n_max - n_min + 1));

        // Locality-clustered selection graph: satellites live in a unit
        // square and conflict when their patches sit closer than a radius
        // tuned for a sparse expected degree.
        std::vector<std::array<double, 2>> pos(n);
        std::vector<double> weights(n);
        for (int i = 0; i < n; ++i) {
            pos[i] = {rng.uniform(), rng.uniform()};
            weights[i] = 0.05 + 0.95 * rng.uniform();
        }
        WeightedGraph g(n, weights);
        std::vector<std::string> names(n);
        for (int i = 0; i < n; ++i) names[i] = "s" + std::to_string(i);
        g.labels() = names;
        const double radius = std::min(0.45, std::sqrt(2.8 / (kPi * n)));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double dx = pos[i][0] - pos[j][0], dy = pos[i][1] - pos[j][1];
                if (std::sqrt(dx * dx + dy * dy) < radius) g.add_edge(i, j);
            }

        // A small terrestrial world: sites in the same square, wired by a
        // minimum spanning tree plus each node's two nearest neighbors.
        const int m = 2 + static_cast<int>(rng.below(3));
        const int bases = 2 + static_cast<int>(rng.below(2));
        const int nodes = m + bases;
        std::vector<std::array<double, 2>> site(nodes);
        for (int i = 0; i < nodes; ++i) site[i] = {rng.uniform(), rng.uniform()};
        auto site_dist = [&](int a, int b) {
            const double dx = site[a][0] - site[b][0], dy = site[a][1] - site[b][1];
            return std::sqrt(dx * dx + dy * dy);
        };
        std::set<std::pair<int, int>> edges;
        {
            std::vector<char> in_tree(nodes, 0);
            std::vector<double> best(nodes, 1e30);
            std::vector<int> from(nodes, -1);
            in_tree[0] = 1;
            for (int i = 1; i < nodes; ++i) {
                best[i] = site_dist(0, i);
                from[i] = 0;
            }
            for (int round = 1; round < nodes; ++round) {
                int pick = -1;
                for (int i = 0; i < nodes; ++i)
                    if (!in_tree[i] && (pick < 0 || best[i] < best[pick])) pick = i;
                in_tree[pick] = 1;
                edges.insert({std::min(pick, from[pick]), std::max(pick, from[pick])});
                for (int i = 0; i < nodes; ++i)
                    if (!in_tree[i] && site_dist(pick, i) < best[i]) {
                        best[i] = site_dist(pick, i);
                        from[i] = pick;
                    }
            }
        }
        for (int i = 0; i < nodes; ++i) {
            std::vector<int> order;
            for (int j = 0; j < nodes; ++j)
                if (j != i) order.push_back(j);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return std::pair(site_dist(i, a), a) < std::pair(site_dist(i, b), b);
            });
            for (int t = 0; t < 2 && t < static_cast<int>(order.size()); ++t)
                edges.insert({std::min(i, order[t]), std::max(i, order[t])});
        }

        Topology topo;
        topo.num_gateways = m;
        topo.num_bases = bases;
        topo.edges.assign(edges.begin(), edges.end());
        for (int i = 0; i < m; ++i) topo.labels.push_back("gw" + std::to_string(i));
        for (int i = 0; i < bases; ++i) topo.labels.push_back("base" + std::to_string(i));

        // Satellite uplink candidates: the nearest gateway always works, the
        // rest join with a fixed probability.
        std::vector<std::array<double, 2>> gw_pos(site.begin(), site.begin() + m);
        for (int i = 0; i < n; ++i) {
            int nearest = 0;
            double best = 1e30;
            for (int gwi = 0; gwi < m; ++gwi) {
                const double dx = pos[i][0] - gw_pos[gwi][0];
                const double dy = pos[i][1] - gw_pos[gwi][1];
                const double d = std::sqrt(dx * dx + dy * dy);
                if (d < best) {
                    best = d;
                    nearest = gwi;
                }
            }
            for (int gwi = 0; gwi < m; ++gwi)
                if (gwi == nearest || rng.bernoulli(0.35))
                    topo.sat_links.emplace_back(i, gwi);
        }
        std::sort(topo.sat_links.begin(), topo.sat_links.end());

        BipartiteInstance universe;
        universe.n = n;
        universe.weights = weights;
        universe.labels = names;
        universe.satellites.resize(n);
        std::iota(universe.satellites.begin(), universe.satellites.end(), 0);
        universe.gateways.resize(m);
        std::iota(universe.gateways.begin(), universe.gateways.end(), 0);
        universe.links = topo.sat_links;

        const MwisResult greedy = greedy_mwis(g);
        const GspResult assignment =
            gsp_solve(restrict_to_selected(universe, greedy.set));
        // Paths through one uplink or one shared route conflict pairwise, so
        // the needed band count grows with the world, not a fixed range.
        // Probe with the heuristic, then leave one spare band so alternative
        // selections stay feasible too.
        SapBuild probe = build_sap_instance(assignment.assignment, topo, 64);
        const SapResult colored = sap_solve(probe.instance, SapMode::dsatur);
        const int bands = std::max(3, colored.distinct_bands + 1 +
                                          static_cast<int>(rng.below(2)));
        SapBuild sap = build_sap_instance(assignment.assignment, topo, bands);

        InstanceTriple triple;
        triple.id = "synth-" + std::to_string(seed) + "-" + std::to_string(k);
        triple.ssp = make_ssp_instance(std::move(g));
        triple.gsp = make_gsp_instance(std::move(universe));
        triple.sap = make_sap_instance(std::move(sap.instance));
        triple.topo = std::move(topo);
        out.push_back(std::move(triple));
    }
    return out;
}

void write_triple(const InstanceTriple& t, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_instance(t.ssp, dir + "/" + t.id + ".ssp.json");
    write_instance(t.gsp, dir + "/" + t.id + ".gsp.json");
    write_instance(t.sap, dir + "/" + t.id + ".sap.json");
    std::ofstream out(dir + "/" + t.id + ".topo.json");
    if (!out) fail(errc::io, "cannot write " + dir + "/" + t.id + ".topo.json");
    out << topology_to_json(t.topo);
}

InstanceTriple read_triple(const std::string& dir, const std::string& id) {
    InstanceTriple t;
    t.id = id;
    t.ssp = read_instance(dir + "/" + id + ".ssp.json");
    t.gsp = read_instance(dir + "/" + id + ".gsp.json");
    t.sap = read_instance(dir + "/" + id + ".sap.json");
    t.topo = read_topology(dir + "/" + id + ".topo.json");
    require(t.ssp.kind == "ssp" && t.gsp.kind == "gsp" && t.sap.kind == "sap", errc::schema,
            "triple files disagree with their kinds");
    return t;
}

}  // namespace stin
