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
#include <cstdint>
#include <string>
#include <vector>

#include "stin/graph.hpp"
#include "stin/orbits.hpp"

namespace stin {

// Service area on the ground. The boundary must be a simple polygon; the
// covered sub-polygons mark terrain already served terrestrially, so only the
// remainder counts toward satellite demand. Antimeridian-crossing regions are
// not supported.
struct Region {
    std::vector<std::array<double, 2>> boundary;               // (lat, lon) degrees
    std::vector<std::vector<std::array<double, 2>>> covered;
};

Region parse_region(const std::string& json_text);
Region read_region(const std::string& path);
std::string region_to_json(const Region& r);

inline constexpr int kDefaultMcSamples = 20000;
inline constexpr std::uint64_t kDefaultMcSeed = 0x73'74'69'6e;

// Fixed Monte Carlo point cloud over the unserved part of a region. Building
// it once and reusing it keeps every area fraction deterministic and makes
// repeated footprint queries cheap.
struct RegionSampler {
    std::vector<std::array<double, 2>> points;    // (lat, lon) on the unserved part
    std::vector<std::array<double, 3>> units;     // same points as unit vectors
    double uncovered_fraction = 0.0;              // unserved share of the boundary area
    double boundary_area_sr = 0.0;                // steradians, sampled estimate
};

RegionSampler sample_region(const Region& r, int n_samples = kDefaultMcSamples,
                            std::uint64_t seed = kDefaultMcSeed);

// A region counts as remote when terrestrial service reaches at most 60% of it.
bool is_remote(const RegionSampler& s);

// Ground radius (central angle, degrees) of the circular footprint a cone of
// the given half-angle cuts out from the given altitude.
double footprint_radius_deg(double alt_km, double half_angle_deg);

// Share of the unserved area inside the footprint around the sub-satellite
// point. The Region overload resamples with the default seed on every call;
// prefer the sampler form in loops.
double coverage_fraction(const GroundSample& sub, const RegionSampler& s,
                         double half_angle_deg);
double coverage_fraction(const GroundSample& sub, const Region& r, double half_angle_deg);

struct CoverageSample {
    double t = 0.0;
    double fraction = 0.0;     // of the unserved area
    double lat_deg = 0.0;      // footprint center
    double lon_deg = 0.0;
    double radius_deg = 0.0;   // footprint central angle
};

struct CoverageTrack {
    std::string satellite;
    std::vector<CoverageSample> samples;
};

CoverageTrack build_coverage_track(const GroundTrack& track, const RegionSampler& s,
                                   double half_angle_deg);

// Satellite-selection graph: one vertex per satellite that covers any of the
// unserved area, weighted by its time-averaged covered share; an edge joins
// two satellites whose footprints overlap (as a share of the smaller coverage,
// matched in time) beyond the threshold.
WeightedGraph build_ssp_instance(const std::vector<CoverageTrack>& tracks,
                                 const RegionSampler& s, double overlap_threshold = 0.9);

// Gateway-assignment instance for the selected satellites: a link exists when
// the satellite clears the elevation mask from the gateway site at any track
// sample. Satellites that see no gateway are recorded as warnings.
BipartiteInstance build_gsp_instance(const WeightedGraph& ssp, const VertexSet& selected,
                                     const std::vector<GroundTrack>& tracks,
                                     const std::vector<Site>& gateways,
                                     double min_elevation_deg = 10.0);

// Terrestrial topology: gateways occupy node ids [0, num_gateways), base
// stations follow. `sat_links` lists every candidate satellite-gateway link,
// of which a gateway assignment picks one per satellite.
struct Topology {
    int num_gateways = 0;
    int num_bases = 0;
    std::vector<std::pair<int, int>> edges;      // undirected terrestrial links
    std::vector<std::pair<int, int>> sat_links;  // (satellite, gateway) candidates
    std::vector<std::string> labels;             // optional node names, gateways first
};

Topology parse_topology(const std::string& json_text);
Topology read_topology(const std::string& path);
std::string topology_to_json(const Topology& t);

struct SapBuild {
    ColoringInstance instance;
    std::vector<std::string> warnings;  // e.g. base stations no route reaches
};

// One path per (assigned satellite, reachable base station): the satellite's
// uplink followed by the breadth-first shortest route from its gateway.
// Conflicts join paths sharing any link. Bands are labeled 1..num_bands.
SapBuild build_sap_instance(const std::vector<std::pair<int, int>>& assignment,
                            const Topology& topo, int num_bands);

// Gateway instance restricted to a chosen satellite subset, dropping links of
// unselected satellites. Used when a selection stage feeds the next stage.
BipartiteInstance restrict_to_selected(const BipartiteInstance& universe,
                                       const VertexSet& selected);

struct InstanceTriple {
    std::string id;
    Instance ssp;
    Instance gsp;
    Instance sap;
    Topology topo;
};

// Deterministic desk-scale stand-ins: sparse locality-clustered selection
// graphs with weights in (0,1], a small terrestrial world, and a coupled
// band-assignment instance derived from the greedy selection chain.
std::vector<InstanceTriple> synth_suite(std::uint64_t seed, int count, int n_min, int n_max);

void write_triple(const InstanceTriple& t, const std::string& dir);
InstanceTriple read_triple(const std::string& dir, const std::string& id);

}  // namespace stin
