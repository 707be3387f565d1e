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
#include <string>
#include <vector>

#include "stin/common.hpp"

namespace stin {

inline constexpr double kEarthMuKm3S2 = 398600.4418;
inline constexpr double kEarthRadiusKm = 6378.137;

struct TLERecord {
    std::string name;
    int epoch_year = 0;      // four digits
    double epoch_day = 0.0;  // fractional day of year, 1.0 = Jan 1 00:00 UTC
    double inclination_deg = 0.0;
    double raan_deg = 0.0;
    double eccentricity = 0.0;
    double arg_perigee_deg = 0.0;
    double mean_anomaly_deg = 0.0;
    double mean_motion_rev_day = 0.0;

    double period_s() const { return 86400.0 / mean_motion_rev_day; }
    double epoch_jd() const;
};

// Three-line records: a name line followed by the two 69-column element
// lines. Checksums are verified; malformed input reports the offending
// physical line number.
std::vector<TLERecord> parse_tle(const std::string& text);

std::string format_tle(const TLERecord& rec);  // round-trip aid for tests and synthesis

struct GroundSample {
    double t = 0.0;  // seconds since epoch
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double alt_km = 0.0;
};

struct GroundTrack {
    std::string satellite;
    std::vector<GroundSample> samples;
};

// Inertial position/velocity of the two-body orbit at `t` seconds past epoch.
struct OrbitState {
    std::array<double, 3> pos_km;
    std::array<double, 3> vel_km_s;
};
OrbitState state_eci(const TLERecord& rec, double t);

// Unperturbed propagation sampled every `step` seconds across [t0, t1]; the
// ground track rotates with the Earth (sidereal rate referenced to the epoch).
GroundTrack propagate(const TLERecord& rec, double t0, double t1, double step);

// Elevation of a satellite above the horizon of a ground site, spherical
// Earth. Negative values mean below the horizon.
double elevation_deg(double site_lat_deg, double site_lon_deg, double sub_lat_deg,
                     double sub_lon_deg, double alt_km);

struct Site {
    std::string name;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    std::string kind;  // "gateway" or "base"
};

// CSV rows `name,lat,lon,kind`; a leading header row is skipped when present.
std::vector<Site> parse_sites_csv(const std::string& text);
std::vector<Site> read_sites(const std::string& path);

}  // namespace stin
