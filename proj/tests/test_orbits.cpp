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

#include <cmath>
#include <cstdio>
#include <fstream>

#include "helpers.hpp"
#include "stin/orbits.hpp"

using namespace stin;
using namespace stin::testing;

namespace {

TLERecord circular_record(double inclination_deg, double mean_motion) {
    TLERecord r;
    r.name = "PROBE-1";
    r.epoch_year = 2024;
    r.epoch_day = 123.5;
    r.inclination_deg = inclination_deg;
    r.raan_deg = 40.0;
    r.eccentricity = 0.0;
    r.arg_perigee_deg = 0.0;
    r.mean_anomaly_deg = 10.0;
    r.mean_motion_rev_day = mean_motion;
    return r;
}

double semi_major_axis_km(double mean_motion_rev_day) {
    // Kepler's third law: n^2 a^3 = mu.
    const double n = mean_motion_rev_day * 2.0 * M_PI / 86400.0;
    return std::cbrt(kEarthMuKm3S2 / (n * n));
}

double norm3(const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

}  // namespace

TEST_CASE("formatted element sets parse back to the same orbit") {
    TLERecord r = circular_record(87.9, 13.15);
    r.eccentricity = 0.0012345;
    r.arg_perigee_deg = 102.4;
    const auto parsed = parse_tle(format_tle(r));
    REQUIRE(parsed.size() == 1);
    const TLERecord& p = parsed[0];
    CHECK(p.name == "PROBE-1");
    CHECK(p.epoch_year == 2024);
    CHECK(p.epoch_day == doctest::Approx(123.5).epsilon(1e-9));
    CHECK(p.inclination_deg == doctest::Approx(87.9).epsilon(1e-9));
    CHECK(p.raan_deg == doctest::Approx(40.0).epsilon(1e-9));
    CHECK(p.eccentricity == doctest::Approx(0.0012345).epsilon(1e-9));
    CHECK(p.arg_perigee_deg == doctest::Approx(102.4).epsilon(1e-9));
    CHECK(p.mean_anomaly_deg == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(p.mean_motion_rev_day == doctest::Approx(13.15).epsilon(1e-12));
}

TEST_CASE("empty element text yields no records") {
    CHECK(parse_tle("").empty());
    CHECK(parse_tle("\n  \n").empty());
}

TEST_CASE("a corrupted checksum is caught with its line number") {
    std::string text = format_tle(circular_record(87.9, 13.15));
    // The final character of the last element line is its checksum digit.
    const std::size_t last = text.find_last_not_of('\n');
    REQUIRE(last != std::string::npos);
    text[last] = static_cast<char>('0' + (text[last] - '0' + 1) % 10);
    try {
        parse_tle(text);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == errc::parse);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        CHECK(std::string(e.what()).find("checksum") != std::string::npos);
    }
}

TEST_CASE("truncated element lines are rejected") {
    std::string text = format_tle(circular_record(87.9, 13.15));
    // Drop one column from the second element line.
    const std::size_t last = text.find_last_not_of('\n');
    text.erase(last - 1, 1);
    CHECK(thrown_code([&] { parse_tle(text); }) == static_cast<int>(errc::parse));
}

TEST_CASE("garbage in a numeric field is a parse error") {
    std::string text = format_tle(circular_record(51.6, 15.5));
    const std::size_t incl = text.find("51.6");
    REQUIRE(incl != std::string::npos);
    text[incl] = 'x';
    CHECK(thrown_code([&] { parse_tle(text); }) == static_cast<int>(errc::parse));
}

TEST_CASE("period and epoch arithmetic") {
    const TLERecord r = circular_record(87.9, 13.15);
    CHECK(r.period_s() == doctest::Approx(86400.0 / 13.15).epsilon(1e-12));

    TLERecord noon = r;
    noon.epoch_year = 2024;
    noon.epoch_day = 1.5;  // Jan 1, 12:00 UTC
    CHECK(noon.epoch_jd() == doctest::Approx(2460311.0).epsilon(1e-9));
}

TEST_CASE("circular orbits keep the third-law radius and speed") {
    const TLERecord r = circular_record(87.9, 13.15);
    const double a = semi_major_axis_km(13.15);
    for (const double t : {0.0, 500.0, 2000.0, 5000.0}) {
        const OrbitState st = state_eci(r, t);
        CHECK(norm3(st.pos_km) == doctest::Approx(a).epsilon(1e-9));
        CHECK(norm3(st.vel_km_s) == doctest::Approx(std::sqrt(kEarthMuKm3S2 / a)).epsilon(1e-9));
    }
}

TEST_CASE("eccentric orbits conserve specific orbital energy") {
    TLERecord r = circular_record(63.4, 14.2);
    r.eccentricity = 0.12;
    r.arg_perigee_deg = 270.0;
    const double a = semi_major_axis_km(14.2);
    const double expected = -kEarthMuKm3S2 / (2.0 * a);  // vis-viva
    for (const double t : {0.0, 333.0, 1717.0, 4242.0, 6000.0}) {
        const OrbitState st = state_eci(r, t);
        const double v = norm3(st.vel_km_s), rad = norm3(st.pos_km);
        CHECK(v * v / 2.0 - kEarthMuKm3S2 / rad == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("the orbit closes after one period") {
    TLERecord r = circular_record(87.9, 13.15);
    r.eccentricity = 0.05;
    const OrbitState s0 = state_eci(r, 0.0);
    const OrbitState s1 = state_eci(r, r.period_s());
    for (int k = 0; k < 3; ++k) {
        CHECK(s1.pos_km[k] == doctest::Approx(s0.pos_km[k]).epsilon(1e-6));
        CHECK(s1.vel_km_s[k] == doctest::Approx(s0.vel_km_s[k]).epsilon(1e-6));
    }
}

TEST_CASE("equatorial ground tracks stay on the equator") {
    const TLERecord r = circular_record(0.0, 13.15);
    const GroundTrack track = propagate(r, 0.0, r.period_s(), 60.0);
    const double a = semi_major_axis_km(13.15);
    for (const GroundSample& s : track.samples) {
        CHECK(std::abs(s.lat_deg) < 1e-9);
        CHECK(s.alt_km == doctest::Approx(a - kEarthRadiusKm).epsilon(1e-9));
    }
}

TEST_CASE("polar ground tracks reach high latitude") {
    const TLERecord r = circular_record(90.0, 13.15);
    const GroundTrack track = propagate(r, 0.0, r.period_s(), 30.0);
    double peak = 0.0;
    for (const GroundSample& s : track.samples) peak = std::max(peak, std::abs(s.lat_deg));
    CHECK(peak >= 89.0);
}

TEST_CASE("propagation samples the window inclusively") {
    const TLERecord r = circular_record(45.0, 13.15);
    const GroundTrack track = propagate(r, 0.0, 60.0, 10.0);
    REQUIRE(track.samples.size() == 7);
    CHECK(track.samples.front().t == 0.0);
    CHECK(track.samples.back().t == doctest::Approx(60.0));
    CHECK(track.satellite == "PROBE-1");
}

TEST_CASE("degenerate propagation requests are refused") {
    const TLERecord r = circular_record(45.0, 13.15);
    CHECK(thrown_code([&] { propagate(r, 10.0, 10.0, 1.0); }) == static_cast<int>(errc::invalid));
    CHECK(thrown_code([&] { propagate(r, 0.0, 10.0, 0.0); }) == static_cast<int>(errc::invalid));
    TLERecord hyper = r;
    hyper.eccentricity = 1.2;
    CHECK(thrown_code([&] { state_eci(hyper, 0.0); }) == static_cast<int>(errc::invalid));
}

TEST_CASE("elevation covers overhead, horizon, and antipode") {
    CHECK(elevation_deg(10.0, 20.0, 10.0, 20.0, 550.0) == doctest::Approx(90.0));
    CHECK(elevation_deg(10.0, 20.0, -10.0, -160.0, 550.0) == doctest::Approx(-90.0));

    // The horizon sits where the central angle reaches acos(R / (R + h)).
    const double h = 550.0;
    const double horizon = std::acos(kEarthRadiusKm / (kEarthRadiusKm + h)) * 180.0 / M_PI;
    CHECK(elevation_deg(0.0, 0.0, 0.0, horizon, h) == doctest::Approx(0.0).scale(1.0));
    CHECK(elevation_deg(0.0, 0.0, 0.0, horizon - 5.0, h) > 0.0);
    CHECK(elevation_deg(0.0, 0.0, 0.0, horizon + 5.0, h) < 0.0);
}

TEST_CASE("site lists parse with trimming and an optional header") {
    const std::string csv =
        "name,lat,lon,kind\r\n"
        "GW-A, 69.65 , 18.96 ,gateway\n"
        "\n"
        "BASE-1,-33.45,-70.66,base\n";
    const auto sites = parse_sites_csv(csv);
    REQUIRE(sites.size() == 2);
    CHECK(sites[0].name == "GW-A");
    CHECK(sites[0].lat_deg == doctest::Approx(69.65));
    CHECK(sites[0].lon_deg == doctest::Approx(18.96));
    CHECK(sites[0].kind == "gateway");
    CHECK(sites[1].name == "BASE-1");
    CHECK(sites[1].kind == "base");
}

TEST_CASE("bad site rows are rejected with positions") {
    CHECK(thrown_code([] { parse_sites_csv("A,1,2\n"); }) == static_cast<int>(errc::parse));
    CHECK(thrown_code([] { parse_sites_csv("A,91,0,base\n"); }) == static_cast<int>(errc::invalid));
    CHECK(thrown_code([] { parse_sites_csv("A,0,181,base\n"); }) == static_cast<int>(errc::invalid));
    CHECK(thrown_code([] { parse_sites_csv("A,zzz,0,base\n"); }) == static_cast<int>(errc::parse));
    CHECK(thrown_code([] { read_sites("/nonexistent/sites.csv"); }) == static_cast<int>(errc::io));
}
