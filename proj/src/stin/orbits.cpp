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

#include "stin/orbits.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace stin {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * kPi / 180.0; }
double rad2deg(double r) { return r * 180.0 / kPi; }

double wrap180(double lon) {
    lon = std::fmod(lon + 180.0, 360.0);
    if (lon < 0.0) lon += 360.0;
    return lon - 180.0;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Element-line checksum over the first 68 columns: digits count their value,
// a minus sign counts one, everything else zero; column 69 holds the total
// modulo ten.
int tle_checksum(std::string_view body) {
    int sum = 0;
    for (const char c : body.substr(0, 68)) {
        if (c >= '0' && c <= '9') sum += c - '0';
        else if (c == '-') sum += 1;
    }
    return sum % 10;
}

double parse_field(std::string_view line, std::size_t pos, std::size_t len, int lineno,
                   const std::string& what) {
    const std::string field = trim(line.substr(pos, len));
    require(!field.empty(), errc::parse,
            "line " + std::to_string(lineno) + ": empty " + what + " field");
    return parse_double(field, errc::parse,
                        "line " + std::to_string(lineno) + ": bad " + what + " field");
}

void check_element_line(std::string_view line, char which, int lineno) {
    require(line.size() == 69, errc::parse,
            "line " + std::to_string(lineno) + ": element lines must be 69 columns");
    require(line[0] == which, errc::parse,
            "line " + std::to_string(lineno) + ": expected a '" + std::string(1, which) +
                "' line");
    const int want = line[68] - '0';
    require(want >= 0 && want <= 9, errc::parse,
            "line " + std::to_string(lineno) + ": checksum column is not a digit");
    require(tle_checksum(line) == want, errc::parse,
            "line " + std::to_string(lineno) + ": checksum mismatch");
}

double gmst_deg(double jd) {
    double g = std::fmod(280.46061837 + 360.98564736629 * (jd - 2451545.0), 360.0);
    if (g < 0.0) g += 360.0;
    return g;
}

double solve_kepler(double mean_anomaly, double e) {
    double m = std::fmod(mean_anomaly, 2.0 * kPi);
    if (m < 0.0) m += 2.0 * kPi;
    double ecc_anomaly = m;
    for (int it = 0; it < 60; ++it) {
        const double d =
            (ecc_anomaly - e * std::sin(ecc_anomaly) - m) / (1.0 - e * std::cos(ecc_anomaly));
        ecc_anomaly -= d;
        if (std::abs(d) < 1e-13) break;
    }
    return ecc_anomaly;
}

}  // namespace

double TLERecord::epoch_jd() const {
    // Julian day number of Jan 1 (noon) for the epoch year, then shift to the
    // fractional day of year, where day 1.0 is Jan 1 00:00 UTC.
    const long yy = epoch_year + 4799;  // month fixed to January
    const long jdn = 1 + (153L * 10 + 2) / 5 + 365L * yy + yy / 4 - yy / 100 + yy / 400 - 32045;
    return static_cast<double>(jdn) - 0.5 + (epoch_day - 1.0);
}

std::vector<TLERecord> parse_tle(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::string cur;
        std::istringstream in(text);
        while (std::getline(in, cur)) {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
        }
    }
    std::vector<TLERecord> out;
    std::size_t i = 0;
    while (i < lines.size()) {
        if (trim(lines[i]).empty()) {
            ++i;
            continue;
        }
        require(i + 2 < lines.size(), errc::parse,
                "line " + std::to_string(i + 1) + ": truncated record");
        const std::string name = trim(lines[i]);
        const std::string& l1 = lines[i + 1];
        const std::string& l2 = lines[i + 2];
        const int n1 = static_cast<int>(i) + 2, n2 = static_cast<int>(i) + 3;
        check_element_line(l1, '1', n1);
        check_element_line(l2, '2', n2);

        TLERecord rec;
        rec.name = name;
        const double yy = parse_field(l1, 18, 2, n1, "epoch year");
        rec.epoch_year = static_cast<int>(yy) < 57 ? 2000 + static_cast<int>(yy)
                                                   : 1900 + static_cast<int>(yy);
        rec.epoch_day = parse_field(l1, 20, 12, n1, "epoch day");
        require(rec.epoch_day > 0.0 && rec.epoch_day < 367.0, errc::parse,
                "line " + std::to_string(n1) + ": epoch day out of range");

        rec.inclination_deg = parse_field(l2, 8, 8, n2, "inclination");
        require(rec.inclination_deg >= 0.0 && rec.inclination_deg <= 180.0, errc::parse,
                "line " + std::to_string(n2) + ": inclination out of range");
        rec.raan_deg = parse_field(l2, 17, 8, n2, "right ascension");
        rec.eccentricity =
            parse_double("0." + trim(l2.substr(26, 7)), errc::parse,
                         "line " + std::to_string(n2) + ": bad eccentricity field");
        rec.arg_perigee_deg = parse_field(l2, 34, 8, n2, "argument of perigee");
        rec.mean_anomaly_deg = parse_field(l2, 43, 8, n2, "mean anomaly");
        rec.mean_motion_rev_day = parse_field(l2, 52, 11, n2, "mean motion");
        require(rec.mean_motion_rev_day > 0.0, errc::parse,
                "line " + std::to_string(n2) + ": mean motion must be positive");
        out.push_back(std::move(rec));
        i += 3;
    }
    return out;
}

std::string format_tle(const TLERecord& rec) {
    require(rec.epoch_year >= 1957 && rec.epoch_year <= 2056, errc::invalid,
            "epoch year outside the two-digit window");
    char l1[80], l2[80];
    std::snprintf(l1, sizeof l1, "1 00001U 00000A   %02d%012.8f %10s %8s %8s 0 %4d",
                  rec.epoch_year % 100, rec.epoch_day, ".00000000", "00000-0", "00000-0", 1);
    std::snprintf(l2, sizeof l2, "2 00001 %8.4f %8.4f %07ld %8.4f %8.4f %11.8f%5d",
                  rec.inclination_deg, rec.raan_deg, std::lround(rec.eccentricity * 1e7),
                  rec.arg_perigee_deg, rec.mean_anomaly_deg, rec.mean_motion_rev_day, 1);
    std::string line1(l1), line2(l2);
    require(line1.size() == 68 && line2.size() == 68, errc::invalid,
            "element values do not fit their columns");
    line1 += static_cast<char>('0' + tle_checksum(line1));
    line2 += static_cast<char>('0' + tle_checksum(line2));
    return rec.name + "\n" + line1 + "\n" + line2 + "\n";
}

OrbitState state_eci(const TLERecord& rec, double t) {
    const double e = rec.eccentricity;
    require(e >= 0.0 && e < 1.0, errc::invalid, "unsupported orbit (eccentricity not in [0,1))");
    const double n = rec.mean_motion_rev_day * 2.0 * kPi / 86400.0;  // rad/s
    const double a = std::cbrt(kEarthMuKm3S2 / (n * n));
    const double m = deg2rad(rec.mean_anomaly_deg) + n * t;
    const double ea = solve_kepler(m, e);
    const double ce = std::cos(ea), se = std::sin(ea);
    const double denom = 1.0 - e * ce;
    const double cv = (ce - e) / denom;
    const double sv = std::sqrt(1.0 - e * e) * se / denom;
    const double r = a * denom;
    const double p = a * (1.0 - e * e);
    const double vf = std::sqrt(kEarthMuKm3S2 / p);

    const double ci = std::cos(deg2rad(rec.inclination_deg));
    const double si = std::sin(deg2rad(rec.inclination_deg));
    const double co = std::cos(deg2rad(rec.raan_deg));
    const double so = std::sin(deg2rad(rec.raan_deg));
    const double cw = std::cos(deg2rad(rec.arg_perigee_deg));
    const double sw = std::sin(deg2rad(rec.arg_perigee_deg));
    // First two columns of the perifocal-to-inertial rotation (z_pf = 0).
    const double r11 = co * cw - so * sw * ci, r12 = -co * sw - so * cw * ci;
    const double r21 = so * cw + co * sw * ci, r22 = -so * sw + co * cw * ci;
    const double r31 = sw * si, r32 = cw * si;

    const double px = r * cv, py = r * sv;
    const double vx = -vf * sv, vy = vf * (e + cv);
    OrbitState st;
    st.pos_km = {r11 * px + r12 * py, r21 * px + r22 * py, r31 * px + r32 * py};
    st.vel_km_s = {r11 * vx + r12 * vy, r21 * vx + r22 * vy, r31 * vx + r32 * vy};
    return st;
}

GroundTrack propagate(const TLERecord& rec, double t0, double t1, double step) {
    require(t1 > t0, errc::invalid, "propagation window must have positive length");
    require(step > 0.0, errc::invalid, "propagation step must be positive");
    GroundTrack track;
    track.satellite = rec.name;
    const double jd0 = rec.epoch_jd();
    const double slack = 1e-9 * std::max(1.0, std::abs(t1));
    for (double t = t0; t <= t1 + slack; t += step) {
        const OrbitState st = state_eci(rec, t);
        const auto& [x, y, z] = st.pos_km;
        const double rmag = std::sqrt(x * x + y * y + z * z);
        GroundSample s;
        s.t = t;
        s.lat_deg = rad2deg(std::asin(z / rmag));
        s.lon_deg = wrap180(rad2deg(std::atan2(y, x)) - gmst_deg(jd0 + t / 86400.0));
        s.alt_km = rmag - kEarthRadiusKm;
        track.samples.push_back(s);
    }
    return track;
}

double elevation_deg(double site_lat_deg, double site_lon_deg, double sub_lat_deg,
                     double sub_lon_deg, double alt_km) {
    const double p1 = deg2rad(site_lat_deg), p2 = deg2rad(sub_lat_deg);
    const double dl = deg2rad(site_lon_deg - sub_lon_deg);
    double cosg = std::sin(p1) * std::sin(p2) + std::cos(p1) * std::cos(p2) * std::cos(dl);
    cosg = std::clamp(cosg, -1.0, 1.0);
    const double sing = std::sqrt(std::max(0.0, 1.0 - cosg * cosg));
    const double ratio = kEarthRadiusKm / (kEarthRadiusKm + alt_km);
    if (sing < 1e-12) return cosg > 0.0 ? 90.0 : -90.0;
    return rad2deg(std::atan2(cosg - ratio, sing));
}

std::vector<Site> parse_sites_csv(const std::string& text) {
    std::vector<Site> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(trim(line.substr(start, comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        require(fields.size() == 4, errc::parse,
                "line " + std::to_string(lineno) + ": expected name,lat,lon,kind");
        if (out.empty() && lineno == 1 && fields[1] == "lat") continue;  // header row
        Site s;
        s.name = fields[0];
        s.lat_deg = parse_double(fields[1], errc::parse,
                                 "line " + std::to_string(lineno) + ": bad latitude");
        s.lon_deg = parse_double(fields[2], errc::parse,
                                 "line " + std::to_string(lineno) + ": bad longitude");
        s.kind = fields[3];
        require(s.lat_deg >= -90.0 && s.lat_deg <= 90.0, errc::invalid,
                "line " + std::to_string(lineno) + ": latitude out of range");
        require(s.lon_deg >= -180.0 && s.lon_deg <= 180.0, errc::invalid,
                "line " + std::to_string(lineno) + ": longitude out of range");
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Site> read_sites(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sites_csv(buf.str());
}

}  // namespace stin
