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

#include "stin/pulse.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace stin {

double Waveform::value(double time) const {
    require(!t.empty() && t.size() == v.size(), errc::contract, "waveform is empty");
    if (time <= t.front()) return v.front();
    if (time >= t.back()) return v.back();
    const auto it = std::upper_bound(t.begin(), t.end(), time);
    const std::size_t k = it - t.begin();  // t[k-1] <= time < t[k]
    const double f = (time - t[k - 1]) / (t[k] - t[k - 1]);
    return v[k - 1] + f * (v[k] - v[k - 1]);
}

double Waveform::integral(double t0, double t1) const {
    if (t1 < t0) return -integral(t1, t0);
    // Trapezoid over each linear piece clipped to [t0, t1]; exact.
    double acc = 0.0;
    auto seg = [&](double a, double b, double va, double vb) {
        const double lo = std::max(a, t0), hi = std::min(b, t1);
        if (hi <= lo) return;
        const double fa = (lo - a) / (b - a), fb = (hi - a) / (b - a);
        const double vlo = va + fa * (vb - va), vhi = va + fb * (vb - va);
        acc += 0.5 * (vlo + vhi) * (hi - lo);
    };
    if (t0 < t.front()) acc += v.front() * (std::min(t1, t.front()) - t0);
    for (std::size_t k = 1; k < t.size(); ++k) seg(t[k - 1], t[k], v[k - 1], v[k]);
    if (t1 > t.back()) acc += v.back() * (t1 - std::max(t0, t.back()));
    return acc;
}

double blockade_radius(double d, double D) {
    require(d > 0.0, errc::contract, "touch distance must be positive");
    require(d <= D, errc::contract, "touch distance must not exceed the clear distance");
    return std::sqrt(d * D);
}

PulseSchedule build_qaa_schedule(const WeightedGraph& g, double r_b, const PhysicsConfig& cfg) {
    require(r_b > 0.0, errc::contract, "blockade radius must be positive");
    const std::vector<double>& weights = g.weights();
    // (2w)^2 + (3w)^2 = 13 w^2 pins the drive amplitude for this radius.
    const double omega = std::sqrt(cfg.c6 / (13.0 * std::pow(r_b, 6.0)));
    if (omega > cfg.omega_max) {
        const double factor = std::cbrt(omega / cfg.omega_max);
        fail(errc::invalid,
             "drive amplitude " + format_double(omega) + " rad/us exceeds the device cap " +
                 format_double(cfg.omega_max) + "; scale all separations up by at least " +
                 format_double(factor));
    }
    const double sweep_end = 3.0 * omega;
    if (sweep_end > cfg.delta_max)
        fail(errc::invalid, "detuning sweep " + format_double(sweep_end) +
                                " rad/us exceeds the device cap " + format_double(cfg.delta_max));
    const double span = cfg.local_span.value_or(sweep_end / 4.0);
    require(span >= 0.0, errc::invalid, "local detuning span must be non-negative");
    require(span <= cfg.delta_max, errc::invalid, "local detuning span exceeds the device cap");

    PulseSchedule s;
    s.omega_durations = {0.1, 2.0, 0.1, 0.8};
    s.delta_durations = {0.6, 1.5, 0.9};
    s.total_time = 0.0;
    for (const double x : s.omega_durations) s.total_time += x;
    s.omega_peak = omega;
    s.sweep_end = sweep_end;
    s.local_span = span;
    s.blockade_radius_um = r_b;
    s.omega = {{0.0, 0.1, 2.1, 2.2, 3.0}, {0.0, omega, omega, 0.0, 0.0}};
    s.delta_global = {{0.0, 0.6, 2.1, 3.0}, {-sweep_end, -sweep_end, sweep_end, sweep_end}};
    s.local_wave = {{0.0, 0.6, 2.1, 3.0}, {0.0, 0.0, -span, -span}};

    s.local_factors.assign(weights.size(), 0.0);
    double wmin = 0.0, wmax = 0.0;
    if (!weights.empty()) {
        wmin = *std::min_element(weights.begin(), weights.end());
        wmax = *std::max_element(weights.begin(), weights.end());
    }
    if (wmax > wmin)
        for (std::size_t i = 0; i < weights.size(); ++i)
            s.local_factors[i] = (wmax - weights[i]) / (wmax - wmin);
    return s;
}

std::string schedule_to_json(const PulseSchedule& s) {
    nlohmann::json j;
    j["total_time_us"] = s.total_time;
    j["omega_durations"] = s.omega_durations;
    j["delta_durations"] = s.delta_durations;
    j["omega"] = {{"t", s.omega.t}, {"v", s.omega.v}};
    j["delta_global"] = {{"t", s.delta_global.t}, {"v", s.delta_global.v}};
    j["local_wave"] = {{"t", s.local_wave.t}, {"v", s.local_wave.v}};
    j["local_factors"] = s.local_factors;
    j["omega_peak"] = s.omega_peak;
    j["sweep_end"] = s.sweep_end;
    j["local_span"] = s.local_span;
    j["blockade_radius_um"] = s.blockade_radius_um;
    return j.dump(2) + "\n";
}

}  // namespace stin
