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

#include <optional>
#include <string>
#include <vector>

#include "stin/common.hpp"
#include "stin/graph.hpp"

namespace stin {

// Device parameters. Angular frequencies in rad/us, lengths in um, times in us.
struct PhysicsConfig {
    double c6 = 5.42e6;                    // van der Waals coefficient, rad/us * um^6
    double omega_max = 2.0 * M_PI * 2.5;   // drive amplitude cap
    double delta_max = 2.0 * M_PI * 20.0;  // global detuning cap
    std::optional<double> local_span;      // depth of the per-site detuning channel;
                                           // unset: a quarter of the sweep end value
    int max_qubits = 15;                   // simulator refusal threshold (hard cap 22)
    double integrator_tol = 1e-8;
    bool idealized_blockade = false;       // perfect-blockade mode: interactions off,
                                           // drive suppressed where a neighbor is excited
};

// Piecewise-linear waveform with exact integrals (the propagator integrates
// phases analytically, so these must not approximate).
struct Waveform {
    std::vector<double> t;  // strictly increasing breakpoints
    std::vector<double> v;

    double value(double time) const;
    double integral(double t0, double t1) const;
};

struct PulseSchedule {
    double total_time = 0.0;
    std::vector<double> omega_durations;   // drive segment lengths
    std::vector<double> delta_durations;   // detuning segment lengths
    Waveform omega;         // 0 -> peak -> 0
    Waveform delta_global;  // -sweep_end -> +sweep_end
    Waveform local_wave;    // 0 -> -local_span, shared by all sites
    std::vector<double> local_factors;  // in [0, 1]; site detuning = factor * local_wave
    double omega_peak = 0.0;
    double sweep_end = 0.0;
    double local_span = 0.0;
    double blockade_radius_um = 0.0;

    // Per-site detuning at time `time`, global plus local channel.
    double detuning(int site, double time) const {
        return delta_global.value(time) + local_factors.at(site) * local_wave.value(time);
    }
};

// Midpoint rule between the touch distance d and the clear distance D.
// Pre: 0 < d <= D (callers clamp degenerate drawings first).
double blockade_radius(double d, double D);

// Annealing schedule for one register: the drive amplitude follows from the
// blockade radius via r_b^6 = c6 / ((2w)^2 + (3w)^2) together with the
// sweep/drive ratio 3, the global detuning sweeps -3w -> +3w, and vertex
// weights map to non-positive per-site detuning factors (heaviest vertex 0,
// lightest the full span; uniform weights all zero).
PulseSchedule build_qaa_schedule(const WeightedGraph& g, double r_b,
                                 const PhysicsConfig& cfg = {});

std::string schedule_to_json(const PulseSchedule& s);

}  // namespace stin
