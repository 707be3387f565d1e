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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stin/common.hpp"
#include "stin/geometry.hpp"
#include "stin/graph.hpp"
#include "stin/pulse.hpp"

namespace stin {

// Absolute ceiling on register size for the state-vector propagator.
// PhysicsConfig::max_qubits may sit below this, never above.
inline constexpr int kMaxSimQubits = 22;

struct RydbergSystem {
    int n = 0;
    bool idealized = false;
    std::vector<double> pair_v;            // n*n interaction energies, zero diagonal
    std::vector<std::uint32_t> neighbor;   // adjacency masks, bit j set when (i,j) is an edge
};

// Interactions come from the drawn distances (c6 / r^6). In idealized mode the
// interaction term is dropped and the drive is gated instead: a site cannot
// flip while any graph neighbor is excited, so only independent patterns are
// ever populated.
RydbergSystem make_system(const WeightedGraph& g, const Layout& layout,
                          const PhysicsConfig& cfg = {});

struct EvolveResult {
    std::vector<std::complex<double>> psi;  // 2^n amplitudes, bit i of the index = site i
    double norm = 0.0;
    std::size_t steps = 0;
    std::size_t rejected = 0;
};

// Propagate |0...0> through the schedule with an adaptive split-step method.
// Every factor is applied as an exact unitary (analytic waveform integrals),
// so the norm is conserved to roundoff; the step controller bounds the local
// splitting error per step by cfg.integrator_tol.
EvolveResult evolve(const RydbergSystem& sys, const PulseSchedule& sched,
                    const PhysicsConfig& cfg = {});

// Dense H(t)|in>, for reference integrators and Hermiticity checks in tests.
void apply_hamiltonian(const RydbergSystem& sys, const PulseSchedule& sched, double t,
                       const std::vector<std::complex<double>>& in,
                       std::vector<std::complex<double>>& out);

struct ShotSet {
    int n = 0;
    int shots = 0;
    std::uint64_t seed = 0;
    // Pattern character i reports site i with the camera convention: an
    // excited atom leaves the trap, images dark, and reads '0' = selected.
    std::map<std::string, int> counts;
};

ShotSet sample(const std::vector<std::complex<double>>& psi, int shots, std::uint64_t seed);

std::string shots_to_json(const ShotSet& s);
ShotSet shots_from_json(const std::string& text);

struct QaaRun {
    PulseSchedule schedule;
    ShotSet shots;
    double norm = 0.0;
    std::size_t steps = 0;
    bool unit_disk = true;
    double elapsed_s = 0.0;
};

// Full annealing run for a drawn graph: adjacency distances -> blockade
// radius -> schedule -> evolution -> measurement. Degenerate drawings clamp
// the radius (no edges: the hardware spacing floor; no non-edges: twice the
// widest edge) and a non-unit-disk drawing uses the swapped distance pair.
QaaRun run_qaa(const WeightedGraph& g, const Layout& layout, int shots, std::uint64_t seed,
               const PhysicsConfig& cfg = {});

std::string qaa_run_to_json(const QaaRun& r);

}  // namespace stin
