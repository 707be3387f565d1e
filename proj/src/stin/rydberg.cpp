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

#include "stin/rydberg.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

#include <json.hpp>

namespace stin {

namespace {

using cplx = std::complex<double>;

void check_qubit_count(int n, const PhysicsConfig& cfg) {
    require(cfg.max_qubits >= 1 && cfg.max_qubits <= kMaxSimQubits, errc::invalid,
            "max_qubits must lie in [1, " + std::to_string(kMaxSimQubits) + "]");
    if (n > cfg.max_qubits)
        fail(errc::size_limit, "register of " + std::to_string(n) +
                                   " sites exceeds the simulation limit of " +
                                   std::to_string(cfg.max_qubits));
}

// Per-state ingredients of the diagonal part, filled once per evolution.
// For a state index s, bit i set means site i is excited.
struct DiagTables {
    std::vector<std::uint8_t> pop;   // excitation count
    std::vector<double> locsum;      // sum of local detuning factors over excited sites
    std::vector<double> pairsum;     // sum of interaction energies over excited pairs
};

DiagTables build_tables(const RydbergSystem& sys, const std::vector<double>& factors) {
    const std::size_t dim = std::size_t{1} << sys.n;
    DiagTables t;
    t.pop.resize(dim);
    t.locsum.resize(dim);
    t.pairsum.assign(dim, 0.0);
    t.pop[0] = 0;
    t.locsum[0] = 0.0;
    for (std::size_t s = 1; s < dim; ++s) {
        const int i = std::countr_zero(s);
        const std::size_t rest = s & (s - 1);
        t.pop[s] = static_cast<std::uint8_t>(t.pop[rest] + 1);
        t.locsum[s] = t.locsum[rest] + factors[i];
        if (!sys.idealized) {
            double acc = t.pairsum[rest];
            const double* row = sys.pair_v.data() + std::size_t(i) * sys.n;
            for (std::size_t m = rest; m != 0; m &= m - 1) acc += row[std::countr_zero(m)];
            t.pairsum[s] = acc;
        }
    }
    return t;
}

class Propagator {
  public:
    Propagator(const RydbergSystem& sys, const PulseSchedule& sched)
        : sys_(sys), sched_(sched), dim_(std::size_t{1} << sys.n),
          tables_(build_tables(sys, sched.local_factors)) {}

    // exp(-i * integral of the diagonal part over [a, b]) applied in place.
    // The pair term is constant in time, the detuning channels integrate
    // exactly, so this factor is exact for any interval, including reversed
    // ones inside the composition scheme.
    void diagonal(std::vector<cplx>& psi, double a, double b) const {
        const double ig = sched_.delta_global.integral(a, b);
        const double il = sched_.local_wave.integral(a, b);
        const double dt = b - a;
        for (std::size_t s = 0; s < dim_; ++s) {
            const double theta =
                -(ig * tables_.pop[s] + il * tables_.locsum[s]) + dt * tables_.pairsum[s];
            psi[s] *= cplx(std::cos(theta), -std::sin(theta));
        }
    }

    // exp(-i * integral of the drive over [a, b]): independent x rotations per
    // site, exact. Idealized mode gates each rotation on the neighborhood
    // being empty, which reaches exactly the independent patterns from vacuum.
    void drive(std::vector<cplx>& psi, double a, double b) const {
        const double angle = 0.5 * sched_.omega.integral(a, b);
        if (angle == 0.0) return;
        const double c = std::cos(angle), sn = std::sin(angle);
        for (int i = 0; i < sys_.n; ++i) {
            const std::size_t bit = std::size_t{1} << i;
            const std::uint32_t mask = sys_.idealized ? sys_.neighbor[i] : 0u;
            for (std::size_t s = 0; s < dim_; ++s) {
                if (s & bit) continue;
                if (mask && (s & mask)) continue;
                const cplx a0 = psi[s], a1 = psi[s | bit];
                psi[s] = c * a0 + cplx(0.0, -sn) * a1;
                psi[s | bit] = c * a1 + cplx(0.0, -sn) * a0;
            }
        }
    }

    // Chain of symmetric split steps over the boundary list u_0..u_k with the
    // touching diagonal factors merged (the phase integrals are additive).
    void chain(std::vector<cplx>& psi, const std::vector<double>& u) const {
        const std::size_t k = u.size() - 1;
        auto mid = [&](std::size_t j) { return 0.5 * (u[j] + u[j + 1]); };
        diagonal(psi, u[0], mid(0));
        for (std::size_t j = 0; j < k; ++j) {
            drive(psi, u[j], u[j + 1]);
            if (j + 1 < k)
                diagonal(psi, mid(j), mid(j + 1));
            else
                diagonal(psi, mid(j), u[k]);
        }
    }

    // Fourth-order triple-jump composition of the symmetric step.
    void step4(std::vector<cplx>& psi, double t, double h) const {
        static const double g1 = 1.0 / (2.0 - std::cbrt(2.0));
        const double t1 = t + g1 * h;
        const double t2 = t + (1.0 - g1) * h;  // t1 + (1 - 2 g1) h, a backward leg
        chain(psi, {t, t1, t2, t + h});
    }

    void halved_step4(std::vector<cplx>& psi, double t, double h) const {
        static const double g1 = 1.0 / (2.0 - std::cbrt(2.0));
        const double h2 = 0.5 * h;
        const double m = t + h2;
        chain(psi, {t, t + g1 * h2, t + (1.0 - g1) * h2, m, m + g1 * h2, m + (1.0 - g1) * h2,
                    t + h});
    }

  private:
    const RydbergSystem& sys_;
    const PulseSchedule& sched_;
    std::size_t dim_;
    DiagTables tables_;
};

double l2_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double acc = 0.0;
    for (std::size_t s = 0; s < a.size(); ++s) acc += std::norm(a[s] - b[s]);
    return std::sqrt(acc);
}

double l2_norm(const std::vector<cplx>& a) {
    double acc = 0.0;
    for (const cplx& x : a) acc += std::norm(x);
    return std::sqrt(acc);
}

}  // namespace

RydbergSystem make_system(const WeightedGraph& g, const Layout& layout,
                          const PhysicsConfig& cfg) {
    const int n = g.num_vertices();
    require(layout.size() == n, errc::contract, "layout size does not match the graph");
    check_qubit_count(n, cfg);
    require(cfg.c6 > 0.0, errc::invalid, "c6 must be positive");

    RydbergSystem sys;
    sys.n = n;
    sys.idealized = cfg.idealized_blockade;
    sys.pair_v.assign(std::size_t(n) * n, 0.0);
    sys.neighbor.assign(n, 0u);
    for (const auto& [u, v] : g.edges()) {
        sys.neighbor[u] |= std::uint32_t{1} << v;
        sys.neighbor[v] |= std::uint32_t{1} << u;
    }
    if (!sys.idealized) {
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const double r = pair_distance(layout, j, k);
                require(r > 0.0, errc::invalid, "coincident sites in the layout");
                const double v = cfg.c6 / std::pow(r, 6.0);
                sys.pair_v[std::size_t(j) * n + k] = v;
                sys.pair_v[std::size_t(k) * n + j] = v;
            }
    }
    return sys;
}

EvolveResult evolve(const RydbergSystem& sys, const PulseSchedule& sched,
                    const PhysicsConfig& cfg) {
    require(static_cast<int>(sched.local_factors.size()) == sys.n, errc::contract,
            "schedule site count does not match the system");
    require(cfg.integrator_tol > 0.0, errc::invalid, "integrator tolerance must be positive");
    const double total = sched.total_time;
    require(total >= 0.0, errc::contract, "schedule duration must be non-negative");

    const std::size_t dim = std::size_t{1} << sys.n;
    EvolveResult out;
    out.psi.assign(dim, cplx(0.0, 0.0));
    out.psi[0] = cplx(1.0, 0.0);
    if (total == 0.0) {
        out.norm = 1.0;
        return out;
    }

    Propagator prop(sys, sched);
    const double tol = cfg.integrator_tol;
    const double h_min = total * 1e-12;
    double t = 0.0;
    double h = std::min(total, 1e-2);
    std::vector<cplx> coarse, fine;
    // Leftover below the underflow floor is dropped; the phase it could
    // contribute sits far under the step tolerance.
    while (total - t > h_min) {
        if (h < h_min) fail(errc::numeric, "integrator step size underflow");
        const double hs = std::min(h, total - t);
        coarse = out.psi;
        prop.step4(coarse, t, hs);
        fine = out.psi;
        prop.halved_step4(fine, t, hs);
        // Step doubling at order 4: the halved result is wrong by ~diff/15.
        const double err = l2_diff(coarse, fine) / 15.0;
        if (err <= tol) {
            out.psi.swap(fine);
            t += hs;
            ++out.steps;
            const double grow = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
            h = hs * std::clamp(grow, 0.2, 5.0);
        } else {
            ++out.rejected;
            h = hs * std::clamp(0.9 * std::pow(tol / err, 0.2), 0.1, 0.9);
        }
    }
    out.norm = l2_norm(out.psi);
    require(std::abs(out.norm - 1.0) <= 1e-6, errc::numeric,
            "propagation lost normalization");
    return out;
}

void apply_hamiltonian(const RydbergSystem& sys, const PulseSchedule& sched, double t,
                       const std::vector<cplx>& in, std::vector<cplx>& out) {
    require(static_cast<int>(sched.local_factors.size()) == sys.n, errc::contract,
            "schedule site count does not match the system");
    const std::size_t dim = std::size_t{1} << sys.n;
    require(in.size() == dim, errc::contract, "state dimension mismatch");
    out.assign(dim, cplx(0.0, 0.0));

    std::vector<double> delta(sys.n);
    for (int i = 0; i < sys.n; ++i) delta[i] = sched.detuning(i, t);
    const double half_omega = 0.5 * sched.omega.value(t);

    for (std::size_t s = 0; s < dim; ++s) {
        double e = 0.0;
        for (std::size_t m = s; m != 0; m &= m - 1) {
            const int i = std::countr_zero(m);
            e -= delta[i];
            if (!sys.idealized) {
                const double* row = sys.pair_v.data() + std::size_t(i) * sys.n;
                for (std::size_t r = m & (m - 1); r != 0; r &= r - 1)
                    e += row[std::countr_zero(r)];
            }
        }
        out[s] += e * in[s];
    }
    if (half_omega != 0.0) {
        for (int i = 0; i < sys.n; ++i) {
            const std::size_t bit = std::size_t{1} << i;
            const std::uint32_t mask = sys.idealized ? sys.neighbor[i] : 0u;
            for (std::size_t s = 0; s < dim; ++s) {
                if (s & bit) continue;
                if (mask && (s & mask)) continue;
                out[s | bit] += half_omega * in[s];
                out[s] += half_omega * in[s | bit];
            }
        }
    }
}

ShotSet sample(const std::vector<cplx>& psi, int shots, std::uint64_t seed) {
    require(!psi.empty() && std::has_single_bit(psi.size()), errc::contract,
            "state dimension must be a power of two");
    require(shots > 0, errc::invalid, "shot count must be positive");
    const int n = std::countr_zero(psi.size());

    std::vector<double> cdf(psi.size());
    double total = 0.0;
    for (std::size_t s = 0; s < psi.size(); ++s) {
        total += std::norm(psi[s]);
        cdf[s] = total;
    }
    require(std::abs(total - 1.0) <= 1e-6, errc::numeric, "state is not normalized");

    ShotSet set;
    set.n = n;
    set.shots = shots;
    set.seed = seed;
    Rng rng(seed);
    std::string pattern(n, '1');
    for (int k = 0; k < shots; ++k) {
        const double u = rng.uniform() * total;
        const std::size_t s =
            std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        const std::size_t state = std::min(s, psi.size() - 1);
        for (int i = 0; i < n; ++i)
            pattern[i] = (state >> i) & 1 ? '0' : '1';
        ++set.counts[pattern];
    }
    return set;
}

std::string shots_to_json(const ShotSet& s) {
    nlohmann::json j;
    j["n"] = s.n;
    j["shots"] = s.shots;
    j["seed"] = s.seed;
    j["convention"] = "empty_trap_is_selected";
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [pattern, count] : s.counts) counts[pattern] = count;
    j["counts"] = counts;
    return j.dump(2) + "\n";
}

ShotSet shots_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse, std::string("bad shot record: ") + e.what());
    }
    require(j.is_object() && j.contains("shots") && j.contains("counts"), errc::schema,
            "shot record needs 'shots' and 'counts'");
    ShotSet s;
    s.shots = j.at("shots").get<int>();
    s.seed = j.value("seed", std::uint64_t{0});
    require(j.at("counts").is_object(), errc::schema, "'counts' must be an object");
    int sum = 0;
    int width = j.contains("n") ? j.at("n").get<int>() : -1;
    for (const auto& [pattern, count] : j.at("counts").items()) {
        require(count.is_number_integer() && count.get<int>() > 0, errc::schema,
                "counts must be positive integers");
        if (width < 0) width = static_cast<int>(pattern.size());
        require(static_cast<int>(pattern.size()) == width, errc::schema,
                "patterns must share one length");
        require(pattern.find_first_not_of("01") == std::string::npos, errc::schema,
                "patterns must be binary strings");
        s.counts[pattern] = count.get<int>();
        sum += count.get<int>();
    }
    require(sum == s.shots, errc::schema, "counts must sum to the shot total");
    s.n = std::max(width, 0);
    return s;
}

QaaRun run_qaa(const WeightedGraph& g, const Layout& layout, int shots, std::uint64_t seed,
               const PhysicsConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const EmbeddingReport rep = validate_embedding(g, layout);
    for (const Violation& v : rep.violations)
        fail(errc::contract, "layout violates hardware constraint " + v.type);

    const bool has_edges = g.num_edges() > 0;
    const bool has_gaps = std::isfinite(rep.D);
    double d_eff, D_eff;
    if (!has_edges) {
        d_eff = D_eff = layout.geom.d_min;
    } else if (!has_gaps) {
        d_eff = rep.d;
        D_eff = 2.0 * rep.d;
    } else {
        d_eff = std::min(rep.d, rep.D);
        D_eff = std::max(rep.d, rep.D);
    }
    const double r_b = blockade_radius(d_eff, D_eff);

    QaaRun run;
    run.schedule = build_qaa_schedule(g, r_b, cfg);
    run.unit_disk = rep.is_unit_disk;
    const RydbergSystem sys = make_system(g, layout, cfg);
    EvolveResult ev = evolve(sys, run.schedule, cfg);
    run.norm = ev.norm;
    run.steps = ev.steps;
    run.shots = sample(ev.psi, shots, seed);
    run.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

std::string qaa_run_to_json(const QaaRun& r) {
    nlohmann::json j;
    j["schedule"] = nlohmann::json::parse(schedule_to_json(r.schedule));
    j["shots"] = nlohmann::json::parse(shots_to_json(r.shots));
    j["norm"] = r.norm;
    j["steps"] = r.steps;
    j["unit_disk"] = r.unit_disk;
    j["elapsed_s"] = r.elapsed_s;
    return j.dump(2) + "\n";
}

}  // namespace stin
