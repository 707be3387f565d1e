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

#include "stin/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "stin/common.hpp"

namespace stin {
namespace {

using nlohmann::json;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// RFC 4180 quoting, only where the value forces it.
std::string csv_field(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string opt_num(const std::optional<double>& v) {
    return v ? format_double(*v) : "na";
}

std::string opt_int(const std::optional<int>& v) {
    return v ? std::to_string(*v) : "na";
}

}  // namespace

SolverKind parse_solver(const std::string& name) {
    if (name == "qaa") return SolverKind::qaa;
    if (name == "exact") return SolverKind::exact;
    if (name == "greedy") return SolverKind::greedy;
    fail(errc::invalid, "unknown solver '" + name + "' (expected qaa, exact, or greedy)");
}

std::string solver_name(SolverKind k) {
    switch (k) {
        case SolverKind::qaa: return "qaa";
        case SolverKind::exact: return "exact";
        case SolverKind::greedy: return "greedy";
    }
    fail(errc::internal, "unreachable solver kind");
}

PipelineReport run_pipeline(const InstanceTriple& t, SolverKind solver,
                            std::uint64_t seed, const PipelineConfig& cfg) {
    const auto t0 = clock_type::now();
    require(t.ssp.ssp.has_value(), errc::contract, "triple lacks a selection graph");
    require(t.gsp.gsp.has_value(), errc::contract, "triple lacks a gateway instance");
    require(t.sap.sap.has_value(), errc::contract, "triple lacks a band instance");
    const WeightedGraph& g = *t.ssp.ssp;

    PipelineReport out;
    out.id = t.id;
    out.solver = solver;

    switch (solver) {
        case SolverKind::greedy:
            out.ssp = greedy_mwis(g);
            break;
        case SolverKind::exact:
            out.ssp = mwis_exact(g, cfg.budgets.exact_budget_s);
            break;
        case SolverKind::qaa: {
            if (g.num_vertices() > cfg.phys.max_qubits) {
                fail(errc::size_limit,
                     std::to_string(g.num_vertices()) + " vertices exceed the " +
                         std::to_string(cfg.phys.max_qubits) +
                         "-qubit annealing ceiling; use the exact or greedy solver");
            }
            auto emb = embed_graph(g, derive_seed(seed, t.id + ":embed"), cfg.geom, cfg.embed);
            require(emb.refine_success, errc::infeasible,
                    "no hardware-feasible layout found for " + t.id);
            auto run = run_qaa(g, emb.layout, cfg.budgets.shots,
                               derive_seed(seed, t.id + ":shots"), cfg.phys);
            auto ref = refine(run.shots, g);
            out.bootstrap = bootstrap_objectives(
                run.shots, g, std::min(cfg.budgets.bootstrap_subsample, run.shots.shots),
                cfg.budgets.bootstrap_reps, derive_seed(seed, t.id + ":bootstrap"));
            out.ssp.set = ref.best;
            out.ssp.status = SolveStatus::feasible;
            out.ssp.elapsed_s = seconds_since(t0);
            out.embed = std::move(emb);
            out.qaa = std::move(run);
            out.refinement = std::move(ref);
            break;
        }
    }

    const BipartiteInstance restricted = restrict_to_selected(*t.gsp.gsp, out.ssp.set);
    out.gsp = gsp_solve(restricted);

    const int num_bands = static_cast<int>(t.sap.sap->bands.size());
    out.sap_build = build_sap_instance(out.gsp.assignment, t.topo, num_bands);
    out.sap = sap_solve(out.sap_build.instance, cfg.sap_mode);

    out.elapsed_s = seconds_since(t0);
    return out;
}

void validate_pipeline_report(const PipelineReport& r, const InstanceTriple& t) {
    require(t.ssp.ssp.has_value() && t.gsp.gsp.has_value() && t.sap.sap.has_value(),
            errc::contract, "triple lacks an instance");
    const WeightedGraph& g = *t.ssp.ssp;

    // Selection: an independent set whose recomputed weight matches the
    // reported objective.
    require(is_independent(g, r.ssp.set), errc::contract,
            r.id + ": reported selection is not independent");
    double w = 0.0;
    for (int v : r.ssp.set.members) w += g.weight(v);
    require(std::abs(w - r.ssp.set.objective) <= 1e-9 * std::max(1.0, std::abs(w)),
            errc::contract, r.id + ": selection objective does not match its member weights");

    // Gateway stage, replayed against the same restriction of the universe.
    const BipartiteInstance restricted = restrict_to_selected(*t.gsp.gsp, r.ssp.set);
    if (r.gsp.status == SolveStatus::infeasible) {
        require(!r.gsp.unservable.empty(), errc::contract,
                r.id + ": infeasible gateway stage without an unservable witness");
    } else {
        std::map<int, int> per_gateway;
        std::map<int, int> times_assigned;
        for (const auto& [s, gw] : r.gsp.assignment) {
            const bool link = std::find(restricted.links.begin(), restricted.links.end(),
                                        std::make_pair(s, gw)) != restricted.links.end();
            require(link, errc::contract, r.id + ": assignment uses a missing link");
            ++per_gateway[gw];
            ++times_assigned[s];
        }
        for (int s : restricted.satellites)
            require(times_assigned[s] == 1, errc::contract,
                    r.id + ": satellite not assigned exactly once");
        int load = 0;
        for (const auto& [gw, cnt] : per_gateway) load = std::max(load, cnt);
        require(load == r.gsp.load, errc::contract,
                r.id + ": reported gateway load does not match the assignment");
    }

    // Band stage, replayed from the reported assignment.
    const int num_bands = static_cast<int>(t.sap.sap->bands.size());
    const SapBuild rebuilt = build_sap_instance(r.gsp.assignment, t.topo, num_bands);
    const ColoringInstance& ci = rebuilt.instance;
    require(ci.num_paths == static_cast<int>(r.sap.band_of_path.size()), errc::contract,
            r.id + ": band vector length does not match the path count");
    if (r.sap.status != SolveStatus::infeasible) {
        std::vector<int> used;
        double cost = 0.0;
        for (int p = 0; p < ci.num_paths; ++p) {
            const int b = r.sap.band_of_path[p];
            require(b >= 0 && b < static_cast<int>(ci.bands.size()), errc::contract,
                    r.id + ": band position out of range");
            used.push_back(b);
            cost += ci.cost(p, b);
        }
        for (const auto& [p, q] : ci.conflicts)
            require(r.sap.band_of_path[p] != r.sap.band_of_path[q], errc::contract,
                    r.id + ": conflicting paths share a band");
        std::sort(used.begin(), used.end());
        used.erase(std::unique(used.begin(), used.end()), used.end());
        require(static_cast<int>(used.size()) == r.sap.distinct_bands, errc::contract,
                r.id + ": distinct band count does not match the assignment");
        require(std::abs(cost - r.sap.total_cost) <= 1e-9 * std::max(1.0, std::abs(cost)),
                errc::contract, r.id + ": band cost does not match the assignment");
    }
}

std::string pipeline_report_to_json(const PipelineReport& r) {
    json j;
    j["id"] = r.id;
    j["solver"] = solver_name(r.solver);
    j["elapsed_s"] = r.elapsed_s;
    j["ssp"] = json::parse(mwis_result_to_json(r.ssp));
    if (r.embed) {
        j["embedding"] = json::parse(embed_outcome_to_json(*r.embed));
        j["embedding"]["layout"] = json::parse(layout_to_json(r.embed->layout));
    }
    if (r.qaa) j["qaa"] = json::parse(qaa_run_to_json(*r.qaa));
    if (r.refinement) j["refinement"] = json::parse(refinement_to_json(*r.refinement));
    if (!r.bootstrap.empty()) j["bootstrap_objectives"] = r.bootstrap;
    j["gsp"] = json::parse(gsp_result_to_json(r.gsp));
    j["sap"] = json::parse(sap_result_to_json(r.sap));
    Instance derived;
    derived.kind = "sap";
    derived.sap = r.sap_build.instance;
    j["sap_instance"] = json::parse(instance_to_json(derived));
    if (!r.sap_build.warnings.empty()) j["sap_warnings"] = r.sap_build.warnings;
    return j.dump(2);
}

double relative_improvement(double a, double b) {
    require(std::isfinite(a) && std::isfinite(b), errc::invalid,
            "relative improvement needs finite operands");
    require(b > 0.0, errc::invalid,
            "relative improvement is undefined for a baseline <= 0");
    return (a - b) / b;
}

double js_divergence(const std::vector<double>& p, const std::vector<double>& q) {
    require(p.size() == q.size(), errc::invalid, "distributions must share a support");
    require(!p.empty(), errc::invalid, "empty distributions");
    double sp = 0.0, sq = 0.0;
    for (double v : p) {
        require(v >= 0.0 && std::isfinite(v), errc::invalid, "negative probability mass");
        sp += v;
    }
    for (double v : q) {
        require(v >= 0.0 && std::isfinite(v), errc::invalid, "negative probability mass");
        sq += v;
    }
    require(std::abs(sp - 1.0) <= 1e-9, errc::invalid, "first distribution is not normalized");
    require(std::abs(sq - 1.0) <= 1e-9, errc::invalid, "second distribution is not normalized");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double m = 0.5 * (p[i] + q[i]);
        if (p[i] > 0.0) d += 0.5 * p[i] * std::log(p[i] / m);
        if (q[i] > 0.0) d += 0.5 * q[i] * std::log(q[i] / m);
    }
    // Tiny negative residue from cancellation rounds up to the exact floor.
    return std::max(d, 0.0);
}

double js_from_samples(const std::vector<int>& a, const std::vector<int>& b) {
    require(!a.empty() && !b.empty(), errc::invalid, "empty samples");
    std::map<int, std::pair<int, int>> hist;
    for (int v : a) ++hist[v].first;
    for (int v : b) ++hist[v].second;
    std::vector<double> p, q;
    p.reserve(hist.size());
    q.reserve(hist.size());
    for (const auto& [value, counts] : hist) {
        (void)value;
        p.push_back(static_cast<double>(counts.first) / static_cast<double>(a.size()));
        q.push_back(static_cast<double>(counts.second) / static_cast<double>(b.size()));
    }
    return js_divergence(p, q);
}

BenchResult bench(const std::vector<InstanceTriple>& suite, std::uint64_t root_seed,
                  const PipelineConfig& cfg) {
    BenchResult out;
    out.n_instances = static_cast<int>(suite.size());
    std::vector<int> m_qaa, m_exact, bands_qaa, bands_exact;
    double sum_ig = 0.0, sum_ie = 0.0;
    int n_ig = 0, n_ie = 0;

    for (const InstanceTriple& t : suite) {
        BenchRow row;
        row.id = t.id;
        row.n = t.ssp.ssp ? t.ssp.ssp->num_vertices() : 0;

        auto arm = [&](SolverKind k) -> std::optional<PipelineReport> {
            try {
                PipelineReport r = run_pipeline(
                    t, k, derive_seed(root_seed, t.id + ":" + solver_name(k)), cfg);
                validate_pipeline_report(r, t);
                return r;
            } catch (const std::exception& e) {
                if (row.error.empty()) row.error = solver_name(k) + ": " + e.what();
                return std::nullopt;
            }
        };
        const auto rq = arm(SolverKind::qaa);
        const auto re = arm(SolverKind::exact);
        const auto rg = arm(SolverKind::greedy);

        if (rq) {
            row.obj_qaa = rq->ssp.set.objective;
            row.m_qaa = rq->gsp.load;
            row.bands_qaa = rq->sap.distinct_bands;
            if (rq->refinement) {
                row.hamming_mean = rq->refinement->hamming_mean;
                row.hamming_max = rq->refinement->hamming_max;
                row.n_nonindependent = rq->refinement->n_nonindependent;
            }
        }
        if (re) {
            row.obj_exact = re->ssp.set.objective;
            row.m_exact = re->gsp.load;
            row.bands_exact = re->sap.distinct_bands;
        }
        if (rg) row.obj_greedy = rg->ssp.set.objective;

        if (row.obj_qaa && row.obj_greedy && *row.obj_greedy > 0.0) {
            row.impr_vs_greedy = relative_improvement(*row.obj_qaa, *row.obj_greedy);
            sum_ig += *row.impr_vs_greedy;
            ++n_ig;
        }
        if (row.obj_qaa && row.obj_exact && *row.obj_exact > 0.0) {
            row.impr_vs_exact = relative_improvement(*row.obj_qaa, *row.obj_exact);
            sum_ie += *row.impr_vs_exact;
            ++n_ie;
        }
        if (rq && re) {
            ++out.n_compared;
            m_qaa.push_back(rq->gsp.load);
            m_exact.push_back(re->gsp.load);
            bands_qaa.push_back(rq->sap.distinct_bands);
            bands_exact.push_back(re->sap.distinct_bands);
            if (rq->ssp.set.members != re->ssp.set.members) {
                if (std::abs(rq->ssp.set.objective - re->ssp.set.objective) > 1e-9)
                    ++out.n_ssp_differ_objective;
                else
                    ++out.n_ssp_differ_alternative;
            }
        }
        out.rows.push_back(std::move(row));
    }

    if (n_ig > 0) out.mean_impr_vs_greedy = sum_ig / n_ig;
    if (n_ie > 0) out.mean_impr_vs_exact = sum_ie / n_ie;
    if (out.n_compared > 0) {
        out.js_m_qaa_exact = js_from_samples(m_qaa, m_exact);
        out.js_bands_qaa_exact = js_from_samples(bands_qaa, bands_exact);
    }

    std::ostringstream csv;
    csv << "id,n,ssp_qaa,ssp_exact,ssp_greedy,impr_qaa_vs_greedy,impr_qaa_vs_exact,"
           "gsp_load_qaa,gsp_load_exact,sap_bands_qaa,sap_bands_exact,"
           "hamming_mean,hamming_max,n_nonindependent,error\n";
    for (const BenchRow& r : out.rows) {
        csv << csv_field(r.id) << ',' << r.n << ',' << opt_num(r.obj_qaa) << ','
            << opt_num(r.obj_exact) << ',' << opt_num(r.obj_greedy) << ','
            << opt_num(r.impr_vs_greedy) << ',' << opt_num(r.impr_vs_exact) << ','
            << opt_int(r.m_qaa) << ',' << opt_int(r.m_exact) << ','
            << opt_int(r.bands_qaa) << ',' << opt_int(r.bands_exact) << ','
            << format_double(r.hamming_mean) << ',' << format_double(r.hamming_max) << ','
            << r.n_nonindependent << ',' << csv_field(r.error) << '\n';
    }
    out.csv = csv.str();

    auto hist_csv = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::map<int, std::pair<int, int>> hist;
        for (int v : a) ++hist[v].first;
        for (int v : b) ++hist[v].second;
        std::ostringstream s;
        s << "value,count_qaa,count_exact\n";
        for (const auto& [value, counts] : hist)
            s << value << ',' << counts.first << ',' << counts.second << '\n';
        return s.str();
    };
    out.m_hist_csv = hist_csv(m_qaa, m_exact);
    out.bands_hist_csv = hist_csv(bands_qaa, bands_exact);

    json j;
    j["root_seed"] = root_seed;
    j["n_instances"] = out.n_instances;
    j["n_compared"] = out.n_compared;
    j["ssp_differences"] = {{"affecting_objective", out.n_ssp_differ_objective},
                            {"same_objective", out.n_ssp_differ_alternative}};
    j["mean_improvement"] = {{"vs_greedy", out.mean_impr_vs_greedy},
                             {"vs_exact", out.mean_impr_vs_exact}};
    j["js_divergence"] = {{"gsp_load", out.js_m_qaa_exact},
                          {"sap_bands", out.js_bands_qaa_exact}};
    int failed = 0;
    for (const BenchRow& r : out.rows)
        if (!r.error.empty()) ++failed;
    j["rows_with_errors"] = failed;
    out.summary_json = j.dump(2);
    return out;
}

}  // namespace stin
