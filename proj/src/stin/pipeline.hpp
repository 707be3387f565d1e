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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stin/embed.hpp"
#include "stin/instgen.hpp"
#include "stin/postprocess.hpp"
#include "stin/rydberg.hpp"
#include "stin/solvers.hpp"

namespace stin {

enum class SolverKind { qaa, exact, greedy };

SolverKind parse_solver(const std::string& name);
std::string solver_name(SolverKind k);

struct PipelineBudgets {
    double exact_budget_s = 60.0;
    int shots = 300;
    int bootstrap_subsample = 100;
    int bootstrap_reps = 20;
};

struct PipelineConfig {
    PipelineBudgets budgets;
    HardwareGeometry geom;
    PhysicsConfig phys;
    EmbedOptions embed;
    SapMode sap_mode = SapMode::exact;
};

// Everything the three chained stages produced, heavyweight intermediates
// included so callers can persist them.
struct PipelineReport {
    std::string id;
    SolverKind solver = SolverKind::greedy;

    MwisResult ssp;
    std::optional<EmbedOutcome> embed;        // selection-by-annealing only
    std::optional<QaaRun> qaa;                // ditto
    std::optional<RefinementOutcome> refinement;
    std::vector<double> bootstrap;            // refined objectives on subsamples

    GspResult gsp;
    SapBuild sap_build;
    SapResult sap;

    double elapsed_s = 0.0;
};

// Selection feeds gateway assignment feeds band assignment. The annealing
// path embeds the graph, evolves and samples it, then refines the shots;
// instances above the qubit ceiling are refused with a pointer to the
// classical solvers. Stage seeds derive from `seed` and the instance id.
PipelineReport run_pipeline(const InstanceTriple& t, SolverKind solver,
                            std::uint64_t seed, const PipelineConfig& cfg = {});

// Recomputes every reported objective from the stored solutions and fails on
// any mismatch. Bench runs it on each report before aggregating.
void validate_pipeline_report(const PipelineReport& r, const InstanceTriple& t);

std::string pipeline_report_to_json(const PipelineReport& r);

// (a - b) / b for a positive baseline b; anything else is undefined and
// reported as an error rather than a number.
double relative_improvement(double a, double b);

// Jensen-Shannon divergence in nats between two distributions over the same
// support. Each input must sum to one within 1e-9.
double js_divergence(const std::vector<double>& p, const std::vector<double>& q);

// JS divergence between two empirical integer samples, binned on the union
// of observed values.
double js_from_samples(const std::vector<int>& a, const std::vector<int>& b);

struct BenchRow {
    std::string id;
    int n = 0;
    // One selection objective per solver; unset when that arm failed.
    std::optional<double> obj_qaa, obj_exact, obj_greedy;
    std::optional<double> impr_vs_greedy, impr_vs_exact;
    std::optional<int> m_qaa, m_exact;
    std::optional<int> bands_qaa, bands_exact;
    double hamming_mean = 0.0;
    double hamming_max = 0.0;
    int n_nonindependent = 0;
    std::string error;  // first failure note; the run carries on regardless
};

struct BenchResult {
    std::vector<BenchRow> rows;
    int n_instances = 0;
    int n_compared = 0;             // rows where both qaa and exact arms finished
    int n_ssp_differ_objective = 0; // annealed selection differs and scores differently
    int n_ssp_differ_alternative = 0;  // differs but ties the exact objective
    double mean_impr_vs_greedy = 0.0;
    double mean_impr_vs_exact = 0.0;
    double js_m_qaa_exact = 0.0;
    double js_bands_qaa_exact = 0.0;
    std::string csv;            // one row per instance
    std::string m_hist_csv;     // gateway-load histogram, annealed vs exact arms
    std::string bands_hist_csv; // band-count histogram, same arms
    std::string summary_json;
};

// Runs all three solver arms over the suite, validates each report, and
// aggregates head-to-head statistics. Per-instance failures are recorded in
// the row and the sweep continues.
BenchResult bench(const std::vector<InstanceTriple>& suite, std::uint64_t root_seed,
                  const PipelineConfig& cfg = {});

}  // namespace stin
