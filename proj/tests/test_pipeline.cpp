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

#include "helpers.hpp"
#include "stin/pipeline.hpp"

using namespace stin;
using namespace stin::testing;

TEST_CASE("solver names round-trip") {
    for (const SolverKind k : {SolverKind::qaa, SolverKind::exact, SolverKind::greedy})
        CHECK(parse_solver(solver_name(k)) == k);
    CHECK(thrown_code([] { parse_solver("sa"); }) == static_cast<int>(errc::invalid));
}

TEST_CASE("relative improvement demands a positive baseline") {
    CHECK(relative_improvement(16.50, 16.22) == doctest::Approx(0.01726).epsilon(1e-3));
    CHECK(relative_improvement(2.0, 2.0) == 0.0);
    CHECK(relative_improvement(1.0, 2.0) == doctest::Approx(-0.5));
    CHECK(thrown_code([] { relative_improvement(1.0, 0.0); }) ==
          static_cast<int>(errc::invalid));
    CHECK(thrown_code([] { relative_improvement(1.0, -3.0); }) ==
          static_cast<int>(errc::invalid));
    CHECK(thrown_code([] { relative_improvement(NAN, 1.0); }) ==
          static_cast<int>(errc::invalid));
}

TEST_CASE("divergence is zero on equal and ln 2 on disjoint distributions") {
    const std::vector<double> p{0.2, 0.5, 0.3};
    CHECK(js_divergence(p, p) == 0.0);
    CHECK(js_divergence({0.5, 0.5, 0.0, 0.0}, {0.0, 0.0, 0.25, 0.75}) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // Symmetry and the ln 2 ceiling.
    const std::vector<double> q{0.6, 0.1, 0.3};
    CHECK(js_divergence(p, q) == doctest::Approx(js_divergence(q, p)).epsilon(1e-15));
    CHECK(js_divergence(p, q) > 0.0);
    CHECK(js_divergence(p, q) < std::log(2.0));
}

TEST_CASE("divergence rejects malformed distributions") {
    CHECK(thrown_code([] { js_divergence({1.0}, {0.5, 0.5}); }) ==
          static_cast<int>(errc::invalid));
    CHECK(thrown_code([] { js_divergence({}, {}); }) == static_cast<int>(errc::invalid));
    CHECK(thrown_code([] { js_divergence({0.5, 0.6}, {0.5, 0.5}); }) ==
          static_cast<int>(errc::invalid));
    CHECK(thrown_code([] { js_divergence({1.5, -0.5}, {0.5, 0.5}); }) ==
          static_cast<int>(errc::invalid));
}

TEST_CASE("sampled divergence bins on the union of values") {
    CHECK(js_from_samples({1, 1, 2, 2}, {1, 1, 2, 2}) == 0.0);
    CHECK(js_from_samples({1, 1}, {2, 2}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(thrown_code([] { js_from_samples({}, {1}); }) == static_cast<int>(errc::invalid));
}

TEST_CASE("all three pipeline arms agree on an easy instance") {
    const auto suite = synth_suite(7, 1, 6, 8);
    REQUIRE(suite.size() == 1);
    const InstanceTriple& t = suite[0];

    PipelineConfig cfg;
    cfg.budgets.shots = 120;
    const PipelineReport greedy = run_pipeline(t, SolverKind::greedy, 11, cfg);
    const PipelineReport exact = run_pipeline(t, SolverKind::exact, 11, cfg);
    const PipelineReport qaa = run_pipeline(t, SolverKind::qaa, 11, cfg);

    validate_pipeline_report(greedy, t);
    validate_pipeline_report(exact, t);
    validate_pipeline_report(qaa, t);

    CHECK_FALSE(greedy.embed.has_value());
    CHECK_FALSE(exact.qaa.has_value());
    REQUIRE(qaa.embed.has_value());
    REQUIRE(qaa.qaa.has_value());
    REQUIRE(qaa.refinement.has_value());
    CHECK(static_cast<int>(qaa.bootstrap.size()) == cfg.budgets.bootstrap_reps);

    CHECK(greedy.ssp.set.objective <= exact.ssp.set.objective + 1e-12);
    CHECK(qaa.ssp.set.objective <= exact.ssp.set.objective + 1e-12);
    CHECK(is_independent(*t.ssp.ssp, qaa.ssp.set));
    CHECK(is_maximal(*t.ssp.ssp, qaa.ssp.set));

    // Stage chaining: the gateway stage serves exactly the selected set.
    for (const PipelineReport* r : {&greedy, &exact, &qaa}) {
        CHECK(r->gsp.status != SolveStatus::infeasible);
        CHECK(r->gsp.assignment.size() == r->ssp.set.members.size());
        CHECK(r->sap.status != SolveStatus::infeasible);
        CHECK(r->elapsed_s >= 0.0);
    }
}

TEST_CASE("pipelines are deterministic per seed") {
    const auto suite = synth_suite(3, 1, 5, 7);
    const InstanceTriple& t = suite[0];
    PipelineConfig cfg;
    cfg.budgets.shots = 100;

    const PipelineReport a = run_pipeline(t, SolverKind::qaa, 5, cfg);
    const PipelineReport b = run_pipeline(t, SolverKind::qaa, 5, cfg);
    CHECK(a.ssp.set.members == b.ssp.set.members);
    CHECK(a.qaa->shots.counts == b.qaa->shots.counts);
    CHECK(a.bootstrap == b.bootstrap);

    const PipelineReport c = run_pipeline(t, SolverKind::qaa, 6, cfg);
    CHECK(c.qaa->shots.counts.size() > 0);  // different seed still runs
}

TEST_CASE("oversized registers are pointed to the classical arms") {
    const auto suite = synth_suite(9, 1, 16, 16);
    const InstanceTriple& t = suite[0];
    try {
        run_pipeline(t, SolverKind::qaa, 1);
        FAIL("expected a size refusal");
    } catch (const Error& e) {
        CHECK(e.code() == errc::size_limit);
        CHECK(std::string(e.what()).find("exact") != std::string::npos);
    }
    // The classical arms handle the same instance fine.
    const PipelineReport r = run_pipeline(t, SolverKind::greedy, 1);
    validate_pipeline_report(r, t);
}

TEST_CASE("validation catches doctored reports") {
    const auto suite = synth_suite(4, 1, 5, 7);
    const InstanceTriple& t = suite[0];
    PipelineReport r = run_pipeline(t, SolverKind::exact, 2);

    PipelineReport wrong_obj = r;
    wrong_obj.ssp.set.objective += 0.5;
    CHECK(thrown_code([&] { validate_pipeline_report(wrong_obj, t); }) ==
          static_cast<int>(errc::contract));

    PipelineReport wrong_load = r;
    wrong_load.gsp.load += 1;
    CHECK(thrown_code([&] { validate_pipeline_report(wrong_load, t); }) ==
          static_cast<int>(errc::contract));

    PipelineReport wrong_bands = r;
    if (!wrong_bands.sap.band_of_path.empty()) {
        wrong_bands.sap.band_of_path[0] = -1;
        CHECK(thrown_code([&] { validate_pipeline_report(wrong_bands, t); }) ==
              static_cast<int>(errc::contract));
    }
}

TEST_CASE("report JSON carries every stage") {
    const auto suite = synth_suite(8, 1, 5, 7);
    PipelineConfig cfg;
    cfg.budgets.shots = 80;
    const PipelineReport r = run_pipeline(suite[0], SolverKind::qaa, 3, cfg);
    const std::string j = pipeline_report_to_json(r);
    for (const char* key : {"\"id\"", "\"solver\"", "\"ssp\"", "\"embedding\"", "\"qaa\"",
                            "\"refinement\"", "\"bootstrap_objectives\"", "\"gsp\"",
                            "\"sap\"", "\"elapsed_s\""})
        CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("bench aggregates all arms and reruns byte-identically") {
    const auto suite = synth_suite(21, 3, 4, 6);
    PipelineConfig cfg;
    cfg.budgets.shots = 80;
    const BenchResult a = bench(suite, 17, cfg);
    REQUIRE(a.rows.size() == 3);
    CHECK(a.n_instances == 3);
    CHECK(a.n_compared == 3);
    for (const BenchRow& row : a.rows) {
        CHECK(row.error.empty());
        REQUIRE(row.obj_qaa.has_value());
        REQUIRE(row.obj_exact.has_value());
        REQUIRE(row.obj_greedy.has_value());
        CHECK(*row.obj_qaa <= *row.obj_exact + 1e-12);
        CHECK(*row.obj_greedy <= *row.obj_exact + 1e-12);
        CHECK(row.m_qaa.has_value());
        CHECK(row.bands_qaa.has_value());
    }
    CHECK(a.csv.find("id,") == 0);
    CHECK(!a.m_hist_csv.empty());
    CHECK(!a.bands_hist_csv.empty());
    CHECK(a.summary_json.find("\"n_instances\"") != std::string::npos);

    const BenchResult b = bench(suite, 17, cfg);
    CHECK(a.csv == b.csv);
    CHECK(a.m_hist_csv == b.m_hist_csv);
    CHECK(a.bands_hist_csv == b.bands_hist_csv);
}
