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

#include "stin.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stin/common.hpp"
#include "stin/embed.hpp"
#include "stin/instgen.hpp"
#include "stin/pipeline.hpp"
#include "stin/postprocess.hpp"
#include "stin/rydberg.hpp"
#include "stin/solvers.hpp"

struct stin_instance {
    stin::Instance v;
};

struct stin_layout {
    stin::Layout v;
};

namespace {

using nlohmann::json;

thread_local std::string t_last_error;

char* dup_cstr(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) return nullptr;
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

// Runs the body, translating exceptions into stable codes and stashing the
// message for stin_last_error.
template <typename F>
int wrap(F&& body) {
    try {
        body();
        t_last_error.clear();
        return STIN_OK;
    } catch (const stin::Error& e) {
        t_last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return STIN_E_INTERNAL;
    } catch (...) {
        t_last_error = "unknown failure";
        return STIN_E_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    stin::require(p != nullptr, stin::errc::contract, std::string(what) + " must not be null");
}

void give_string(char** out, const std::string& s) {
    *out = dup_cstr(s);
    stin::require(*out != nullptr, stin::errc::internal, "out of memory");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    stin::require(static_cast<bool>(in), stin::errc::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double num_or(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    stin::require(j.at(key).is_number(), stin::errc::schema,
                  std::string("config key '") + key + "' must be a number");
    return j.at(key).get<double>();
}

int int_or(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    stin::require(j.at(key).is_number_integer(), stin::errc::schema,
                  std::string("config key '") + key + "' must be an integer");
    return j.at(key).get<int>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        stin::require(known, stin::errc::schema,
                      "unknown key '" + item.key() + "' in " + where);
    }
}

json parse_json_text(const char* text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        stin::fail(stin::errc::parse, what + ": " + e.what());
    }
}

stin::PipelineConfig parse_config(const char* text) {
    stin::PipelineConfig cfg;
    if (!text || !*text) return cfg;
    const json j = parse_json_text(text, "config");
    stin::require(j.is_object(), stin::errc::schema, "config must be a JSON object");
    check_keys(j, {"geometry", "physics", "budgets", "sap_mode"}, "config");
    if (j.contains("geometry")) {
        const json& g = j.at("geometry");
        check_keys(g, {"d_min", "d_row", "d_adj", "width", "height", "grid"},
                   "config.geometry");
        cfg.geom.d_min = num_or(g, "d_min", cfg.geom.d_min);
        cfg.geom.d_row = num_or(g, "d_row", cfg.geom.d_row);
        cfg.geom.d_adj = num_or(g, "d_adj", cfg.geom.d_adj);
        cfg.geom.width = num_or(g, "width", cfg.geom.width);
        cfg.geom.height = num_or(g, "height", cfg.geom.height);
        cfg.geom.grid = num_or(g, "grid", cfg.geom.grid);
    }
    if (j.contains("physics")) {
        const json& p = j.at("physics");
        check_keys(p,
                   {"c6", "omega_max", "delta_max", "local_span", "max_qubits",
                    "integrator_tol", "idealized_blockade"},
                   "config.physics");
        cfg.phys.c6 = num_or(p, "c6", cfg.phys.c6);
        cfg.phys.omega_max = num_or(p, "omega_max", cfg.phys.omega_max);
        cfg.phys.delta_max = num_or(p, "delta_max", cfg.phys.delta_max);
        if (p.contains("local_span") && !p.at("local_span").is_null())
            cfg.phys.local_span = num_or(p, "local_span", 0.0);
        cfg.phys.max_qubits = int_or(p, "max_qubits", cfg.phys.max_qubits);
        cfg.phys.integrator_tol = num_or(p, "integrator_tol", cfg.phys.integrator_tol);
        if (p.contains("idealized_blockade")) {
            stin::require(p.at("idealized_blockade").is_boolean(), stin::errc::schema,
                          "config key 'idealized_blockade' must be a boolean");
            cfg.phys.idealized_blockade = p.at("idealized_blockade").get<bool>();
        }
    }
    if (j.contains("budgets")) {
        const json& b = j.at("budgets");
        check_keys(b, {"exact_budget_s", "shots", "bootstrap_subsample", "bootstrap_reps"},
                   "config.budgets");
        cfg.budgets.exact_budget_s = num_or(b, "exact_budget_s", cfg.budgets.exact_budget_s);
        cfg.budgets.shots = int_or(b, "shots", cfg.budgets.shots);
        cfg.budgets.bootstrap_subsample =
            int_or(b, "bootstrap_subsample", cfg.budgets.bootstrap_subsample);
        cfg.budgets.bootstrap_reps = int_or(b, "bootstrap_reps", cfg.budgets.bootstrap_reps);
    }
    if (j.contains("sap_mode")) {
        const std::string m = j.at("sap_mode").get<std::string>();
        if (m == "exact")
            cfg.sap_mode = stin::SapMode::exact;
        else if (m == "dsatur")
            cfg.sap_mode = stin::SapMode::dsatur;
        else
            stin::fail(stin::errc::schema, "sap_mode must be 'exact' or 'dsatur'");
    }
    return cfg;
}

const stin::WeightedGraph& ssp_of(const stin_instance* inst) {
    stin::require(inst->v.kind == "ssp" && inst->v.ssp.has_value(), stin::errc::contract,
                  "a selection (ssp) instance is required here");
    return *inst->v.ssp;
}

// Scenario synthesis from orbital data: propagate every satellite over a
// common window, score coverage of the unserved region, and derive the three
// coupled problem instances plus the terrestrial topology.
json generate_orbital(const json& req, const std::string& out_dir) {
    check_keys(req,
               {"mode", "id", "tle", "sites", "region", "t0_s", "duration_s", "step_s",
                "half_angle_deg", "overlap_threshold", "min_elevation_deg", "num_bands",
                "mc_samples"},
               "generate request");
    const std::string id = req.value("id", std::string("orbital"));
    stin::require(req.contains("tle") && req.contains("sites") && req.contains("region"),
                  stin::errc::schema,
                  "orbital generation needs 'tle', 'sites', and 'region' paths");
    const double t0 = num_or(req, "t0_s", 0.0);
    const double step = num_or(req, "step_s", 10.0);
    const double half_angle = num_or(req, "half_angle_deg", 40.0);
    const double overlap = num_or(req, "overlap_threshold", 0.9);
    const double min_elev = num_or(req, "min_elevation_deg", 10.0);
    const int num_bands = int_or(req, "num_bands", 4);
    const int mc_samples = int_or(req, "mc_samples", stin::kDefaultMcSamples);
    stin::require(num_bands >= 1, stin::errc::invalid, "num_bands must be at least 1");

    const auto records = stin::parse_tle(read_text_file(req.at("tle").get<std::string>()));
    stin::require(!records.empty(), stin::errc::invalid, "TLE file holds no records");
    // Default window: one orbital period of the first satellite.
    double duration = num_or(req, "duration_s", 0.0);
    if (duration <= 0.0) duration = records[0].period_s();
    const auto sites = stin::read_sites(req.at("sites").get<std::string>());
    const stin::Region region = stin::read_region(req.at("region").get<std::string>());
    const stin::RegionSampler sampler = stin::sample_region(region, mc_samples);

    std::vector<stin::Site> gateways, bases;
    for (const stin::Site& s : sites)
        (s.kind == "gateway" ? gateways : bases).push_back(s);

    // Epochs may differ between records; anchor the scenario clock at the
    // newest epoch so every track samples the same absolute instants.
    double jd_ref = records[0].epoch_jd();
    for (const auto& r : records) jd_ref = std::max(jd_ref, r.epoch_jd());
    std::vector<stin::GroundTrack> tracks;
    std::vector<stin::CoverageTrack> coverage;
    for (const auto& rec : records) {
        const double shift = (jd_ref - rec.epoch_jd()) * 86400.0;
        stin::GroundTrack tr = stin::propagate(rec, t0 + shift, t0 + shift + duration, step);
        for (auto& s : tr.samples) s.t -= shift;
        coverage.push_back(stin::build_coverage_track(tr, sampler, half_angle));
        tracks.push_back(std::move(tr));
    }

    stin::WeightedGraph g = stin::build_ssp_instance(coverage, sampler, overlap);
    stin::require(g.num_vertices() > 0, stin::errc::infeasible,
                  "no satellite covers the unserved region in the window");

    // build_ssp_instance drops useless satellites, so realign the tracks.
    std::vector<stin::GroundTrack> kept;
    for (const std::string& name : g.labels()) {
        auto it = std::find_if(tracks.begin(), tracks.end(),
                               [&](const stin::GroundTrack& t) { return t.satellite == name; });
        stin::require(it != tracks.end(), stin::errc::internal, "lost track of " + name);
        kept.push_back(*it);
    }

    stin::VertexSet everyone;
    everyone.members.resize(g.num_vertices());
    std::iota(everyone.members.begin(), everyone.members.end(), 0);
    for (const double w : g.weights()) everyone.objective += w;
    stin::BipartiteInstance universe =
        stin::build_gsp_instance(g, everyone, kept, gateways, min_elev);

    // Terrestrial graph over the sites: minimum spanning tree for
    // connectivity, then each node also reaches its two nearest neighbors.
    stin::Topology topo;
    topo.num_gateways = static_cast<int>(gateways.size());
    topo.num_bases = static_cast<int>(bases.size());
    std::vector<stin::Site> nodes = gateways;
    nodes.insert(nodes.end(), bases.begin(), bases.end());
    for (const stin::Site& s : nodes) topo.labels.push_back(s.name);
    const int nn = static_cast<int>(nodes.size());
    auto node_dist = [&](int a, int b) {
        const double la = nodes[a].lat_deg * M_PI / 180.0, lb = nodes[b].lat_deg * M_PI / 180.0;
        const double dlon = (nodes[a].lon_deg - nodes[b].lon_deg) * M_PI / 180.0;
        const double c = std::sin(la) * std::sin(lb) + std::cos(la) * std::cos(lb) * std::cos(dlon);
        return std::acos(std::clamp(c, -1.0, 1.0));
    };
    std::set<std::pair<int, int>> edges;
    if (nn > 1) {
        std::vector<bool> in_tree(nn, false);
        std::vector<double> best(nn, 1e30);
        std::vector<int> from(nn, -1);
        in_tree[0] = true;
        for (int i = 1; i < nn; ++i) best[i] = node_dist(0, i), from[i] = 0;
        for (int round = 1; round < nn; ++round) {
            int pick = -1;
            for (int i = 0; i < nn; ++i)
                if (!in_tree[i] && (pick < 0 || best[i] < best[pick])) pick = i;
            in_tree[pick] = true;
            edges.insert({std::min(pick, from[pick]), std::max(pick, from[pick])});
            for (int i = 0; i < nn; ++i)
                if (!in_tree[i] && node_dist(pick, i) < best[i]) {
                    best[i] = node_dist(pick, i);
                    from[i] = pick;
                }
        }
        for (int i = 0; i < nn; ++i) {
            std::vector<int> order;
            for (int k = 0; k < nn; ++k)
                if (k != i) order.push_back(k);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return std::pair(node_dist(i, a), a) < std::pair(node_dist(i, b), b);
            });
            for (int k = 0; k < 2 && k < static_cast<int>(order.size()); ++k)
                edges.insert({std::min(i, order[k]), std::max(i, order[k])});
        }
    }
    topo.edges.assign(edges.begin(), edges.end());
    topo.sat_links = universe.links;
    std::sort(topo.sat_links.begin(), topo.sat_links.end());

    const stin::MwisResult greedy = stin::greedy_mwis(g);
    const stin::GspResult seed_assignment =
        stin::gsp_solve(stin::restrict_to_selected(universe, greedy.set));
    stin::SapBuild sap = stin::build_sap_instance(seed_assignment.assignment, topo, num_bands);

    stin::InstanceTriple triple;
    triple.id = id;
    triple.ssp = stin::make_ssp_instance(std::move(g));
    triple.gsp = stin::make_gsp_instance(std::move(universe));
    triple.sap = stin::make_sap_instance(std::move(sap.instance));
    triple.topo = std::move(topo);
    stin::write_triple(triple, out_dir);

    json out;
    out["mode"] = "orbital";
    out["out_dir"] = out_dir;
    out["ids"] = json::array({triple.id});
    out["count"] = 1;
    out["n_satellites_input"] = static_cast<int>(records.size());
    out["n_satellites_kept"] = triple.ssp.ssp->num_vertices();
    out["uncovered_fraction"] = sampler.uncovered_fraction;
    out["remote"] = stin::is_remote(sampler);
    if (!triple.gsp.gsp->warnings.empty()) out["warnings"] = triple.gsp.gsp->warnings;
    return out;
}

}  // namespace

extern "C" {

const char* stin_version(void) { return "0.1.0"; }

const char* stin_last_error(void) { return t_last_error.c_str(); }

void stin_string_free(char* s) { std::free(s); }

int stin_instance_parse(const char* json_text, stin_instance** out) {
    return wrap([&] {
        need(json_text, "json_text");
        need(out, "out");
        auto h = std::make_unique<stin_instance>();
        h->v = stin::parse_instance(json_text);
        *out = h.release();
    });
}

int stin_instance_read(const char* path, stin_instance** out) {
    return wrap([&] {
        need(path, "path");
        need(out, "out");
        auto h = std::make_unique<stin_instance>();
        h->v = stin::read_instance(path);
        *out = h.release();
    });
}

int stin_instance_to_json(const stin_instance* inst, char** out_json) {
    return wrap([&] {
        need(inst, "inst");
        need(out_json, "out_json");
        give_string(out_json, stin::instance_to_json(inst->v));
    });
}

int stin_instance_kind(const stin_instance* inst, char** out_kind) {
    return wrap([&] {
        need(inst, "inst");
        need(out_kind, "out_kind");
        give_string(out_kind, inst->v.kind);
    });
}

void stin_instance_free(stin_instance* inst) { delete inst; }

int stin_solve(const stin_instance* inst, const char* method, double budget_s,
               char** out_json) {
    return wrap([&] {
        need(inst, "inst");
        need(out_json, "out_json");
        const std::string m = method ? method : "";
        const stin::Instance& v = inst->v;
        if (v.kind == "ssp") {
            const stin::WeightedGraph& g = *v.ssp;
            stin::MwisResult r;
            if (m.empty() || m == "exact") {
                const double budget =
                    budget_s > 0.0 ? budget_s : std::numeric_limits<double>::infinity();
                r = stin::mwis_exact(g, budget);
            } else if (m == "greedy") {
                r = stin::greedy_mwis(g);
            } else if (m == "bruteforce") {
                r = stin::mwis_bruteforce(g);
            } else {
                stin::fail(stin::errc::invalid, "unknown ssp method '" + m + "'");
            }
            give_string(out_json, stin::mwis_result_to_json(r));
        } else if (v.kind == "gsp") {
            stin::GspResult r;
            if (m.empty() || m == "flow")
                r = stin::gsp_solve(*v.gsp);
            else if (m == "bruteforce")
                r = stin::gsp_bruteforce(*v.gsp);
            else
                stin::fail(stin::errc::invalid, "unknown gsp method '" + m + "'");
            give_string(out_json, stin::gsp_result_to_json(r));
        } else if (v.kind == "sap") {
            stin::SapResult r;
            if (m.empty() || m == "exact")
                r = stin::sap_solve(*v.sap, stin::SapMode::exact);
            else if (m == "dsatur")
                r = stin::sap_solve(*v.sap, stin::SapMode::dsatur);
            else
                stin::fail(stin::errc::invalid, "unknown sap method '" + m + "'");
            give_string(out_json, stin::sap_result_to_json(r));
        } else {
            stin::fail(stin::errc::contract, "instance kind '" + v.kind + "' has no solver");
        }
    });
}

int stin_layout_parse(const char* json_text, stin_layout** out) {
    return wrap([&] {
        need(json_text, "json_text");
        need(out, "out");
        auto h = std::make_unique<stin_layout>();
        h->v = stin::parse_layout(json_text);
        *out = h.release();
    });
}

int stin_layout_read(const char* path, stin_layout** out) {
    return wrap([&] {
        need(path, "path");
        need(out, "out");
        auto h = std::make_unique<stin_layout>();
        h->v = stin::read_layout(path);
        *out = h.release();
    });
}

int stin_layout_to_json(const stin_layout* l, char** out_json) {
    return wrap([&] {
        need(l, "layout");
        need(out_json, "out_json");
        give_string(out_json, stin::layout_to_json(l->v));
    });
}

void stin_layout_free(stin_layout* l) { delete l; }

int stin_embed(const stin_instance* ssp, uint64_t seed, const char* config_json,
               stin_layout** out_layout, char** out_report_json) {
    return wrap([&] {
        need(ssp, "ssp");
        need(out_layout, "out_layout");
        need(out_report_json, "out_report_json");
        const stin::PipelineConfig cfg = parse_config(config_json);
        stin::EmbedOutcome o = stin::embed_graph(ssp_of(ssp), seed, cfg.geom, cfg.embed);
        auto h = std::make_unique<stin_layout>();
        h->v = o.layout;
        give_string(out_report_json, stin::embed_outcome_to_json(o));
        *out_layout = h.release();
    });
}

int stin_validate_layout(const stin_instance* ssp, const stin_layout* l,
                         char** out_json) {
    return wrap([&] {
        need(ssp, "ssp");
        need(l, "layout");
        need(out_json, "out_json");
        const stin::EmbeddingReport rep = stin::validate_embedding(ssp_of(ssp), l->v);
        give_string(out_json, stin::report_to_json(rep));
    });
}

int stin_build_schedule(const stin_instance* ssp, double r_b_um,
                        const char* config_json, char** out_json) {
    return wrap([&] {
        need(ssp, "ssp");
        need(out_json, "out_json");
        const stin::PipelineConfig cfg = parse_config(config_json);
        const stin::PulseSchedule s =
            stin::build_qaa_schedule(ssp_of(ssp), r_b_um, cfg.phys);
        give_string(out_json, stin::schedule_to_json(s));
    });
}

int stin_simulate(const stin_instance* ssp, const stin_layout* l, int shots,
                  uint64_t seed, const char* config_json, char** out_json) {
    return wrap([&] {
        need(ssp, "ssp");
        need(l, "layout");
        need(out_json, "out_json");
        const stin::PipelineConfig cfg = parse_config(config_json);
        const stin::WeightedGraph& g = ssp_of(ssp);
        const stin::QaaRun run = stin::run_qaa(g, l->v, shots, seed, cfg.phys);
        const stin::RefinementOutcome ref = stin::refine(run.shots, g);
        const std::vector<double> boot = stin::bootstrap_objectives(
            run.shots, g, std::min(cfg.budgets.bootstrap_subsample, run.shots.shots),
            cfg.budgets.bootstrap_reps, stin::derive_seed(seed, "bootstrap-report"));
        json j;
        j["qaa"] = json::parse(stin::qaa_run_to_json(run));
        j["refinement"] = json::parse(stin::refinement_to_json(ref));
        j["bootstrap_objectives"] = boot;
        give_string(out_json, j.dump(2));
    });
}

int stin_generate(const char* request_json, const char* out_dir, char** out_json) {
    return wrap([&] {
        need(request_json, "request_json");
        need(out_dir, "out_dir");
        need(out_json, "out_json");
        const json req = parse_json_text(request_json, "generate request");
        stin::require(req.is_object(), stin::errc::schema,
                      "generate request must be a JSON object");
        const std::string mode = req.value("mode", std::string("synth"));
        json summary;
        if (mode == "synth") {
            check_keys(req, {"mode", "seed", "count", "n_min", "n_max"}, "generate request");
            const auto seed = static_cast<std::uint64_t>(req.value("seed", 0));
            const int count = int_or(req, "count", 10);
            const int n_min = int_or(req, "n_min", 4);
            const int n_max = int_or(req, "n_max", 12);
            const auto triples = stin::synth_suite(seed, count, n_min, n_max);
            json ids = json::array();
            for (const auto& t : triples) {
                stin::write_triple(t, out_dir);
                ids.push_back(t.id);
            }
            summary["mode"] = "synth";
            summary["out_dir"] = out_dir;
            summary["ids"] = ids;
            summary["count"] = static_cast<int>(triples.size());
        } else if (mode == "orbital") {
            summary = generate_orbital(req, out_dir);
        } else {
            stin::fail(stin::errc::schema, "mode must be 'synth' or 'orbital'");
        }
        give_string(out_json, summary.dump(2));
    });
}

int stin_run_pipeline(const char* dir, const char* id, const char* solver,
                      uint64_t seed, const char* config_json, char** out_json) {
    return wrap([&] {
        need(dir, "dir");
        need(id, "id");
        need(solver, "solver");
        need(out_json, "out_json");
        const stin::PipelineConfig cfg = parse_config(config_json);
        const stin::InstanceTriple t = stin::read_triple(dir, id);
        const stin::PipelineReport r =
            stin::run_pipeline(t, stin::parse_solver(solver), seed, cfg);
        stin::validate_pipeline_report(r, t);
        give_string(out_json, stin::pipeline_report_to_json(r));
    });
}

int stin_bench(const char* dir, const char* ids_json, uint64_t seed,
               const char* config_json, char** out_json) {
    return wrap([&] {
        need(dir, "dir");
        need(out_json, "out_json");
        const stin::PipelineConfig cfg = parse_config(config_json);
        std::vector<std::string> ids;
        if (ids_json && *ids_json) {
            const json j = parse_json_text(ids_json, "ids");
            stin::require(j.is_array(), stin::errc::schema, "ids must be a JSON array");
            for (const auto& v : j) ids.push_back(v.get<std::string>());
        } else {
            const std::string suffix = ".topo.json";
            std::error_code ec;
            for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
                const std::string name = entry.path().filename().string();
                if (name.size() > suffix.size() &&
                    name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
                    ids.push_back(name.substr(0, name.size() - suffix.size()));
            }
            stin::require(!ec, stin::errc::io, "cannot scan " + std::string(dir));
            std::sort(ids.begin(), ids.end());
        }
        stin::require(!ids.empty(), stin::errc::invalid, "no instance triples to bench");
        std::vector<stin::InstanceTriple> suite;
        suite.reserve(ids.size());
        for (const std::string& id : ids) suite.push_back(stin::read_triple(dir, id));
        const stin::BenchResult b = stin::bench(suite, seed, cfg);
        json j;
        j["summary"] = json::parse(b.summary_json);
        j["csv"] = b.csv;
        j["m_hist_csv"] = b.m_hist_csv;
        j["bands_hist_csv"] = b.bands_hist_csv;
        give_string(out_json, j.dump(2));
    });
}

int stin_relative_improvement(double a, double b, double* out) {
    return wrap([&] {
        need(out, "out");
        *out = stin::relative_improvement(a, b);
    });
}

int stin_js_divergence(const double* p, const double* q, size_t len, double* out) {
    return wrap([&] {
        need(p, "p");
        need(q, "q");
        need(out, "out");
        *out = stin::js_divergence(std::vector<double>(p, p + len),
                                   std::vector<double>(q, q + len));
    });
}

int stin_tle_to_json(const char* tle_text, char** out_json) {
    return wrap([&] {
        need(tle_text, "tle_text");
        need(out_json, "out_json");
        json arr = json::array();
        for (const auto& r : stin::parse_tle(tle_text)) {
            json rec;
            rec["name"] = r.name;
            rec["epoch_year"] = r.epoch_year;
            rec["epoch_day"] = r.epoch_day;
            rec["inclination_deg"] = r.inclination_deg;
            rec["raan_deg"] = r.raan_deg;
            rec["eccentricity"] = r.eccentricity;
            rec["arg_perigee_deg"] = r.arg_perigee_deg;
            rec["mean_anomaly_deg"] = r.mean_anomaly_deg;
            rec["mean_motion_rev_day"] = r.mean_motion_rev_day;
            rec["period_s"] = r.period_s();
            arr.push_back(std::move(rec));
        }
        give_string(out_json, arr.dump(2));
    });
}

int stin_ground_track(const char* tle_text, int index, double t0_s, double t1_s,
                      double step_s, char** out_json) {
    return wrap([&] {
        need(tle_text, "tle_text");
        need(out_json, "out_json");
        const auto records = stin::parse_tle(tle_text);
        stin::require(index >= 0 && index < static_cast<int>(records.size()),
                      stin::errc::invalid, "TLE record index out of range");
        const stin::GroundTrack tr = stin::propagate(records[index], t0_s, t1_s, step_s);
        json j;
        j["satellite"] = tr.satellite;
        json samples = json::array();
        for (const auto& s : tr.samples) {
            samples.push_back(json{{"t", s.t},
                                   {"lat_deg", s.lat_deg},
                                   {"lon_deg", s.lon_deg},
                                   {"alt_km", s.alt_km}});
        }
        j["samples"] = std::move(samples);
        give_string(out_json, j.dump(2));
    });
}

}  // extern "C"
