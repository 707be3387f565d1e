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

// Command-line front end. Talks to the library exclusively through the C
// interface in stin.h; JSON handling here is only for splitting reports into
// files and printing digests.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stin.h"

namespace {

using nlohmann::json;

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    std::string config_path;
};

std::string config_text(const GlobalOpts& g) {
    if (g.config_path.empty()) return "";
    std::ifstream in(g.config_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open config " << g.config_path << "\n";
        std::exit(1);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Claims ownership of a library-allocated string.
std::string take(char* s) {
    std::string out = s ? s : "";
    stin_string_free(s);
    return out;
}

void check(int rc) {
    if (rc == STIN_OK) return;
    std::cerr << "error (" << rc << "): " << stin_last_error() << "\n";
    std::exit(1);
}

void spill(const std::string& path, const std::string& text) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(1);
    }
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

struct InstanceHandle {
    stin_instance* p = nullptr;
    ~InstanceHandle() { stin_instance_free(p); }
};

struct LayoutHandle {
    stin_layout* p = nullptr;
    ~LayoutHandle() { stin_layout_free(p); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Space-terrestrial network design toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "Root seed; stage seeds derive from it")
        ->capture_default_str();
    app.add_option("--out-dir", g.out_dir, "Directory for output files")
        ->capture_default_str();
    app.add_option("--config", g.config_path,
                   "JSON config file with geometry/physics/budgets sections");

    // generate ------------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "Create coupled problem instances");
    gen->fallthrough();
    std::string gen_mode = "synth";
    int gen_count = 10, gen_nmin = 4, gen_nmax = 12, gen_bands = 4, gen_mc = 20000;
    std::string gen_tle, gen_sites, gen_region, gen_id = "orbital";
    double gen_t0 = 0.0, gen_duration = 0.0, gen_step = 10.0, gen_half = 40.0;
    double gen_overlap = 0.9, gen_elev = 10.0;
    gen->add_option("--mode", gen_mode, "synth or orbital")
        ->check(CLI::IsMember({"synth", "orbital"}))
        ->capture_default_str();
    gen->add_option("--count", gen_count, "Synth: number of triples")->capture_default_str();
    gen->add_option("--n-min", gen_nmin, "Synth: smallest vertex count")->capture_default_str();
    gen->add_option("--n-max", gen_nmax, "Synth: largest vertex count")->capture_default_str();
    gen->add_option("--tle", gen_tle, "Orbital: two-line element file");
    gen->add_option("--sites", gen_sites, "Orbital: ground sites CSV (name,lat,lon,kind)");
    gen->add_option("--region", gen_region, "Orbital: region JSON file");
    gen->add_option("--id", gen_id, "Orbital: triple id")->capture_default_str();
    gen->add_option("--t0", gen_t0, "Orbital: window start, s past epoch")
        ->capture_default_str();
    gen->add_option("--duration", gen_duration, "Orbital: window length, s (0 = one orbital period)")
        ->capture_default_str();
    gen->add_option("--step", gen_step, "Orbital: sample spacing, s")->capture_default_str();
    gen->add_option("--half-angle", gen_half, "Orbital: antenna cone half-angle, deg")
        ->capture_default_str();
    gen->add_option("--overlap", gen_overlap, "Orbital: footprint overlap threshold")
        ->capture_default_str();
    gen->add_option("--min-elevation", gen_elev, "Orbital: gateway elevation mask, deg")
        ->capture_default_str();
    gen->add_option("--bands", gen_bands, "Orbital: number of frequency bands")
        ->capture_default_str();
    gen->add_option("--mc-samples", gen_mc, "Orbital: Monte Carlo points over the region")
        ->capture_default_str();
    gen->callback([&] {
        json req;
        req["mode"] = gen_mode;
        if (gen_mode == "synth") {
            req["seed"] = g.seed;
            req["count"] = gen_count;
            req["n_min"] = gen_nmin;
            req["n_max"] = gen_nmax;
        } else {
            req["id"] = gen_id;
            req["tle"] = gen_tle;
            req["sites"] = gen_sites;
            req["region"] = gen_region;
            req["t0_s"] = gen_t0;
            req["duration_s"] = gen_duration;
            req["step_s"] = gen_step;
            req["half_angle_deg"] = gen_half;
            req["overlap_threshold"] = gen_overlap;
            req["min_elevation_deg"] = gen_elev;
            req["num_bands"] = gen_bands;
            req["mc_samples"] = gen_mc;
        }
        char* out = nullptr;
        check(stin_generate(req.dump().c_str(), g.out_dir.c_str(), &out));
        const std::string summary = take(out);
        spill(g.out_dir + "/generate_summary.json", summary);
        std::cout << summary << "\n";
    });

    // embed ---------------------------------------------------------------
    auto* emb = app.add_subcommand("embed", "Train a hardware layout for a selection instance");
    emb->fallthrough();
    std::string emb_instance;
    emb->add_option("instance", emb_instance, "Path to a .ssp.json instance")->required();
    emb->callback([&] {
        InstanceHandle inst;
        check(stin_instance_read(emb_instance.c_str(), &inst.p));
        LayoutHandle lay;
        char* report = nullptr;
        check(stin_embed(inst.p, g.seed, config_text(g).c_str(), &lay.p, &report));
        const std::string report_text = take(report);
        char* lj = nullptr;
        check(stin_layout_to_json(lay.p, &lj));
        spill(g.out_dir + "/layout.json", take(lj));
        spill(g.out_dir + "/embed_report.json", report_text);
        std::cout << report_text << "\n";
    });

    // solve ---------------------------------------------------------------
    auto* sol = app.add_subcommand("solve", "Run a solver on one instance");
    sol->fallthrough();
    std::string sol_instance, sol_method;
    double sol_budget = 0.0;
    sol->add_option("instance", sol_instance, "Path to a .ssp/.gsp/.sap instance")->required();
    sol->add_option("--method", sol_method,
                    "ssp: exact|greedy|bruteforce; gsp: flow|bruteforce; sap: exact|dsatur");
    sol->add_option("--budget", sol_budget, "Time budget in seconds for ssp exact; 0 = none")
        ->capture_default_str();
    sol->callback([&] {
        InstanceHandle inst;
        check(stin_instance_read(sol_instance.c_str(), &inst.p));
        char* out = nullptr;
        check(stin_solve(inst.p, sol_method.c_str(), sol_budget, &out));
        const std::string result = take(out);
        spill(g.out_dir + "/solve_result.json", result);
        std::cout << result << "\n";
    });

    // simulate ------------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "Anneal, sample, and refine one instance");
    sim->fallthrough();
    std::string sim_instance, sim_layout;
    int sim_shots = 300;
    sim->add_option("instance", sim_instance, "Path to a .ssp.json instance")->required();
    sim->add_option("--layout", sim_layout, "Layout JSON from `embed`")->required();
    sim->add_option("--shots", sim_shots, "Measurement count")->capture_default_str();
    sim->callback([&] {
        InstanceHandle inst;
        check(stin_instance_read(sim_instance.c_str(), &inst.p));
        LayoutHandle lay;
        check(stin_layout_read(sim_layout.c_str(), &lay.p));
        char* out = nullptr;
        check(stin_simulate(inst.p, lay.p, sim_shots, g.seed, config_text(g).c_str(), &out));
        const std::string report = take(out);
        spill(g.out_dir + "/simulate_report.json", report);
        const json j = json::parse(report);
        json digest;
        digest["norm"] = j["qaa"]["norm"];
        digest["steps"] = j["qaa"]["steps"];
        digest["best"] = j["refinement"]["best"];
        digest["n_nonindependent"] = j["refinement"]["n_nonindependent"];
        std::cout << digest.dump(2) << "\n";
    });

    // pipeline ------------------------------------------------------------
    auto* pipe = app.add_subcommand("pipeline", "Selection -> gateways -> bands on one triple");
    pipe->fallthrough();
    std::string pipe_dir, pipe_id, pipe_solver = "qaa";
    pipe->add_option("--dir", pipe_dir, "Directory holding <id>.{ssp,gsp,sap,topo}.json")
        ->required();
    pipe->add_option("--id", pipe_id, "Triple id")->required();
    pipe->add_option("--solver", pipe_solver, "qaa, exact, or greedy")
        ->check(CLI::IsMember({"qaa", "exact", "greedy"}))
        ->capture_default_str();
    pipe->callback([&] {
        char* out = nullptr;
        check(stin_run_pipeline(pipe_dir.c_str(), pipe_id.c_str(), pipe_solver.c_str(), g.seed,
                                config_text(g).c_str(), &out));
        const std::string report = take(out);
        const std::string stem = g.out_dir + "/" + pipe_id + "." + pipe_solver;
        spill(stem + ".report.json", report);
        const json j = json::parse(report);
        if (j.contains("embedding") && j["embedding"].contains("layout"))
            spill(stem + ".layout.json", j["embedding"]["layout"].dump(2));
        if (j.contains("qaa") && j["qaa"].contains("shots"))
            spill(stem + ".shots.json", j["qaa"]["shots"].dump(2));
        json digest;
        digest["id"] = pipe_id;
        digest["solver"] = pipe_solver;
        digest["ssp_objective"] = j["ssp"]["objective"];
        digest["gsp_load"] = j["gsp"]["objective"];
        digest["sap_bands_used"] = j["sap"]["bands_used"];
        digest["sap_cost"] = j["sap"]["objective"];
        std::cout << digest.dump(2) << "\n";
    });

    // bench ---------------------------------------------------------------
    auto* ben = app.add_subcommand("bench", "Three-solver comparison over a stored suite");
    ben->fallthrough();
    std::string ben_dir;
    std::vector<std::string> ben_ids;
    ben->add_option("--dir", ben_dir, "Directory holding the triples")->required();
    ben->add_option("--ids", ben_ids, "Triple ids (default: every *.topo.json in --dir)");
    ben->callback([&] {
        std::string ids_text;
        if (!ben_ids.empty()) ids_text = json(ben_ids).dump();
        char* out = nullptr;
        check(stin_bench(ben_dir.c_str(), ids_text.c_str(), g.seed, config_text(g).c_str(),
                         &out));
        const json j = json::parse(take(out));
        spill(g.out_dir + "/bench.csv", j["csv"].get<std::string>());
        spill(g.out_dir + "/m_hist.csv", j["m_hist_csv"].get<std::string>());
        spill(g.out_dir + "/bands_hist.csv", j["bands_hist_csv"].get<std::string>());
        spill(g.out_dir + "/bench_summary.json", j["summary"].dump(2));
        std::cout << j["summary"].dump(2) << "\n";
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
