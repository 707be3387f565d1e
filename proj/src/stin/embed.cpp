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

#include "stin/embed.hpp"

#include <chrono>

#include <json.hpp>

namespace stin {

EmbedOutcome embed_graph(const WeightedGraph& g, std::uint64_t seed,
                         const HardwareGeometry& geom, const EmbedOptions& opts) {
    require(opts.max_attempts >= 1, errc::contract, "at least one attempt is required");
    const auto t0 = std::chrono::steady_clock::now();

    EmbedOutcome best;
    bool have_best = false;
    // Prefer hard feasibility, then the unit-disk property, then a wide gap.
    auto better = [](const EmbedOutcome& a, const EmbedOutcome& b) {
        if (a.refine_success != b.refine_success) return a.refine_success;
        if (a.report.is_unit_disk != b.report.is_unit_disk) return a.report.is_unit_disk;
        return a.report.gap > b.report.gap;
    };

    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        const std::uint64_t s = derive_seed(seed, "attempt:" + std::to_string(attempt));
        const Layout fr = fr_init(g, derive_seed(s, "fr"), geom, opts.fr_k, opts.fr_iterations);
        DenResult den = den_train(g, fr, derive_seed(s, "den"), opts.den);
        RefineResult ref = refine_layout(g, den.layout, opts.refine);

        EmbedOutcome out;
        out.layout = std::move(ref.layout);
        out.report = validate_embedding(g, out.layout);
        out.loss_trace = std::move(den.loss_trace);
        out.epochs_run = den.epochs_run;
        out.best_loss = den.best_loss;
        out.refine_success = ref.success;
        out.attempts = attempt + 1;
        if (!have_best || better(out, best)) {
            best = std::move(out);
            best.attempts = attempt + 1;
            have_best = true;
        }
        if (best.refine_success && best.report.is_unit_disk) break;
    }

    best.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return best;
}

std::string embed_outcome_to_json(const EmbedOutcome& o) {
    nlohmann::json j = nlohmann::json::parse(report_to_json(o.report));
    j["epochs_run"] = o.epochs_run;
    j["best_loss"] = o.best_loss;
    j["refine_success"] = o.refine_success;
    j["attempts"] = o.attempts;
    j["elapsed_s"] = o.elapsed_s;
    if (!o.loss_trace.empty()) {
        j["loss_first"] = o.loss_trace.front();
        j["loss_last"] = o.loss_trace.back();
    }
    return j.dump(2) + "\n";
}

}  // namespace stin
