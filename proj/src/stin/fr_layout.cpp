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

#include "stin/fr_layout.hpp"

#include <algorithm>
#include <cmath>

namespace stin {

Layout fr_init(const WeightedGraph& g, std::uint64_t seed, const HardwareGeometry& geom,
               double k, int iterations) {
    require(k > 0.0, errc::contract, "spring length must be positive");
    require(iterations >= 0, errc::contract, "iteration count must be non-negative");
    const int n = g.num_vertices();
    Layout l;
    l.geom = geom;
    l.coords.assign(n, {geom.width / 2.0, geom.height / 2.0});
    if (n <= 1) return l;

    Rng rng(seed);
    const double span = k * std::sqrt(static_cast<double>(n));
    std::vector<std::array<double, 2>> pos(n);
    for (auto& p : pos) p = {rng.uniform(-span / 2, span / 2), rng.uniform(-span / 2, span / 2)};

    std::vector<std::array<double, 2>> disp(n);
    for (int iter = 0; iter < iterations; ++iter) {
        for (auto& d : disp) d = {0.0, 0.0};
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double dx = pos[i][0] - pos[j][0];
                double dy = pos[i][1] - pos[j][1];
                double dist = std::hypot(dx, dy);
                if (dist < 1e-12) {  // coincident points: nudge apart deterministically
                    const double a = rng.uniform(0.0, 2.0 * M_PI);
                    dx = 1e-6 * std::cos(a);
                    dy = 1e-6 * std::sin(a);
                    dist = 1e-6;
                }
                const double rep = (k * k) / (dist * dist);
                disp[i][0] += dx / dist * rep;
                disp[i][1] += dy / dist * rep;
                disp[j][0] -= dx / dist * rep;
                disp[j][1] -= dy / dist * rep;
                if (g.has_edge(i, j)) {
                    const double att = dist / k;
                    disp[i][0] -= dx / dist * att;
                    disp[i][1] -= dy / dist * att;
                    disp[j][0] += dx / dist * att;
                    disp[j][1] += dy / dist * att;
                }
            }
        const double temp =
            std::max(0.005 * k, k * (1.0 - static_cast<double>(iter) / iterations));
        for (int i = 0; i < n; ++i) {
            const double mag = std::hypot(disp[i][0], disp[i][1]);
            if (mag < 1e-15) continue;
            const double step = std::min(mag, temp);
            pos[i][0] += disp[i][0] / mag * step;
            pos[i][1] += disp[i][1] / mag * step;
        }
    }

    double lo_x = pos[0][0], hi_x = pos[0][0], lo_y = pos[0][1], hi_y = pos[0][1];
    for (const auto& p : pos) {
        lo_x = std::min(lo_x, p[0]);
        hi_x = std::max(hi_x, p[0]);
        lo_y = std::min(lo_y, p[1]);
        hi_y = std::max(hi_y, p[1]);
    }
    const double cx = (lo_x + hi_x) / 2, cy = (lo_y + hi_y) / 2;
    double scale = 1.0;
    if (hi_x - lo_x > geom.width) scale = std::min(scale, geom.width / (hi_x - lo_x));
    if (hi_y - lo_y > geom.height) scale = std::min(scale, geom.height / (hi_y - lo_y));
    for (int i = 0; i < n; ++i) {
        l.coords[i][0] = geom.width / 2.0 + (pos[i][0] - cx) * scale;
        l.coords[i][1] = geom.height / 2.0 + (pos[i][1] - cy) * scale;
        l.coords[i][0] = std::clamp(l.coords[i][0], 0.0, geom.width);
        l.coords[i][1] = std::clamp(l.coords[i][1], 0.0, geom.height);
    }
    return l;
}

}  // namespace stin
