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

#include "stin/elf.hpp"

#include <cmath>

namespace stin {

namespace {

constexpr int kSmallGraphLimit = 20;  // full stretching + gap weight up to here

struct PairScan {
    double l_min = 0.0, l_max = 0.0, l_row = 0.0;
    int ud_max_i = -1, ud_max_j = -1;  // widest adjacent pair
    int ud_min_i = -1, ud_min_j = -1;  // tightest non-adjacent pair
    double ud_max = 0.0, ud_min = 0.0;
};

PairScan scan_pairs(const WeightedGraph& g, const std::vector<std::array<double, 2>>& coords,
                    const HardwareGeometry& geom) {
    PairScan s;
    const int n = static_cast<int>(coords.size());
    const double far_target = std::max(geom.width, geom.height) * std::sqrt(2.0);
    const double row_c = 4.0 / (geom.d_row * geom.d_row);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = coords[i][0] - coords[j][0];
            const double dy = coords[i][1] - coords[j][1];
            const double d2 = dx * dx + dy * dy;
            const bool adj = g.has_edge(i, j);

            const double near_t = adj ? geom.d_min : geom.d_adj;
            if (d2 < near_t * near_t) s.l_min += near_t * near_t - d2;

            const double far_t = adj ? geom.d_adj : far_target;
            if (d2 > far_t * far_t) s.l_max += d2 - far_t * far_t;

            const double row = -row_c * dy * dy * dy * dy + 4.0 * dy * dy;
            if (row > 0.0) s.l_row += row;

            if (adj) {
                if (s.ud_max_i < 0 || d2 > s.ud_max) {
                    s.ud_max = d2;
                    s.ud_max_i = i;
                    s.ud_max_j = j;
                }
            } else {
                if (s.ud_min_i < 0 || d2 < s.ud_min) {
                    s.ud_min = d2;
                    s.ud_min_i = i;
                    s.ud_min_j = j;
                }
            }
        }
    return s;
}

}  // namespace

ElfTerms elf_loss(const WeightedGraph& g, const std::vector<std::array<double, 2>>& coords,
                  const HardwareGeometry& geom) {
    require(static_cast<int>(coords.size()) == g.num_vertices(), errc::contract,
            "coordinate list does not match the graph");
    const PairScan s = scan_pairs(g, coords, geom);
    ElfTerms t;
    t.l_min = s.l_min;
    t.l_max = s.l_max;
    t.l_row = s.l_row;
    // The gap term needs both an adjacent and a non-adjacent pair to exist.
    if (s.ud_max_i >= 0 && s.ud_min_i >= 0) t.l_ud = s.ud_max - s.ud_min;
    if (g.num_vertices() <= kSmallGraphLimit)
        t.total = t.l_min + t.l_row + t.l_max + t.l_ud;
    else
        t.total = t.l_min + t.l_row + 0.1 * t.l_ud;
    return t;
}

std::vector<std::array<double, 2>> elf_grad(const WeightedGraph& g,
                                            const std::vector<std::array<double, 2>>& coords,
                                            const HardwareGeometry& geom) {
    require(static_cast<int>(coords.size()) == g.num_vertices(), errc::contract,
            "coordinate list does not match the graph");
    const int n = static_cast<int>(coords.size());
    const bool small = n <= kSmallGraphLimit;
    const double ud_weight = small ? 1.0 : 0.1;
    const double far_target = std::max(geom.width, geom.height) * std::sqrt(2.0);
    const double row_c = 4.0 / (geom.d_row * geom.d_row);

    std::vector<std::array<double, 2>> grad(n, {0.0, 0.0});
    const PairScan s = scan_pairs(g, coords, geom);

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = coords[i][0] - coords[j][0];
            const double dy = coords[i][1] - coords[j][1];
            const double d2 = dx * dx + dy * dy;
            const bool adj = g.has_edge(i, j);
            double dd2 = 0.0;  // d total / d (d2) for this pair

            const double near_t = adj ? geom.d_min : geom.d_adj;
            if (d2 < near_t * near_t) dd2 -= 1.0;

            if (small) {
                const double far_t = adj ? geom.d_adj : far_target;
                if (d2 > far_t * far_t) dd2 += 1.0;
            }

            if (s.ud_max_i >= 0 && s.ud_min_i >= 0) {
                if (i == s.ud_max_i && j == s.ud_max_j) dd2 += ud_weight;
                if (i == s.ud_min_i && j == s.ud_min_j) dd2 -= ud_weight;
            }

            if (dd2 != 0.0) {
                grad[i][0] += dd2 * 2.0 * dx;
                grad[i][1] += dd2 * 2.0 * dy;
                grad[j][0] -= dd2 * 2.0 * dx;
                grad[j][1] -= dd2 * 2.0 * dy;
            }

            const double row = -row_c * dy * dy * dy * dy + 4.0 * dy * dy;
            if (row > 0.0) {
                const double drow = -4.0 * row_c * dy * dy * dy + 8.0 * dy;
                grad[i][1] += drow;
                grad[j][1] -= drow;
            }
        }
    return grad;
}

}  // namespace stin
