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

#include "stin/refine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace stin {

double margin_loss(const WeightedGraph& g, const std::vector<std::array<double, 2>>& coords,
                   double d_adj) {
    const int n = static_cast<int>(coords.size());
    const double t2 = d_adj * d_adj;
    double loss = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = coords[i][0] - coords[j][0];
            const double dy = coords[i][1] - coords[j][1];
            const double d2 = dx * dx + dy * dy;
            if (g.has_edge(i, j)) {
                if (d2 > t2) loss += d2 - t2;
            } else {
                if (d2 < t2) loss += t2 - d2;
            }
        }
    return loss;
}

std::vector<std::array<double, 2>> margin_grad(const WeightedGraph& g,
                                               const std::vector<std::array<double, 2>>& coords,
                                               double d_adj) {
    const int n = static_cast<int>(coords.size());
    const double t2 = d_adj * d_adj;
    std::vector<std::array<double, 2>> grad(n, {0.0, 0.0});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = coords[i][0] - coords[j][0];
            const double dy = coords[i][1] - coords[j][1];
            const double d2 = dx * dx + dy * dy;
            double s = 0.0;
            if (g.has_edge(i, j)) {
                if (d2 > t2) s = 1.0;
            } else {
                if (d2 < t2) s = -1.0;
            }
            if (s != 0.0) {
                grad[i][0] += s * 2.0 * dx;
                grad[i][1] += s * 2.0 * dy;
                grad[j][0] -= s * 2.0 * dx;
                grad[j][1] -= s * 2.0 * dy;
            }
        }
    return grad;
}

namespace {

long grid_index(double v, double grid) { return std::lround(v / grid); }
double from_grid(long idx, double grid) { return static_cast<double>(idx) * grid; }
double snap(double v, double grid) { return from_grid(grid_index(v, grid), grid); }

struct Boxes {
    std::vector<double> x_lo, x_hi, y_lo, y_hi;
};

// Half-slack boxes: vertex i may move anywhere in its box while every other
// vertex does the same, and all hard constraints still hold. Displacement
// radius is half the tightest pairwise slack; vertical extent collapses to
// zero inside multi-vertex rows and stays below half the row slack otherwise.
Boxes safe_boxes(const std::vector<std::array<double, 2>>& c, const HardwareGeometry& geom) {
    const int n = static_cast<int>(c.size());
    Boxes b;
    b.x_lo.resize(n);
    b.x_hi.resize(n);
    b.y_lo.resize(n);
    b.y_hi.resize(n);
    for (int i = 0; i < n; ++i) {
        double slack = std::numeric_limits<double>::infinity();
        double row_slack = std::numeric_limits<double>::infinity();
        bool shared_row = false;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dist = std::hypot(c[i][0] - c[j][0], c[i][1] - c[j][1]);
            slack = std::min(slack, (dist - geom.d_min) / 2.0);
            const double dy = std::abs(c[i][1] - c[j][1]);
            if (dy == 0.0)
                shared_row = true;
            else
                row_slack = std::min(row_slack, (dy - geom.d_row) / 2.0);
        }
        slack = std::max(0.0, std::isinf(slack) ? geom.diag() : slack);
        const double hx = slack / std::sqrt(2.0);
        double hy = shared_row ? 0.0 : std::min(hx, std::max(0.0, row_slack));
        b.x_lo[i] = std::max(0.0, c[i][0] - hx);
        b.x_hi[i] = std::min(geom.width, c[i][0] + hx);
        b.y_lo[i] = std::max(0.0, c[i][1] - hy);
        b.y_hi[i] = std::min(geom.height, c[i][1] + hy);
        // Grid-align the bounds inward so snapped points stay inside.
        b.x_lo[i] = from_grid(static_cast<long>(std::ceil(b.x_lo[i] / geom.grid - 1e-9)), geom.grid);
        b.x_hi[i] = from_grid(static_cast<long>(std::floor(b.x_hi[i] / geom.grid + 1e-9)), geom.grid);
        b.y_lo[i] = from_grid(static_cast<long>(std::ceil(b.y_lo[i] / geom.grid - 1e-9)), geom.grid);
        b.y_hi[i] = from_grid(static_cast<long>(std::floor(b.y_hi[i] / geom.grid + 1e-9)), geom.grid);
        b.x_lo[i] = std::min(b.x_lo[i], c[i][0]);
        b.x_hi[i] = std::max(b.x_hi[i], c[i][0]);
        b.y_lo[i] = std::min(b.y_lo[i], c[i][1]);
        b.y_hi[i] = std::max(b.y_hi[i], c[i][1]);
    }
    return b;
}

bool repair(std::vector<std::array<double, 2>>& c, const HardwareGeometry& geom, int max_passes) {
    const int n = static_cast<int>(c.size());
    const double eps = 1e-9;
    for (int pass = 0; pass < max_passes; ++pass) {
        bool changed = false;
        // Rows: offsets strictly inside (0, d_row) either merge or spread.
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double dy = c[i][1] - c[j][1];
                const double ady = std::abs(dy);
                if (ady <= eps || ady >= geom.d_row - eps) continue;
                if (ady <= geom.d_row / 2.0) {
                    const double ym = snap((c[i][1] + c[j][1]) / 2.0, geom.grid);
                    c[i][1] = ym;
                    c[j][1] = ym;
                } else {
                    const double need = (geom.d_row - ady) / 2.0 + geom.grid;
                    if (dy > 0) {
                        c[i][1] = snap(c[i][1] + need, geom.grid);
                        c[j][1] = snap(c[j][1] - need, geom.grid);
                    } else {
                        c[i][1] = snap(c[i][1] - need, geom.grid);
                        c[j][1] = snap(c[j][1] + need, geom.grid);
                    }
                }
                changed = true;
            }
        // Spacing: push along x, which cannot disturb the row structure.
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double dy = std::abs(c[i][1] - c[j][1]);
                if (dy >= geom.d_min) continue;
                const double dist = std::hypot(c[i][0] - c[j][0], dy);
                if (dist >= geom.d_min - eps) continue;
                const double need_dx = std::sqrt(geom.d_min * geom.d_min - dy * dy) + geom.grid;
                const double have_dx = std::abs(c[i][0] - c[j][0]);
                const double shift = (need_dx - have_dx) / 2.0 + geom.grid;
                int lo = i, hi = j;
                if (c[lo][0] > c[hi][0] || (c[lo][0] == c[hi][0] && lo > hi)) std::swap(lo, hi);
                c[lo][0] = snap(c[lo][0] - shift, geom.grid);
                c[hi][0] = snap(c[hi][0] + shift, geom.grid);
                changed = true;
            }
        for (int i = 0; i < n; ++i) {
            const double nx = std::clamp(c[i][0], 0.0, geom.width);
            const double ny = std::clamp(c[i][1], 0.0, geom.height);
            if (nx != c[i][0] || ny != c[i][1]) {
                c[i][0] = snap(nx, geom.grid);
                c[i][1] = snap(ny, geom.grid);
                changed = true;
            }
        }
        if (!changed) return true;
    }
    Layout probe;
    probe.coords = c;
    return hard_violations(probe).empty();
}

}  // namespace

RefineResult refine_layout(const WeightedGraph& g, const Layout& in, const RefineOptions& opts) {
    require(in.size() == g.num_vertices(), errc::contract, "layout does not match the graph");
    const HardwareGeometry geom = in.geom;
    RefineResult res;
    res.layout.geom = geom;
    const int n = in.size();
    if (n == 0) {
        res.success = true;
        return res;
    }

    auto c = in.coords;
    // Translate the drawing's corner to the origin, then snap.
    double lo_x = c[0][0], lo_y = c[0][1];
    for (const auto& p : c) {
        lo_x = std::min(lo_x, p[0]);
        lo_y = std::min(lo_y, p[1]);
    }
    for (auto& p : c) {
        p[0] = snap(std::clamp(p[0] - lo_x, 0.0, geom.width), geom.grid);
        p[1] = snap(std::clamp(p[1] - lo_y, 0.0, geom.height), geom.grid);
    }

    if (!repair(c, geom, opts.max_repair_passes)) {
        res.layout.coords = c;
        res.violations = hard_violations(res.layout);
        res.success = false;
        return res;
    }

    const Boxes box = safe_boxes(c, geom);
    const int dim = 2 * n;
    auto unpack = [&](const std::vector<double>& x) {
        std::vector<std::array<double, 2>> cc(n);
        for (int i = 0; i < n; ++i) cc[i] = {x[2 * i], x[2 * i + 1]};
        return cc;
    };
    auto project = [&](std::vector<double>& x) {
        for (int i = 0; i < n; ++i) {
            x[2 * i] = std::clamp(x[2 * i], box.x_lo[i], box.x_hi[i]);
            x[2 * i + 1] = std::clamp(x[2 * i + 1], box.y_lo[i], box.y_hi[i]);
        }
    };
    auto eval = [&](const std::vector<double>& x, std::vector<double>* grad_out) {
        const auto cc = unpack(x);
        if (grad_out) {
            const auto gr = margin_grad(g, cc, geom.d_adj);
            grad_out->resize(dim);
            for (int i = 0; i < n; ++i) {
                (*grad_out)[2 * i] = gr[i][0];
                (*grad_out)[2 * i + 1] = gr[i][1];
            }
        }
        return margin_loss(g, cc, geom.d_adj);
    };

    std::vector<double> x(dim);
    for (int i = 0; i < n; ++i) {
        x[2 * i] = c[i][0];
        x[2 * i + 1] = c[i][1];
    }
    std::vector<double> grad;
    double f = eval(x, &grad);

    // Projected L-BFGS with monotone backtracking.
    std::deque<std::vector<double>> hist_s, hist_y;
    std::deque<double> hist_rho;
    int iters = 0;
    for (; iters < opts.max_iters; ++iters) {
        // Projected-gradient stationarity check.
        double pg = 0.0;
        for (int d = 0; d < dim; ++d) {
            double step = x[d] - grad[d];
            const int i = d / 2;
            step = (d % 2 == 0) ? std::clamp(step, box.x_lo[i], box.x_hi[i])
                                : std::clamp(step, box.y_lo[i], box.y_hi[i]);
            pg = std::max(pg, std::abs(step - x[d]));
        }
        if (pg < 1e-10) break;

        // Two-loop recursion.
        std::vector<double> dir = grad;
        std::vector<double> alpha(hist_s.size());
        for (int h = static_cast<int>(hist_s.size()) - 1; h >= 0; --h) {
            double a = 0.0;
            for (int d = 0; d < dim; ++d) a += hist_s[h][d] * dir[d];
            a *= hist_rho[h];
            alpha[h] = a;
            for (int d = 0; d < dim; ++d) dir[d] -= a * hist_y[h][d];
        }
        if (!hist_s.empty()) {
            double sy = 0.0, yy = 0.0;
            for (int d = 0; d < dim; ++d) {
                sy += hist_s.back()[d] * hist_y.back()[d];
                yy += hist_y.back()[d] * hist_y.back()[d];
            }
            const double gamma = sy / std::max(yy, 1e-300);
            for (auto& v : dir) v *= gamma;
        }
        for (std::size_t h = 0; h < hist_s.size(); ++h) {
            double beta = 0.0;
            for (int d = 0; d < dim; ++d) beta += hist_y[h][d] * dir[d];
            beta *= hist_rho[h];
            for (int d = 0; d < dim; ++d) dir[d] += hist_s[h][d] * (alpha[h] - beta);
        }
        for (auto& v : dir) v = -v;

        double step = 1.0;
        bool improved = false;
        std::vector<double> x_new;
        double f_new = f;
        for (int bt = 0; bt < 30; ++bt) {
            x_new = x;
            for (int d = 0; d < dim; ++d) x_new[d] += step * dir[d];
            project(x_new);
            f_new = eval(x_new, nullptr);
            if (f_new < f - 1e-12) {
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;

        std::vector<double> grad_new;
        eval(x_new, &grad_new);
        std::vector<double> s(dim), yv(dim);
        double sy = 0.0;
        for (int d = 0; d < dim; ++d) {
            s[d] = x_new[d] - x[d];
            yv[d] = grad_new[d] - grad[d];
            sy += s[d] * yv[d];
        }
        if (sy > 1e-12) {
            hist_s.push_back(std::move(s));
            hist_y.push_back(std::move(yv));
            hist_rho.push_back(1.0 / sy);
            if (static_cast<int>(hist_s.size()) > opts.memory) {
                hist_s.pop_front();
                hist_y.pop_front();
                hist_rho.pop_front();
            }
        }
        x = std::move(x_new);
        grad = std::move(grad_new);
        f = f_new;
    }

    res.layout.coords.resize(n);
    for (int i = 0; i < n; ++i) {
        double sx = snap(x[2 * i], geom.grid);
        double sy = snap(x[2 * i + 1], geom.grid);
        sx = std::clamp(sx, box.x_lo[i], box.x_hi[i]);
        sy = std::clamp(sy, box.y_lo[i], box.y_hi[i]);
        res.layout.coords[i] = {sx, sy};
    }
    res.iterations = iters;
    res.violations = hard_violations(res.layout);
    res.success = res.violations.empty();
    return res;
}

}  // namespace stin
