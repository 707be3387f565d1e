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

#include "stin/den.hpp"

#include <algorithm>
#include <cmath>

#include "stin/elf.hpp"

namespace stin {

namespace {

struct Dense {
    int in = 0, out = 0;
    std::vector<double> w, b;      // w is out x in, row-major
    std::vector<double> gw, gb;    // gradients
    std::vector<double> mw, vw, mb, vb;  // AdamW state

    Dense(int in_, int out_, Rng& rng) : in(in_), out(out_) {
        w.resize(static_cast<std::size_t>(in) * out);
        const double sd = std::sqrt(2.0 / in);
        for (auto& x : w) x = rng.normal() * sd;
        b.assign(out, 0.0);
        gw.assign(w.size(), 0.0);
        gb.assign(out, 0.0);
        mw.assign(w.size(), 0.0);
        vw.assign(w.size(), 0.0);
        mb.assign(out, 0.0);
        vb.assign(out, 0.0);
    }

    void forward(const std::vector<double>& x, std::vector<double>& z) const {
        z.assign(out, 0.0);
        for (int o = 0; o < out; ++o) {
            double acc = b[o];
            const double* row = &w[static_cast<std::size_t>(o) * in];
            for (int i = 0; i < in; ++i) acc += row[i] * x[i];
            z[o] = acc;
        }
    }

    // dz -> accumulates gw/gb and returns dx.
    void backward(const std::vector<double>& x, const std::vector<double>& dz,
                  std::vector<double>& dx) {
        dx.assign(in, 0.0);
        for (int o = 0; o < out; ++o) {
            const double g = dz[o];
            gb[o] += g;
            double* grow = &gw[static_cast<std::size_t>(o) * in];
            const double* row = &w[static_cast<std::size_t>(o) * in];
            for (int i = 0; i < in; ++i) {
                grow[i] += g * x[i];
                dx[i] += g * row[i];
            }
        }
    }

    void adamw(double lr, double wd, double beta1, double beta2, double eps, int t) {
        const double c1 = 1.0 - std::pow(beta1, t);
        const double c2 = 1.0 - std::pow(beta2, t);
        auto step = [&](std::vector<double>& p, std::vector<double>& g, std::vector<double>& m,
                        std::vector<double>& v, bool decay) {
            for (std::size_t i = 0; i < p.size(); ++i) {
                m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
                v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
                const double mhat = m[i] / c1;
                const double vhat = v[i] / c2;
                p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
                if (decay) p[i] -= lr * wd * p[i];
                g[i] = 0.0;
            }
        };
        step(w, gw, mw, vw, true);
        step(b, gb, mb, vb, false);  // biases exempt from decay
    }
};

constexpr int kHidden[] = {64, 36, 18, 9, 18, 36, 64};

}  // namespace

DenResult den_train(const WeightedGraph& g, const Layout& init, std::uint64_t seed,
                    const DenOptions& opts) {
    require(init.size() == g.num_vertices(), errc::contract,
            "seed layout does not match the graph");
    const int n = g.num_vertices();
    const HardwareGeometry geom = init.geom;
    DenResult res;
    res.layout.geom = geom;
    if (n == 0) return res;

    Rng rng(seed);
    const int dim = 2 * n;
    std::vector<int> widths{dim};
    for (const int h : kHidden) widths.push_back(h);
    widths.push_back(dim);
    std::vector<Dense> layers;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l)
        layers.emplace_back(widths[l], widths[l + 1], rng);
    const int L = static_cast<int>(layers.size());

    auto out_scale = [&](int c) { return (c % 2 == 0 ? geom.width : geom.height) / 2.0; };

    // Input: the seeding drawing, centered on the register midpoint and
    // normalized per axis into [-1, 1]. Feeding raw micrometer coordinates
    // saturates the output tanh (pre-activations inherit the input scale
    // under variance-preserving init) and training never leaves the corners.
    std::vector<double> input(dim);
    for (int i = 0; i < n; ++i) {
        input[2 * i] = (init.coords[i][0] - geom.width / 2.0) / out_scale(0);
        input[2 * i + 1] = (init.coords[i][1] - geom.height / 2.0) / out_scale(1);
    }

    auto coords_of = [&](const std::vector<double>& out) {
        std::vector<std::array<double, 2>> c(n);
        for (int i = 0; i < n; ++i) c[i] = {out[2 * i], out[2 * i + 1]};
        return c;
    };

    std::vector<std::vector<double>> act(L + 1), pre(L);
    std::vector<std::vector<char>> mask(L);

    // forward pass; train=true applies inverted dropout to hidden activations
    auto forward = [&](bool train) {
        act[0] = input;
        for (int l = 0; l < L; ++l) {
            layers[l].forward(act[l], pre[l]);
            act[l + 1] = pre[l];
            if (l + 1 < L) {
                for (auto& v : act[l + 1]) v = std::max(0.0, v);
                mask[l].assign(act[l + 1].size(), 1);
                if (train && opts.dropout > 0.0) {
                    const double keep = 1.0 - opts.dropout;
                    for (std::size_t i = 0; i < act[l + 1].size(); ++i) {
                        if (rng.uniform() < opts.dropout) {
                            mask[l][i] = 0;
                            act[l + 1][i] = 0.0;
                        } else {
                            act[l + 1][i] /= keep;
                        }
                    }
                }
            } else {
                for (std::size_t i = 0; i < act[l + 1].size(); ++i)
                    act[l + 1][i] = out_scale(static_cast<int>(i)) * std::tanh(pre[l][i]);
            }
        }
        return act[L];
    };

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::array<double, 2>> best_coords = coords_of(forward(false));
    {
        best = elf_loss(g, best_coords, geom).total;
        // epoch 0 state counts as a candidate but not as a trace entry
    }

    int stalled = 0;
    double prev_loss = std::numeric_limits<double>::quiet_NaN();
    int epoch = 0;
    for (; epoch < opts.max_epochs; ++epoch) {
        // One AdamW step against the training-mode drawing.
        const auto train_out = forward(true);
        auto train_coords = coords_of(train_out);
        const auto cgrad = elf_grad(g, train_coords, geom);
        std::vector<double> delta(dim);
        for (int i = 0; i < n; ++i) {
            delta[2 * i] = cgrad[i][0];
            delta[2 * i + 1] = cgrad[i][1];
        }
        // Back through the scaled tanh.
        for (int c = 0; c < dim; ++c) {
            const double th = std::tanh(pre[L - 1][c]);
            delta[c] *= out_scale(c) * (1.0 - th * th);
        }
        std::vector<double> dx;
        for (int l = L - 1; l >= 0; --l) {
            layers[l].backward(act[l], delta, dx);
            delta.swap(dx);
            if (l > 0) {
                const double keep = 1.0 - opts.dropout;
                for (std::size_t i = 0; i < delta.size(); ++i) {
                    if (!mask[l - 1][i])
                        delta[i] = 0.0;
                    else if (opts.dropout > 0.0)
                        delta[i] /= keep;
                    if (pre[l - 1][i] <= 0.0) delta[i] = 0.0;
                }
            }
        }
        for (int l = 0; l < L; ++l)
            layers[l].adamw(opts.lr, opts.weight_decay, 0.9, 0.999, 1e-8, epoch + 1);

        // Dropout-free evaluation drives model selection and stopping.
        const auto inf_out = forward(false);
        auto inf_coords = coords_of(inf_out);
        const double loss = elf_loss(g, inf_coords, geom).total;
        res.loss_trace.push_back(loss);
        if (loss < best) {
            best = loss;
            best_coords = std::move(inf_coords);
        }
        if (!std::isnan(prev_loss) && std::abs(loss - prev_loss) < opts.stall_eps) {
            if (++stalled >= opts.stall_window) {
                ++epoch;
                break;
            }
        } else {
            stalled = 0;
        }
        prev_loss = loss;
    }

    res.epochs_run = epoch;
    res.best_loss = best;
    res.layout.coords.resize(n);
    for (int i = 0; i < n; ++i) {
        res.layout.coords[i] = {best_coords[i][0] + geom.width / 2.0,
                                best_coords[i][1] + geom.height / 2.0};
    }
    return res;
}

}  // namespace stin
