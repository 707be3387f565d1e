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

#include "stin/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>

#include <json.hpp>

namespace stin {

using nlohmann::json;
using clock_type = std::chrono::steady_clock;

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::feasible: return "feasible";
        case SolveStatus::feasible_timeout: return "feasible-timeout";
        case SolveStatus::infeasible: return "infeasible";
    }
    return "unknown";
}

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// Word-array bitset big enough for any instance we solve exactly.
struct Mask {
    std::vector<std::uint64_t> w;

    explicit Mask(int n) : w((n + 63) / 64, 0) {}
    void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
    void clear(int i) { w[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1ULL; }
    bool empty() const {
        for (const auto x : w)
            if (x) return false;
        return true;
    }
    int count() const {
        int c = 0;
        for (const auto x : w) c += __builtin_popcountll(x);
        return c;
    }
    void subtract(const Mask& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
    }
    int intersect_count(const Mask& o) const {
        int c = 0;
        for (std::size_t i = 0; i < w.size(); ++i) c += __builtin_popcountll(w[i] & o.w[i]);
        return c;
    }
    template <typename F>
    void for_each(F f) const {
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint64_t x = w[i];
            while (x) {
                const int b = __builtin_ctzll(x);
                f(static_cast<int>(i * 64 + b));
                x &= x - 1;
            }
        }
    }
};

struct BnB {
    const WeightedGraph& g;
    std::vector<Mask> nbr;
    double best_weight;
    std::vector<int> best_set;
    double deadline_s;
    clock_type::time_point t0;
    bool timed_out = false;
    std::uint64_t nodes = 0;

    BnB(const WeightedGraph& gr, double budget) : g(gr), deadline_s(budget), t0(clock_type::now()) {
        const int n = g.num_vertices();
        nbr.assign(n, Mask(n));
        for (int v = 0; v < n; ++v)
            for (const int u : g.neighbors(v)) nbr[v].set(u);
    }

    void run() {
        // Greedy incumbent so the bound starts pruning immediately.
        MwisResult seed = greedy_mwis(g);
        best_weight = seed.set.objective;
        best_set = seed.set.members;
        Mask all(g.num_vertices());
        double total = 0.0;
        for (int v = 0; v < g.num_vertices(); ++v) {
            all.set(v);
            total += g.weight(v);
        }
        std::vector<int> cur;
        recurse(all, total, 0.0, cur);
    }

    void recurse(Mask cand, double cand_weight, double cur_weight, std::vector<int>& cur) {
        if (timed_out) return;
        if ((++nodes & 1023) == 0 && seconds_since(t0) > deadline_s) {
            timed_out = true;
            return;
        }
        // Vertices with no remaining neighbor can always be taken.
        bool changed = true;
        while (changed) {
            changed = false;
            int isolated = -1;
            cand.for_each([&](int v) {
                if (isolated < 0 && cand.intersect_count(nbr[v]) == 0) isolated = v;
            });
            if (isolated >= 0) {
                cand.clear(isolated);
                cand_weight -= g.weight(isolated);
                cur_weight += g.weight(isolated);
                cur.push_back(isolated);
                changed = true;
            }
        }
        if (cur_weight > best_weight) {
            best_weight = cur_weight;
            best_set = cur;
        }
        if (cand.empty() || cur_weight + cand_weight <= best_weight) return;
        // Branch on the best weight-to-degree vertex in the residual graph.
        int pick = -1;
        double pick_score = -1.0;
        cand.for_each([&](int v) {
            const double score = g.weight(v) / (cand.intersect_count(nbr[v]) + 1.0);
            if (score > pick_score) {
                pick_score = score;
                pick = v;
            }
        });
        const std::size_t mark = cur.size();
        // Include pick.
        {
            Mask next = cand;
            double nw = cand_weight - g.weight(pick);
            next.clear(pick);
            nbr[pick].for_each([&](int u) {
                if (next.test(u)) {
                    next.clear(u);
                    nw -= g.weight(u);
                }
            });
            cur.push_back(pick);
            recurse(next, nw, cur_weight + g.weight(pick), cur);
            cur.resize(mark);
        }
        // Exclude pick.
        {
            Mask next = cand;
            next.clear(pick);
            recurse(next, cand_weight - g.weight(pick), cur_weight, cur);
            cur.resize(mark);
        }
    }
};

}  // namespace

MwisResult mwis_bruteforce(const WeightedGraph& g) {
    const auto t0 = clock_type::now();
    const int n = g.num_vertices();
    require(n <= 25, errc::size_limit,
            "exhaustive search is limited to 25 vertices, got " + std::to_string(n));
    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& [u, v] : g.edges()) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    double best = 0.0;
    std::uint32_t best_mask = 0;
    // Depth-first over independent subsets only.
    struct Frame { int v; std::uint32_t mask; double weight; };
    std::vector<Frame> stack;
    stack.push_back({0, 0, 0.0});
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.weight > best) {
            best = f.weight;
            best_mask = f.mask;
        }
        for (int v = f.v; v < n; ++v) {
            if (adj[v] & f.mask) continue;
            stack.push_back({v + 1, f.mask | (1u << v), f.weight + g.weight(v)});
        }
    }
    MwisResult r;
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
        if (best_mask & (1u << v)) members.push_back(v);
    r.set = make_vertex_set(g, std::move(members));
    r.status = SolveStatus::optimal;
    r.elapsed_s = seconds_since(t0);
    return r;
}

MwisResult mwis_exact(const WeightedGraph& g, double budget_s) {
    const auto t0 = clock_type::now();
    require(budget_s > 0.0, errc::contract, "budget must be positive");
    BnB bnb(g, budget_s);
    bnb.run();
    MwisResult r;
    r.set = make_vertex_set(g, bnb.best_set);
    r.status = bnb.timed_out ? SolveStatus::feasible_timeout : SolveStatus::optimal;
    r.elapsed_s = seconds_since(t0);
    r.nodes = bnb.nodes;
    return r;
}

MwisResult greedy_mwis(const WeightedGraph& g) {
    const auto t0 = clock_type::now();
    const int n = g.num_vertices();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (g.weight(a) != g.weight(b)) return g.weight(a) > g.weight(b);
        return a < b;
    });
    std::vector<char> blocked(n, 0);
    std::vector<int> members;
    for (const int v : order) {
        if (blocked[v]) continue;
        members.push_back(v);
        for (const int u : g.neighbors(v)) blocked[u] = 1;
    }
    MwisResult r;
    r.set = make_vertex_set(g, std::move(members));
    r.status = SolveStatus::feasible;
    r.elapsed_s = seconds_since(t0);
    return r;
}

namespace {

// Dinic max-flow on a small layered network.
struct Dinic {
    struct Edge { int to, rev; int cap; };
    std::vector<std::vector<Edge>> adj;
    std::vector<int> level, it;

    explicit Dinic(int n) : adj(n), level(n), it(n) {}

    void add_edge(int u, int v, int cap) {
        adj[u].push_back({v, static_cast<int>(adj[v].size()), cap});
        adj[v].push_back({u, static_cast<int>(adj[u].size()) - 1, 0});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const auto& e : adj[u])
                if (e.cap > 0 && level[e.to] < 0) {
                    level[e.to] = level[u] + 1;
                    q.push(e.to);
                }
        }
        return level[t] >= 0;
    }

    int dfs(int u, int t, int f) {
        if (u == t) return f;
        for (int& i = it[u]; i < static_cast<int>(adj[u].size()); ++i) {
            Edge& e = adj[u][i];
            if (e.cap > 0 && level[e.to] == level[u] + 1) {
                const int d = dfs(e.to, t, std::min(f, e.cap));
                if (d > 0) {
                    e.cap -= d;
                    adj[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    int max_flow(int s, int t) {
        int flow = 0;
        while (bfs(s, t)) {
            std::fill(it.begin(), it.end(), 0);
            int f;
            while ((f = dfs(s, t, 1 << 30)) > 0) flow += f;
        }
        return flow;
    }
};

struct GspNetwork {
    std::vector<int> sats;                       // satellite ids in play
    std::vector<std::vector<int>> links_of_sat;  // gateway indices per satellite position
};

GspNetwork gsp_network(const BipartiteInstance& b) {
    GspNetwork net;
    net.sats = b.satellites;
    std::sort(net.sats.begin(), net.sats.end());
    net.links_of_sat.assign(net.sats.size(), {});
    for (const auto& [s, g] : b.links) {
        const auto it = std::lower_bound(net.sats.begin(), net.sats.end(), s);
        if (it == net.sats.end() || *it != s) continue;  // link to a satellite not in play
        net.links_of_sat[it - net.sats.begin()].push_back(g);
    }
    for (auto& ls : net.links_of_sat) {
        std::sort(ls.begin(), ls.end());
        ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    }
    return net;
}

// Runs the flow check; fills assignment (satellite id -> gateway) when asked.
bool gsp_flow_feasible(const GspNetwork& net, int num_gateways, int load,
                       std::vector<std::pair<int, int>>* assignment) {
    const int S = static_cast<int>(net.sats.size());
    const int source = 0, sink = 1 + S + num_gateways;
    Dinic d(sink + 1);
    for (int i = 0; i < S; ++i) {
        d.add_edge(source, 1 + i, 1);
        for (const int gw : net.links_of_sat[i]) d.add_edge(1 + i, 1 + S + gw, 1);
    }
    for (int gw = 0; gw < num_gateways; ++gw) d.add_edge(1 + S + gw, sink, load);
    const int flow = d.max_flow(source, sink);
    if (flow != S) return false;
    if (assignment) {
        assignment->clear();
        for (int i = 0; i < S; ++i)
            for (const auto& e : d.adj[1 + i])
                if (e.to >= 1 + S && e.to < sink && e.cap == 0)
                    assignment->emplace_back(net.sats[i], e.to - 1 - S);
        std::sort(assignment->begin(), assignment->end());
    }
    return true;
}

}  // namespace

bool gsp_feasible(const BipartiteInstance& b, int load) {
    require(load >= 0, errc::contract, "load bound must be non-negative");
    const GspNetwork net = gsp_network(b);
    for (const auto& ls : net.links_of_sat)
        if (ls.empty()) return false;
    if (net.sats.empty()) return true;
    if (load == 0) return false;
    return gsp_flow_feasible(net, static_cast<int>(b.gateways.size()), load, nullptr);
}

GspResult gsp_solve(const BipartiteInstance& b) {
    const auto t0 = clock_type::now();
    GspResult r;
    const GspNetwork net = gsp_network(b);
    for (std::size_t i = 0; i < net.sats.size(); ++i)
        if (net.links_of_sat[i].empty()) r.unservable.push_back(net.sats[i]);
    if (!r.unservable.empty()) {
        r.status = SolveStatus::infeasible;
        r.elapsed_s = seconds_since(t0);
        return r;
    }
    const int S = static_cast<int>(net.sats.size());
    const int G = static_cast<int>(b.gateways.size());
    if (S == 0) {
        r.load = 0;
        r.status = SolveStatus::optimal;
        r.elapsed_s = seconds_since(t0);
        return r;
    }
    require(G > 0, errc::invalid, "instance has satellites but no gateways");
    int lo = (S + G - 1) / G, hi = S;
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (gsp_flow_feasible(net, G, mid, nullptr))
            hi = mid;
        else
            lo = mid + 1;
    }
    gsp_flow_feasible(net, G, lo, &r.assignment);
    r.load = lo;
    r.status = SolveStatus::optimal;
    r.elapsed_s = seconds_since(t0);
    return r;
}

GspResult gsp_bruteforce(const BipartiteInstance& b) {
    const auto t0 = clock_type::now();
    const GspNetwork net = gsp_network(b);
    const int S = static_cast<int>(net.sats.size());
    const int G = static_cast<int>(b.gateways.size());
    require(S <= 8 && G <= 5, errc::size_limit, "exhaustive assignment needs |S| <= 8, |G| <= 5");
    GspResult r;
    for (std::size_t i = 0; i < net.sats.size(); ++i)
        if (net.links_of_sat[i].empty()) r.unservable.push_back(net.sats[i]);
    if (!r.unservable.empty()) {
        r.status = SolveStatus::infeasible;
        r.elapsed_s = seconds_since(t0);
        return r;
    }
    if (S == 0) {
        r.load = 0;
        r.status = SolveStatus::optimal;
        r.elapsed_s = seconds_since(t0);
        return r;
    }
    std::vector<int> choice(S, 0), best_choice;
    int best = S + 1;
    std::vector<int> count(G, 0);
    // Odometer over all link-respecting assignments.
    std::function<void(int)> rec = [&](int i) {
        if (i == S) {
            const int m = *std::max_element(count.begin(), count.begin() + G);
            if (m < best) {
                best = m;
                best_choice = choice;
            }
            return;
        }
        for (const int gw : net.links_of_sat[i]) {
            ++count[gw];
            choice[i] = gw;
            rec(i + 1);
            --count[gw];
        }
    };
    rec(0);
    r.load = best;
    for (int i = 0; i < S; ++i) r.assignment.emplace_back(net.sats[i], best_choice[i]);
    r.status = SolveStatus::optimal;
    r.elapsed_s = seconds_since(t0);
    return r;
}

namespace {

// Greedy clique around the highest-degree vertices; used as an infeasibility
// witness when the band budget is below the chromatic number.
std::vector<int> greedy_clique(const ColoringInstance& c) {
    const int n = c.num_paths;
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    std::vector<int> deg(n, 0);
    for (const auto& [p, q] : c.conflicts) {
        adj[p][q] = adj[q][p] = 1;
        ++deg[p];
        ++deg[q];
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (deg[a] != deg[b]) return deg[a] > deg[b];
        return a < b;
    });
    std::vector<int> best;
    for (const int seed : order) {
        std::vector<int> clique{seed};
        for (const int v : order) {
            if (v == seed) continue;
            bool ok = true;
            for (const int u : clique)
                if (!adj[v][u]) {
                    ok = false;
                    break;
                }
            if (ok) clique.push_back(v);
        }
        if (clique.size() > best.size()) best = clique;
    }
    std::sort(best.begin(), best.end());
    return best;
}

struct SapSearch {
    const ColoringInstance& c;
    int n;
    std::vector<std::vector<int>> nbrs;
    std::vector<int> color;  // -1 = unassigned

    explicit SapSearch(const ColoringInstance& inst) : c(inst), n(inst.num_paths) {
        nbrs.assign(n, {});
        for (const auto& [p, q] : c.conflicts) {
            nbrs[p].push_back(q);
            nbrs[q].push_back(p);
        }
        color.assign(n, -1);
    }

    int pick_most_saturated() const {
        int pick = -1, pick_sat = -1, pick_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (color[v] >= 0) continue;
            std::vector<char> seen(n + 1, 0);
            int sat = 0;
            for (const int u : nbrs[v])
                if (color[u] >= 0 && !seen[color[u]]) {
                    seen[color[u]] = 1;
                    ++sat;
                }
            const int deg = static_cast<int>(nbrs[v].size());
            if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
                pick = v;
                pick_sat = sat;
                pick_deg = deg;
            }
        }
        return pick;
    }

    bool color_ok(int v, int col) const {
        for (const int u : nbrs[v])
            if (color[u] == col) return false;
        return true;
    }

    // Decision search: can the conflict graph be colored with k colors?
    bool colorable(int assigned, int used, int k) {
        if (assigned == n) return true;
        const int v = pick_most_saturated();
        const int limit = std::min(k, used + 1);  // new colors in index order only
        for (int col = 0; col < limit; ++col) {
            if (!color_ok(v, col)) continue;
            color[v] = col;
            if (colorable(assigned + 1, std::max(used, col + 1), k)) return true;
            color[v] = -1;
        }
        return false;
    }
};

struct SapCostSearch {
    const ColoringInstance& c;
    int n, max_distinct, num_bands;
    std::vector<std::vector<int>> nbrs;
    std::vector<int> order;     // static: degree-descending
    std::vector<int> color;     // band positions
    std::vector<double> tail_min;  // min assignment cost of paths order[i..]
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best;

    SapCostSearch(const ColoringInstance& inst, int distinct_cap)
        : c(inst), n(inst.num_paths), max_distinct(distinct_cap),
          num_bands(static_cast<int>(inst.bands.size())) {
        nbrs.assign(n, {});
        for (const auto& [p, q] : c.conflicts) {
            nbrs[p].push_back(q);
            nbrs[q].push_back(p);
        }
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (nbrs[a].size() != nbrs[b].size()) return nbrs[a].size() > nbrs[b].size();
            return a < b;
        });
        color.assign(n, -1);
        tail_min.assign(n + 1, 0.0);
        for (int i = n - 1; i >= 0; --i) {
            double m = std::numeric_limits<double>::infinity();
            for (int b = 0; b < num_bands; ++b) m = std::min(m, c.cost(order[i], b));
            tail_min[i] = tail_min[i + 1] + m;
        }
    }

    void run(int i, double cost, std::uint64_t used_mask, int used) {
        if (cost + tail_min[i] >= best_cost) return;
        if (i == n) {
            best_cost = cost;
            best = color;
            return;
        }
        const int v = order[i];
        for (int b = 0; b < num_bands; ++b) {
            const bool fresh = !(used_mask >> b & 1ULL);
            if (fresh && used == max_distinct) continue;
            bool ok = true;
            for (const int u : nbrs[v])
                if (color[u] == b) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            color[v] = b;
            run(i + 1, cost + c.cost(v, b), used_mask | (1ULL << b), used + (fresh ? 1 : 0));
            color[v] = -1;
        }
    }
};

}  // namespace

SapResult sap_solve(const ColoringInstance& c, SapMode mode) {
    const auto t0 = clock_type::now();
    const int n = c.num_paths;
    const int k = static_cast<int>(c.bands.size());
    require(k <= 64, errc::size_limit, "at most 64 bands supported");
    SapResult r;
    if (n == 0) {
        r.status = SolveStatus::optimal;
        r.elapsed_s = seconds_since(t0);
        return r;
    }
    require(k > 0, errc::invalid, "instance offers no bands");

    if (mode == SapMode::dsatur) {
        SapSearch s(c);
        int used = 0;
        for (int step = 0; step < n; ++step) {
            const int v = s.pick_most_saturated();
            int col = 0;
            while (col < k && !s.color_ok(v, col)) ++col;
            if (col == k) {
                r.status = SolveStatus::infeasible;
                r.elapsed_s = seconds_since(t0);
                return r;
            }
            s.color[v] = col;
            used = std::max(used, col + 1);
        }
        r.band_of_path = s.color;
        r.status = SolveStatus::feasible;
    } else {
        require(n <= 30, errc::size_limit,
                "exact band assignment is limited to 30 paths, got " + std::to_string(n));
        // Fewest distinct bands first: grow k until the decision search says yes.
        const std::vector<int> clique = greedy_clique(c);
        int chi = -1;
        for (int kk = std::max<std::size_t>(1, clique.size()); kk <= k; ++kk) {
            SapSearch s(c);
            if (s.colorable(0, 0, kk)) {
                chi = kk;
                break;
            }
        }
        if (chi < 0) {
            r.status = SolveStatus::infeasible;
            if (static_cast<int>(clique.size()) > k) r.conflict_clique = clique;
            r.elapsed_s = seconds_since(t0);
            return r;
        }
        SapCostSearch cs(c, chi);
        cs.run(0, 0.0, 0, 0);
        r.band_of_path = cs.best;
        r.status = SolveStatus::optimal;
    }

    std::uint64_t used_mask = 0;
    r.total_cost = 0.0;
    for (int p = 0; p < n; ++p) {
        used_mask |= 1ULL << r.band_of_path[p];
        r.total_cost += c.cost(p, r.band_of_path[p]);
    }
    r.distinct_bands = __builtin_popcountll(used_mask);
    r.elapsed_s = seconds_since(t0);
    return r;
}

std::string mwis_result_to_json(const MwisResult& r) {
    json j;
    j["objective"] = r.set.objective;
    j["status"] = to_string(r.status);
    j["solution"] = {{"members", r.set.members}};
    j["elapsed_s"] = r.elapsed_s;
    j["nodes"] = r.nodes;
    return j.dump(2) + "\n";
}

std::string gsp_result_to_json(const GspResult& r) {
    json j;
    j["objective"] = r.load;
    j["status"] = to_string(r.status);
    json asg = json::array();
    for (const auto& [s, g] : r.assignment) asg.push_back(json::array({s, g}));
    j["solution"] = {{"assignment", asg}};
    if (!r.unservable.empty()) j["solution"]["unservable"] = r.unservable;
    j["elapsed_s"] = r.elapsed_s;
    return j.dump(2) + "\n";
}

std::string sap_result_to_json(const SapResult& r) {
    json j;
    j["objective"] = r.total_cost;
    j["bands_used"] = r.distinct_bands;
    j["status"] = to_string(r.status);
    j["solution"] = {{"band_of_path", r.band_of_path}};
    if (!r.conflict_clique.empty()) j["solution"]["conflict_clique"] = r.conflict_clique;
    j["elapsed_s"] = r.elapsed_s;
    return j.dump(2) + "\n";
}

}  // namespace stin
