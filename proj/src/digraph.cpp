#include <rlab/digraph.hpp>
#include <rlab/error.hpp>
#include <rlab/rng.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <set>

using std::pair;
using std::vector;

namespace rlab
{
    Digraph::Digraph(int n, vector<pair<int, int>> edges) :
        _n(n),
        _edges(std::move(edges)),
        _out(n),
        _in(n)
    {
        require(n >= 0, ErrorKind::ParseError, "negative vertex count");
        std::set<pair<int, int>> seen;
        for (auto [u, v] : _edges) {
            require(u >= 0 && u < n && v >= 0 && v < n, ErrorKind::ParseError,
                    "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
            require(u != v, ErrorKind::ParseError, "self-loop at " + std::to_string(u));
            require(! seen.contains({u, v}), ErrorKind::ParseError, "repeated edge");
            require(! seen.contains({v, u}), ErrorKind::ParseError, "antiparallel edge pair");
            seen.insert({u, v});
            _out[u].push_back(v);
            _in[v].push_back(u);
        }
    }

    auto Digraph::has_edge(int u, int v) const -> bool
    {
        return std::find(_out[u].begin(), _out[u].end(), v) != _out[u].end();
    }

    auto Layering::layers() const -> vector<vector<int>>
    {
        vector<vector<int>> result(H + 1);
        for (int v = 0; v < int(layer_of.size()); ++v)
            result[layer_of[v]].push_back(v);
        return result;
    }

    auto Layering::layer_sizes() const -> vector<int>
    {
        vector<int> sizes(H, 0);
        for (int l : layer_of)
            ++sizes[l - 1];
        return sizes;
    }

    auto validate_acyclic(const Digraph & g) -> vector<int>
    {
        vector<int> indeg(g.n());
        for (int v = 0; v < g.n(); ++v)
            indeg[v] = int(g.in_adj(v).size());

        std::deque<int> queue;
        for (int v = 0; v < g.n(); ++v)
            if (indeg[v] == 0)
                queue.push_back(v);

        vector<int> order;
        while (! queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            order.push_back(u);
            for (int v : g.out_adj(u))
                if (--indeg[v] == 0)
                    queue.push_back(v);
        }
        if (int(order.size()) == g.n())
            return order;

        // every unpeeled vertex keeps an unpeeled in-neighbour, so walking backwards must revisit
        int start = -1;
        for (int v = 0; v < g.n(); ++v)
            if (indeg[v] > 0) {
                start = v;
                break;
            }
        vector<int> seen_at(g.n(), -1), walk;
        int cur = start;
        while (seen_at[cur] < 0) {
            seen_at[cur] = int(walk.size());
            walk.push_back(cur);
            for (int u : g.in_adj(cur))
                if (indeg[u] > 0) {
                    cur = u;
                    break;
                }
        }
        vector<int> cycle(walk.begin() + seen_at[cur], walk.end());
        std::reverse(cycle.begin(), cycle.end());
        std::string text;
        for (int v : cycle)
            text += (text.empty() ? "" : " ") + std::to_string(v);
        fail(ErrorKind::CycleFound, "cycle through " + text);
    }

    auto grid_digraph(int d, int k, long vertex_cap) -> pair<Digraph, Layering>
    {
        require(d >= 1 && k >= 1, ErrorKind::InfeasibleParams, "grid needs d >= 1 and k >= 1");
        long n = 1;
        for (int i = 0; i < d; ++i) {
            n *= k;
            require(n <= vertex_cap, ErrorKind::SizeOverflow, "k^d exceeds the vertex cap");
        }

        vector<pair<int, int>> edges;
        Layering layering;
        layering.layer_of.assign(n, 0);
        for (long x = 0; x < n; ++x) {
            long rest = x, stride = 1;
            int sum = 0;
            for (int i = 0; i < d; ++i) {
                int coord = int(rest % k);
                rest /= k;
                sum += coord;
                if (coord + 1 < k)
                    edges.emplace_back(int(x), int(x + stride));
                stride *= k;
            }
            layering.layer_of[x] = sum + 1;
        }
        layering.H = d * (k - 1) + 1;
        layering.w = 1;
        return {Digraph(int(n), std::move(edges)), std::move(layering)};
    }

    auto hypercube_digraph(int d, long vertex_cap) -> pair<Digraph, Layering>
    {
        return grid_digraph(d, 2, vertex_cap);
    }

    auto directed_path(int n) -> Digraph
    {
        vector<pair<int, int>> edges;
        for (int i = 0; i + 1 < n; ++i)
            edges.emplace_back(i, i + 1);
        return Digraph(n, std::move(edges));
    }

    auto transitive_digraph(int n) -> Digraph
    {
        vector<pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                edges.emplace_back(i, j);
        return Digraph(n, std::move(edges));
    }

    auto oriented_path(int n, std::uint64_t pattern) -> Digraph
    {
        vector<pair<int, int>> edges;
        for (int i = 0; i + 1 < n; ++i) {
            if ((pattern >> i) & 1u)
                edges.emplace_back(i, i + 1);
            else
                edges.emplace_back(i + 1, i);
        }
        return Digraph(n, std::move(edges));
    }

    auto max_edge_span(const Digraph & g, const vector<int> & layer_of) -> int
    {
        int span = 0;
        for (auto [u, v] : g.edges())
            span = std::max(span, layer_of[v] - layer_of[u]);
        return span;
    }

    auto compute_layering(const Digraph & g) -> Layering
    {
        auto order = validate_acyclic(g);
        Layering layering;
        layering.layer_of.assign(g.n(), 1);
        for (int v : order)
            for (int u : g.in_adj(v))
                layering.layer_of[v] = std::max(layering.layer_of[v], layering.layer_of[u] + 1);
        layering.H = 0;
        for (int l : layering.layer_of)
            layering.H = std::max(layering.H, l);
        layering.w = std::max(1, max_edge_span(g, layering.layer_of));
        return layering;
    }

    auto layering_valid(const Digraph & g, const Layering & layering) -> bool
    {
        if (int(layering.layer_of.size()) != g.n())
            return false;
        for (int l : layering.layer_of)
            if (l < 1 || l > layering.H)
                return false;
        for (auto [u, v] : g.edges()) {
            int span = layering.layer_of[v] - layering.layer_of[u];
            if (span < 1 || span > layering.w)
                return false;
        }
        return true;
    }

    auto min_graded_bandwidth_exact(const Digraph & g, int vertex_cap) -> BandwidthResult
    {
        require(g.n() <= vertex_cap, ErrorKind::TooLarge,
                "exact bandwidth search is capped at " + std::to_string(vertex_cap) + " vertices");
        validate_acyclic(g);

        int n = g.n();
        if (g.edges().empty()) {
            BandwidthResult result;
            result.w = 1;
            result.layering.layer_of.assign(n, 1);
            result.layering.H = n ? 1 : 0;
            result.layering.w = 1;
            return result;
        }

        // visit vertices so each one after the first of its component touches an earlier one;
        // the placement range is then bounded on both sides by placed neighbours
        vector<int> order, component_root;
        vector<bool> placed(n, false);
        for (int s = 0; s < n; ++s) {
            if (placed[s])
                continue;
            component_root.push_back(s);
            std::deque<int> queue{s};
            placed[s] = true;
            while (! queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                order.push_back(u);
                for (const auto * adj : {&g.out_adj(u), &g.in_adj(u)})
                    for (int v : *adj)
                        if (! placed[v]) {
                            placed[v] = true;
                            queue.push_back(v);
                        }
            }
        }

        const int unset = std::numeric_limits<int>::min();
        vector<int> layer(n, unset);
        std::function<bool(int, int)> place = [&](int idx, int w) -> bool {
            if (idx == n)
                return true;
            int v = order[idx];
            int lo = std::numeric_limits<int>::min() / 4, hi = std::numeric_limits<int>::max() / 4;
            bool anchored = false;
            for (int u : g.in_adj(v))
                if (layer[u] != unset) {
                    lo = std::max(lo, layer[u] + 1);
                    hi = std::min(hi, layer[u] + w);
                    anchored = true;
                }
            for (int u : g.out_adj(v))
                if (layer[u] != unset) {
                    lo = std::max(lo, layer[u] - w);
                    hi = std::min(hi, layer[u] - 1);
                    anchored = true;
                }
            if (! anchored)
                lo = hi = 0;   // translation freedom: pin each component root
            for (int l = lo; l <= hi; ++l) {
                layer[v] = l;
                if (place(idx + 1, w))
                    return true;
            }
            layer[v] = unset;
            return false;
        };

        for (int w = 1; w < n; ++w) {
            std::fill(layer.begin(), layer.end(), unset);
            if (place(0, w)) {
                BandwidthResult result;
                result.w = w;
                // shift every component so its lowest layer is 1
                vector<int> comp(n, -1);
                for (int root_idx = 0; root_idx < int(component_root.size()); ++root_idx) {
                    std::deque<int> queue{component_root[root_idx]};
                    comp[component_root[root_idx]] = root_idx;
                    while (! queue.empty()) {
                        int u = queue.front();
                        queue.pop_front();
                        for (const auto * adj : {&g.out_adj(u), &g.in_adj(u)})
                            for (int v : *adj)
                                if (comp[v] < 0) {
                                    comp[v] = root_idx;
                                    queue.push_back(v);
                                }
                    }
                }
                vector<int> low(component_root.size(), std::numeric_limits<int>::max());
                for (int v = 0; v < n; ++v)
                    low[comp[v]] = std::min(low[comp[v]], layer[v]);
                result.layering.layer_of.resize(n);
                result.layering.H = 0;
                for (int v = 0; v < n; ++v) {
                    result.layering.layer_of[v] = layer[v] - low[comp[v]] + 1;
                    result.layering.H = std::max(result.layering.H, result.layering.layer_of[v]);
                }
                result.layering.w = w;
                return result;
            }
        }
        fail(ErrorKind::CycleFound, "no layering exists");
    }

    auto degree_profile(const Digraph & g, const Layering & layering) -> DegreeProfile
    {
        require(layering_valid(g, layering), ErrorKind::LayeringMismatch, "layering does not fit the digraph");
        DegreeProfile profile;
        for (int v = 0; v < g.n(); ++v) {
            int out = int(g.out_adj(v).size()), in = int(g.in_adj(v).size());
            profile.delta = std::max(profile.delta, out + in);
            profile.delta_out = std::max(profile.delta_out, out);
            profile.delta_in = std::max(profile.delta_in, in);
        }
        int H = layering.H;
        profile.delta_in_per_layer.assign(std::max(H, 0) + 1, 0);
        for (int v = 0; v < g.n(); ++v) {
            int lv = layering.layer_of[v];
            // in-degree of v inside G[V_i u V_{i+1}] for the (at most two) windows containing lv
            for (int i : {lv - 1, lv}) {
                if (i < 1 || i > H - 1)
                    continue;
                int count = 0;
                for (int u : g.in_adj(v)) {
                    int lu = layering.layer_of[u];
                    if (lu == i || lu == i + 1)
                        ++count;
                }
                profile.delta_in_per_layer[i] = std::max(profile.delta_in_per_layer[i], count);
            }
        }
        return profile;
    }

    auto random_layered_digraph(const vector<int> & layer_sizes, int delta, int w, std::uint64_t seed)
        -> pair<Digraph, Layering>
    {
        require(delta >= 1, ErrorKind::InfeasibleDegree, "maximum degree must be at least 1");
        require(w >= 1, ErrorKind::InfeasibleDegree, "bandwidth must be at least 1");

        Layering layering;
        vector<vector<int>> members(layer_sizes.size());
        int n = 0;
        for (int i = 0; i < int(layer_sizes.size()); ++i)
            for (int c = 0; c < layer_sizes[i]; ++c) {
                members[i].push_back(n++);
                layering.layer_of.push_back(i + 1);
            }
        layering.H = int(layer_sizes.size());

        vector<pair<int, int>> candidates;
        for (int i = 0; i < int(members.size()); ++i)
            for (int j = i + 1; j <= std::min<int>(i + w, int(members.size()) - 1); ++j)
                for (int u : members[i])
                    for (int v : members[j])
                        candidates.emplace_back(u, v);

        Rng rng(seed);
        rng.shuffle(candidates);
        vector<int> degree(n, 0);
        vector<pair<int, int>> edges;
        for (auto [u, v] : candidates)
            if (degree[u] < delta && degree[v] < delta && rng.coin()) {
                edges.emplace_back(u, v);
                ++degree[u];
                ++degree[v];
            }
        std::sort(edges.begin(), edges.end());

        Digraph g(n, std::move(edges));
        layering.w = std::max(1, max_edge_span(g, layering.layer_of));
        return {std::move(g), std::move(layering)};
    }

    auto ramsey_bounds(const DegreeProfile & profile, const Layering & layering, long n) -> BoundReport
    {
        BoundReport report;
        mpz_class three_pow;
        mpz_ui_pow_ui(three_pow.get_mpz_t(), 3, static_cast<unsigned long>(57 * profile.delta * layering.w));
        report.main_bound = three_pow * n;

        mpz_class billion = 1000000000;
        mpz_class two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(4 * profile.delta_in));
        report.easy_bound = billion * profile.delta_out * profile.delta_in * profile.delta_in * two_pow * n;

        report.degenerate = profile.delta_out == 0 && profile.delta_in == 0;

        if (layering.w == 1) {
            report.refined_available = true;
            auto sizes = layering.layer_sizes();
            mpz_class sum = 0;
            for (int i = 1; i <= layering.H; ++i) {
                int prev = (i - 1 >= 1 && i - 1 < int(profile.delta_in_per_layer.size())) ? profile.delta_in_per_layer[i - 1] : 0;
                int cur = (i <= layering.H - 1 && i < int(profile.delta_in_per_layer.size())) ? profile.delta_in_per_layer[i] : 0;
                mpz_class term;
                mpz_ui_pow_ui(term.get_mpz_t(), 2, static_cast<unsigned long>(2 * (prev + cur)));
                sum += term * sizes[i - 1];
            }
            report.refined_sum = sum;
            report.refined_bound = billion * profile.delta_in * profile.delta_in * profile.delta_out * sum;
        }
        return report;
    }

    auto hypercube_refined_sum(int d) -> mpz_class
    {
        mpz_class sum = 0;
        for (int i = 0; i <= d; ++i) {
            mpz_class term;
            mpz_ui_pow_ui(term.get_mpz_t(), 2, static_cast<unsigned long>(4 * i));
            sum += binomial(d, i) * 4 * term;
        }
        return sum;
    }
}
