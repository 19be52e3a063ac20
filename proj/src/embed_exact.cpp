#include <rlab/embed_exact.hpp>
#include <rlab/error.hpp>

#include <algorithm>
#include <bit>

using std::vector;

namespace rlab
{
    auto verify_embedding(const Digraph & g, const Tournament & t, const vector<int> & map) -> bool
    {
        if (int(map.size()) != g.n())
            return false;
        vector<bool> used(t.n(), false);
        for (int x : map) {
            if (x < 0 || x >= t.n() || used[x])
                return false;
            used[x] = true;
        }
        for (auto [u, v] : g.edges())
            if (! t.has_edge(map[u], map[v]))
                return false;
        return true;
    }

    auto search_status_name(SearchStatus s) -> std::string
    {
        switch (s) {
            case SearchStatus::Found: return "found";
            case SearchStatus::NotFound: return "not-found";
            case SearchStatus::BudgetExhausted: return "budget-exhausted";
        }
        return "?";
    }

    auto make_embed_plan(const Digraph & g) -> EmbedPlan
    {
        validate_acyclic(g);
        int n = g.n();
        EmbedPlan plan;
        plan.n = n;
        vector<int> step_of(n, -1), placed_neighbours(n, 0), degree(n);
        for (int v = 0; v < n; ++v)
            degree[v] = int(g.out_adj(v).size() + g.in_adj(v).size());
        for (int step = 0; step < n; ++step) {
            int best = -1;
            for (int v = 0; v < n; ++v) {
                if (step_of[v] >= 0)
                    continue;
                if (best < 0 || placed_neighbours[v] > placed_neighbours[best]
                    || (placed_neighbours[v] == placed_neighbours[best] && degree[v] > degree[best]))
                    best = v;
            }
            step_of[best] = step;
            plan.order.push_back(best);
            for (const auto * adj : {&g.out_adj(best), &g.in_adj(best)})
                for (int x : *adj)
                    ++placed_neighbours[x];
        }
        plan.preds_in.resize(n);
        plan.preds_out.resize(n);
        for (int step = 0; step < n; ++step) {
            int v = plan.order[step];
            for (int u : g.in_adj(v))
                if (step_of[u] < step)
                    plan.preds_in[step].push_back(step_of[u]);
            for (int u : g.out_adj(v))
                if (step_of[u] < step)
                    plan.preds_out[step].push_back(step_of[u]);
            plan.need_out.push_back(int(g.out_adj(v).size()));
            plan.need_in.push_back(int(g.in_adj(v).size()));
        }
        return plan;
    }

    auto small_host(const Tournament & t) -> SmallHost
    {
        require(t.n() <= 64, ErrorKind::TooLarge, "bit-row hosts hold at most 64 vertices");
        SmallHost host{t.n(), vector<std::uint64_t>(t.n(), 0), vector<std::uint64_t>(t.n(), 0)};
        for (int u = 0; u < t.n(); ++u)
            t.out(u).for_each([&](int v) {
                host.out[u] |= std::uint64_t{1} << v;
                host.in[v] |= std::uint64_t{1} << u;
            });
        return host;
    }

    namespace
    {
        struct Mask
        {
            std::uint64_t bits = 0;

            auto operator&=(const Mask & o) -> Mask &
            {
                bits &= o.bits;
                return *this;
            }

            auto operator-=(const Mask & o) -> Mask &
            {
                bits &= ~o.bits;
                return *this;
            }

            auto empty() const -> bool
            {
                return bits == 0;
            }

            auto pop_first() -> int
            {
                int v = std::countr_zero(bits);
                bits &= bits - 1;
                return v;
            }

            auto insert(int v) -> void
            {
                bits |= std::uint64_t{1} << v;
            }

            auto erase(int v) -> void
            {
                bits &= ~(std::uint64_t{1} << v);
            }
        };

        struct BigSet
        {
            VertexSet set;

            auto operator&=(const BigSet & o) -> BigSet &
            {
                set &= o.set;
                return *this;
            }

            auto operator-=(const BigSet & o) -> BigSet &
            {
                set -= o.set;
                return *this;
            }

            auto empty() const -> bool
            {
                return set.empty();
            }

            auto pop_first() -> int
            {
                int v = set.first();
                set.erase(v);
                return v;
            }

            auto insert(int v) -> void
            {
                set.insert(v);
            }

            auto erase(int v) -> void
            {
                set.erase(v);
            }
        };

        template <typename Set>
        struct Searcher
        {
            const EmbedPlan & plan;
            const vector<Set> & out;
            const vector<Set> & in;
            vector<Set> eligible;   // per step: host vertices with enough out- and in-degree
            long long budget;
            long long nodes = 0;
            bool exhausted = false;
            vector<int> image;
            Set used;

            auto run(int step) -> bool
            {
                if (step == plan.n)
                    return true;
                if (budget >= 0 && nodes >= budget) {
                    exhausted = true;
                    return false;
                }
                ++nodes;
                Set candidates = eligible[step];
                candidates -= used;
                for (int p : plan.preds_in[step])
                    candidates &= out[image[p]];
                for (int p : plan.preds_out[step])
                    candidates &= in[image[p]];
                while (! candidates.empty()) {
                    int x = candidates.pop_first();
                    image[step] = x;
                    used.insert(x);
                    if (run(step + 1))
                        return true;
                    used.erase(x);
                    if (exhausted)
                        return false;
                }
                return false;
            }
        };

        template <typename Set>
        auto search(const EmbedPlan & plan, const vector<Set> & out, const vector<Set> & in, vector<Set> eligible, Set empty,
                    long long budget) -> SearchResult
        {
            SearchResult result;
            Searcher<Set> s{plan, out, in, std::move(eligible), budget, 0, false, vector<int>(plan.n, -1), std::move(empty)};
            bool found = s.run(0);
            result.nodes = s.nodes;
            if (found) {
                result.status = SearchStatus::Found;
                result.embedding.map.assign(plan.n, -1);
                for (int step = 0; step < plan.n; ++step)
                    result.embedding.map[plan.order[step]] = s.image[step];
            }
            else
                result.status = s.exhausted ? SearchStatus::BudgetExhausted : SearchStatus::NotFound;
            return result;
        }
    }

    auto backtracking_embed(const EmbedPlan & plan, const SmallHost & host, long long node_budget) -> SearchResult
    {
        if (plan.n > host.n)
            return {};
        vector<Mask> out(host.n), in(host.n), eligible(plan.n);
        vector<int> out_deg(host.n), in_deg(host.n);
        for (int v = 0; v < host.n; ++v) {
            out[v].bits = host.out[v];
            in[v].bits = host.in[v];
            out_deg[v] = std::popcount(host.out[v]);
            in_deg[v] = std::popcount(host.in[v]);
        }
        for (int step = 0; step < plan.n; ++step)
            for (int v = 0; v < host.n; ++v)
                if (out_deg[v] >= plan.need_out[step] && in_deg[v] >= plan.need_in[step])
                    eligible[step].insert(v);
        return search(plan, out, in, std::move(eligible), Mask{}, node_budget);
    }

    auto backtracking_embed(const EmbedPlan & plan, const Tournament & t, long long node_budget) -> SearchResult
    {
        if (t.n() <= 64)
            return backtracking_embed(plan, small_host(t), node_budget);
        if (plan.n > t.n())
            return {};
        vector<BigSet> out, in, eligible(plan.n, BigSet{VertexSet(t.n())});
        for (int v = 0; v < t.n(); ++v) {
            out.push_back({t.out(v)});
            in.push_back({t.in(v)});
        }
        for (int step = 0; step < plan.n; ++step)
            for (int v = 0; v < t.n(); ++v)
                if (t.out(v).size() >= plan.need_out[step] && t.in(v).size() >= plan.need_in[step])
                    eligible[step].insert(v);
        return search(plan, out, in, std::move(eligible), BigSet{VertexSet(t.n())}, node_budget);
    }

    auto backtracking_embed(const Digraph & g, const Tournament & t, long long node_budget) -> SearchResult
    {
        auto result = backtracking_embed(make_embed_plan(g), t, node_budget);
        if (result.status == SearchStatus::Found)
            result.embedding.verified = verify_embedding(g, t, result.embedding.map);
        return result;
    }
}
