#include <rlab/ramsey.hpp>
#include <rlab/error.hpp>
#include <rlab/rng.hpp>

#include <omp.h>

#include <limits>

namespace rlab
{
    auto universality_check(const Digraph & g, const TournamentCensus & census, bool parallel) -> UniversalityResult
    {
        UniversalityResult result;
        if (g.n() > census.n)
            return {false, census.size() ? std::optional<std::size_t>(0) : std::nullopt, 0};
        auto plan = make_embed_plan(g);
        long long total = long(census.size());
        long long first_bad = std::numeric_limits<long long>::max(), nodes = 0;
        auto check = [&](long long i) {
            auto found = backtracking_embed(plan, tiny_to_host(census.tiny(std::size_t(i))));
            return std::pair{found.status == SearchStatus::Found, found.nodes};
        };
        if (parallel) {
#pragma omp parallel for schedule(dynamic, 256) reduction(min:first_bad) reduction(+:nodes)
            for (long long i = 0; i < total; ++i) {
                if (i > first_bad)
                    continue;
                auto [ok, used] = check(i);
                nodes += used;
                if (! ok)
                    first_bad = std::min(first_bad, i);
            }
        }
        else
            for (long long i = 0; i < total; ++i) {
                auto [ok, used] = check(i);
                nodes += used;
                if (! ok) {
                    first_bad = i;
                    break;
                }
            }
        result.nodes = nodes;
        result.universal = first_bad == std::numeric_limits<long long>::max();
        if (! result.universal)
            result.counterexample = std::size_t(first_bad);
        return result;
    }

    auto oriented_ramsey_exact(const Digraph & g, int n_cap, const std::function<TournamentCensus(int)> & census_for) -> RamseyResult
    {
        validate_acyclic(g);
        require(g.n() >= 1, ErrorKind::InfeasibleParams, "guest must have a vertex");
        require(g.n() <= n_cap, ErrorKind::InfeasibleParams, "n_cap is below the guest size");
        RamseyResult result;
        std::optional<Tournament> witness;
        if (g.n() >= 2)
            witness = tiny_to_tournament(census_for(g.n() - 1).tiny(0));
        for (int n = g.n(); n <= n_cap; ++n) {
            TournamentCensus census;
            try {
                census = census_for(n);
            }
            catch (const Error & e) {
                if (e.kind() != ErrorKind::TooLarge)
                    throw;
                result.note = "census unavailable at n = " + std::to_string(n);
                result.witness = witness;
                return result;
            }
            auto check = universality_check(g, census);
            if (check.universal) {
                result.conclusive = true;
                result.r = n;
                result.witness = witness;
                result.classes_checked = int(census.size());
                return result;
            }
            witness = tiny_to_tournament(census.tiny(*check.counterexample));
        }
        result.note = "every level up to n_cap has a counterexample";
        result.witness = witness;
        return result;
    }

    auto oriented_ramsey_exact(const Digraph & g, int n_cap) -> RamseyResult
    {
        return oriented_ramsey_exact(g, n_cap, [](int n) { return enumerate_tournaments(n); });
    }

    auto quadratic_residue_tournament(int p) -> Tournament
    {
        require(p >= 3 && p % 4 == 3, ErrorKind::InfeasibleParams, "need a prime p = 3 mod 4");
        for (int d = 2; d * d <= p; ++d)
            require(p % d, ErrorKind::InfeasibleParams, std::to_string(p) + " is not prime");
        std::vector<bool> square(p, false);
        for (int x = 1; x < p; ++x)
            square[(x * x) % p] = true;
        Tournament t(p);
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (! square[(j - i) % p])
                    t.orient(j, i);
        return t;
    }

    auto witness_search_random(const Digraph & g, int N, int seeds, std::uint64_t seed, long long node_budget) -> WitnessSearch
    {
        WitnessSearch out;
        auto plan = make_embed_plan(g);
        auto try_host = [&](const Tournament & t, const std::string & source) {
            auto r = backtracking_embed(plan, t, node_budget);
            if (r.status == SearchStatus::NotFound) {
                out.witness = t;
                out.source = source;
                return true;
            }
            if (r.status == SearchStatus::BudgetExhausted)
                ++out.inconclusive;
            else
                ++out.containing;
            return false;
        };
        bool prime = N >= 3 && N % 4 == 3;
        for (int d = 2; prime && d * d <= N; ++d)
            prime = N % d != 0;
        if (prime && try_host(quadratic_residue_tournament(N), "quadratic-residue"))
            return out;
        for (int s = 0; s < seeds; ++s)
            if (try_host(random_tournament(N, derive_seed(seed, std::uint64_t(s))), "random seed " + std::to_string(s)))
                return out;
        return out;
    }
}
