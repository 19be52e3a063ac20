#pragma once

#include <rlab/census.hpp>
#include <rlab/digraph.hpp>
#include <rlab/embed_exact.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace rlab
{
    struct UniversalityResult
    {
        bool universal = false;
        std::optional<std::size_t> counterexample;   // index into the census (smallest code first)
        long long nodes = 0;
    };

    auto universality_check(const Digraph & g, const TournamentCensus & census, bool parallel = true) -> UniversalityResult;

    struct RamseyResult
    {
        bool conclusive = false;
        int r = 0;
        std::optional<Tournament> witness;   // on r-1 vertices, contains no copy
        int classes_checked = 0;             // classes at level r
        std::string note;
    };

    // Census levels come from `census_for(n)`; the search stops after n_cap.
    auto oriented_ramsey_exact(const Digraph & g, int n_cap, const std::function<TournamentCensus(int)> & census_for)
        -> RamseyResult;
    auto oriented_ramsey_exact(const Digraph & g, int n_cap) -> RamseyResult;

    // Paley tournament on a prime p = 3 mod 4: i -> j iff j - i is a nonzero square mod p.
    auto quadratic_residue_tournament(int p) -> Tournament;

    struct WitnessSearch
    {
        std::optional<Tournament> witness;   // exact NotFound only
        std::string source;                  // "quadratic-residue" or "random seed <s>"
        int inconclusive = 0;                // candidates that ran out of budget
        int containing = 0;                  // candidates that contain G
    };

    auto witness_search_random(const Digraph & g, int N, int seeds, std::uint64_t seed, long long node_budget = 1'000'000)
        -> WitnessSearch;
}
