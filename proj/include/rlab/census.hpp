#pragma once

#include <rlab/embed_exact.hpp>
#include <rlab/tournament.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rlab
{
    inline constexpr int census_code_limit = 11;   // C(11,2) = 55 bits still fit a 64-bit code
    inline constexpr int default_census_cap = 9;

    using TournamentCode = std::uint64_t;

    // Tournament on at most census_code_limit vertices, out-neighbourhoods as bit rows.
    struct TinyTournament
    {
        int n = 0;
        std::array<std::uint32_t, census_code_limit> out{};

        auto has_edge(int u, int v) const -> bool
        {
            return (out[u] >> v) & 1u;
        }
    };

    auto tiny_from_tournament(const Tournament & t) -> TinyTournament;
    auto tiny_to_tournament(const TinyTournament & t) -> Tournament;
    auto tiny_to_host(const TinyTournament & t) -> SmallHost;

    // Pairs (p, q), p < q, row-major over positions; the first pair is the most significant bit.
    // perm[p] is the vertex placed at position p.
    auto code_of(const TinyTournament & t, const int * perm) -> TournamentCode;
    auto tiny_from_code(int n, TournamentCode code) -> TinyTournament;

    // Minimum code over the leaves of an individualization-refinement tree; equal for isomorphic inputs.
    auto canonical_code(const TinyTournament & t) -> TournamentCode;

    struct TournamentCensus
    {
        int n = 0;
        std::vector<TournamentCode> codes;   // canonical codes, ascending

        auto size() const -> std::size_t
        {
            return codes.size();
        }

        auto tiny(std::size_t i) const -> TinyTournament
        {
            return tiny_from_code(n, codes[i]);
        }
    };

    // Classes on n vertices by extending every class on n-1 vertices in all 2^{n-1} ways.
    auto census_extend(const TournamentCensus & smaller) -> TournamentCensus;
    auto enumerate_tournaments(int n, int cap = default_census_cap) -> TournamentCensus;

    auto write_census(const TournamentCensus & census) -> std::string;
    auto read_census(const std::string & text) -> TournamentCensus;

    // Loads <dir>/census-<n>.txt when present and intact, otherwise builds and writes it.
    auto load_or_build_census(int n, const std::string & cache_dir, int cap = default_census_cap) -> TournamentCensus;
}
