#pragma once

#include <rlab/digraph.hpp>
#include <rlab/tournament.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace rlab
{
    struct Embedding
    {
        std::vector<int> map;   // guest vertex -> host vertex
        bool verified = false;
    };

    // injective, and every guest edge u -> v lands on a host edge map[u] -> map[v]
    auto verify_embedding(const Digraph & g, const Tournament & t, const std::vector<int> & map) -> bool;

    enum class SearchStatus
    {
        Found,
        NotFound,
        BudgetExhausted
    };

    auto search_status_name(SearchStatus s) -> std::string;

    struct SearchResult
    {
        SearchStatus status = SearchStatus::NotFound;
        Embedding embedding;
        long long nodes = 0;
    };

    // Guest order and constraint lists, computed once per guest and reused across hosts.
    struct EmbedPlan
    {
        int n = 0;
        std::vector<int> order;                  // guest vertices, each after as many neighbours as possible
        std::vector<std::vector<int>> preds_in;  // per step: earlier steps that must point to this vertex
        std::vector<std::vector<int>> preds_out; // per step: earlier steps this vertex must point to
        std::vector<int> need_out, need_in;      // guest degrees per step
    };

    auto make_embed_plan(const Digraph & g) -> EmbedPlan;

    // Host with at most 64 vertices as bit rows.
    struct SmallHost
    {
        int n = 0;
        std::vector<std::uint64_t> out, in;
    };

    auto small_host(const Tournament & t) -> SmallHost;

    inline constexpr long long unlimited_budget = -1;

    auto backtracking_embed(const EmbedPlan & plan, const SmallHost & host, long long node_budget = unlimited_budget) -> SearchResult;
    auto backtracking_embed(const EmbedPlan & plan, const Tournament & t, long long node_budget = unlimited_budget) -> SearchResult;
    auto backtracking_embed(const Digraph & g, const Tournament & t, long long node_budget = unlimited_budget) -> SearchResult;
}
