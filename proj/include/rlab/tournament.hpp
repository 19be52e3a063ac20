#pragma once

#include <rlab/vertex_set.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace rlab
{
    class Tournament
    {
        public:
            Tournament() = default;

            // All pairs start oriented low -> high; callers reorient with orient().
            explicit Tournament(int n);

            auto n() const -> int
            {
                return _n;
            }

            auto has_edge(int u, int v) const -> bool
            {
                return _out[u].contains(v);
            }

            auto orient(int u, int v) -> void;

            auto out(int v) const -> const VertexSet &
            {
                return _out[v];
            }

            auto in(int v) const -> const VertexSet &
            {
                return _in[v];
            }

            auto out_rows() const -> const std::vector<VertexSet> &
            {
                return _out;
            }

            auto in_rows() const -> const std::vector<VertexSet> &
            {
                return _in;
            }

            auto out_degree(int v) const -> int
            {
                return _out[v].size();
            }

            // exactly one orientation per pair, clear diagonal, in-rows mirror out-rows
            auto is_complete() const -> bool;

            // T[vertices], relabelled 0..k-1 in the given order
            auto induced(const std::vector<int> & vertices) const -> Tournament;

            auto operator==(const Tournament & other) const -> bool
            {
                return _n == other._n && _out == other._out;
            }

        private:
            int _n = 0;
            std::vector<VertexSet> _out, _in;
    };

    auto random_tournament(int n, std::uint64_t seed) -> Tournament;
    auto transitive_tournament(int n) -> Tournament;

    // Vertex i of the result lies in part i / part_size; inner(p) supplies the tournament inside part p.
    struct BlowupResult
    {
        Tournament tournament;
        std::vector<VertexSet> parts;
    };

    auto blowup(const Tournament & pattern, int part_size, const std::function<Tournament(int)> & inner) -> BlowupResult;
    auto blowup_random_inner(const Tournament & pattern, int part_size, std::uint64_t seed) -> BlowupResult;

    auto layered_tournament(const Tournament & r, int H) -> BlowupResult;

    auto common_out_neighborhood(const Tournament & t, const VertexSet & s, const VertexSet & r) -> VertexSet;
    auto common_in_neighborhood(const Tournament & t, const VertexSet & s, const VertexSet & r) -> VertexSet;

    struct MedianOrder
    {
        std::vector<int> order;      // order[p] is the vertex at 0-based position p
        std::vector<int> position;   // inverse of order
        long long forward_edges = 0;
        bool certificate = false;
    };

    auto count_forward_edges(const Tournament & t, const std::vector<int> & order) -> long long;

    auto make_median_order(const Tournament & t, std::vector<int> order) -> MedianOrder;

    // First-improvement single-vertex relocation search from a seed-shuffled start.
    auto median_order_local(const Tournament & t, std::uint64_t seed) -> MedianOrder;

    // Global optimum by subset dynamic programming, n <= 14.
    auto median_order_exact(const Tournament & t) -> MedianOrder;

    // For every position i and every p != i, relocating order[i] to p does not gain forward edges,
    // i.e. d-(v_i, [p,i)) >= ceil((i-p)/2) and d+(v_i, (i,p]) >= ceil((p-i)/2).
    auto verify_median_certificate_serial(const Tournament & t, const std::vector<int> & order) -> bool;
    auto verify_median_certificate(const Tournament & t, const std::vector<int> & order) -> bool;

    struct IntervalDensity
    {
        mpq_class density;
        // (k-1)/(2k) for the largest k with |I| = k a, a covering A, when the order is certified
        std::optional<mpq_class> guaranteed;
        int k = 0;
        int a = 0;
    };

    // I = [i_start, i_end) in 1-based positions; A must lie at positions >= i_end.
    auto interval_density(const Tournament & t, const MedianOrder & m, int i_start, int i_end, const VertexSet & a)
        -> IntervalDensity;

    // exact e(I -> A) / (|I| |A|)
    auto edge_density(const Tournament & t, const VertexSet & from, const VertexSet & to) -> mpq_class;

    // positions [lo, hi) (1-based) of the order as a vertex set
    auto interval_set(const MedianOrder & m, int lo, int hi) -> VertexSet;
}
