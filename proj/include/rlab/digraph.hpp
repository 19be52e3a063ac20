#pragma once

#include <rlab/bignum.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rlab
{
    class Digraph
    {
        public:
            Digraph() = default;

            // Rejects self-loops, repeated pairs and antiparallel pairs.
            Digraph(int n, std::vector<std::pair<int, int>> edges);

            auto n() const -> int
            {
                return _n;
            }

            auto edges() const -> const std::vector<std::pair<int, int>> &
            {
                return _edges;
            }

            auto out_adj(int v) const -> const std::vector<int> &
            {
                return _out[v];
            }

            auto in_adj(int v) const -> const std::vector<int> &
            {
                return _in[v];
            }

            auto has_edge(int u, int v) const -> bool;

        private:
            int _n = 0;
            std::vector<std::pair<int, int>> _edges;
            std::vector<std::vector<int>> _out, _in;
    };

    // Layers are 1-based; layer_of[v] in [1, H].
    struct Layering
    {
        std::vector<int> layer_of;
        int H = 0;
        int w = 0;

        // layers()[i] lists V_i for i in [1, H]; index 0 is empty
        auto layers() const -> std::vector<std::vector<int>>;
        auto layer_sizes() const -> std::vector<int>;
    };

    struct DegreeProfile
    {
        int delta = 0;
        int delta_out = 0;
        int delta_in = 0;
        // entry i (1-based, i in [1, H-1]) is the max in-degree of G[V_i u V_{i+1}];
        // entries 0 and H hold the zero boundary values
        std::vector<int> delta_in_per_layer;
    };

    auto validate_acyclic(const Digraph & g) -> std::vector<int>;

    auto grid_digraph(int d, int k, long vertex_cap = 1L << 20) -> std::pair<Digraph, Layering>;
    auto hypercube_digraph(int d, long vertex_cap = 1L << 20) -> std::pair<Digraph, Layering>;

    auto directed_path(int n) -> Digraph;
    auto transitive_digraph(int n) -> Digraph;

    // Path 0 - 1 - ... - (n-1); bit i of pattern set means edge i -> i+1, else i+1 -> i.
    auto oriented_path(int n, std::uint64_t pattern) -> Digraph;

    auto compute_layering(const Digraph & g) -> Layering;

    // True iff every edge spans 1..w layers forward.
    auto layering_valid(const Digraph & g, const Layering & layering) -> bool;

    auto max_edge_span(const Digraph & g, const std::vector<int> & layer_of) -> int;

    struct BandwidthResult
    {
        int w = 0;
        Layering layering;
    };

    auto min_graded_bandwidth_exact(const Digraph & g, int vertex_cap = 16) -> BandwidthResult;

    auto degree_profile(const Digraph & g, const Layering & layering) -> DegreeProfile;

    auto random_layered_digraph(const std::vector<int> & layer_sizes, int delta, int w, std::uint64_t seed)
        -> std::pair<Digraph, Layering>;

    struct BoundReport
    {
        mpz_class main_bound;        // 3^{57 Delta w} |V(G)|
        mpz_class easy_bound;        // 1e9 Delta+ (Delta-)^2 2^{4 Delta-} n
        bool refined_available = false;
        mpz_class refined_bound;     // 1e9 (Delta-)^2 Delta+ sum_i 2^{2(Delta-_{i-1} + Delta-_i)} |V_i|
        mpz_class refined_sum;       // the sum alone
        bool degenerate = false;     // edgeless input
    };

    auto ramsey_bounds(const DegreeProfile & profile, const Layering & layering, long n) -> BoundReport;

    // sum_{i=0}^{d} C(d,i) 4 2^{4i}; equals 4 * 17^d
    auto hypercube_refined_sum(int d) -> mpz_class;
}
