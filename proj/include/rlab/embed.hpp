#pragma once

#include <rlab/bignum.hpp>
#include <rlab/communities.hpp>
#include <rlab/digraph.hpp>
#include <rlab/embed_exact.hpp>
#include <rlab/structure.hpp>
#include <rlab/tournament.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace rlab
{
    inline constexpr long long default_resample_budget = 1'000'000;

    // One layer: place W1 inside A. W2 vertices only constrain through their families.
    struct LayerInstance
    {
        std::vector<int> W1, W2;                 // guest labels, for reporting
        std::vector<std::vector<int>> nbrs;      // nbrs[v]: indices into W1 adjacent to W2[v]
        VertexSet A;
        std::vector<VertexSet> f;                // per W1 index
        std::vector<MonotoneFamily> F;           // per W2 index, ground A
        int delta_out = 1;
        int delta_in = 1;
        long b = 0;                              // 0: use min |f(u)|
    };

    struct LayerPreconditions
    {
        bool sizes_ok = false;                   // a >= b >= 32 |W1|
        bool candidates_ok = false;              // f(u) inside A with |f(u)| >= b, degrees within bounds
        bool densities_checked = false;
        bool densities_ok = false;
        std::vector<mpz_class> family_counts;    // |F_v| restricted to |N_v|-sets, per W2 index
        auto hold() const -> bool
        {
            return sizes_ok && candidates_ok && densities_checked && densities_ok;
        }
    };

    // (1 / (4 Delta+ Delta-)) (2^{-1/2} b / a)^k
    auto family_density_cap(int delta_out, int delta_in, long a, long b, int k) -> Sqrt2Scaled;

    auto check_layer_preconditions(const LayerInstance & inst, long long cap = default_enumeration_cap) -> LayerPreconditions;

    struct LayerOutcome
    {
        std::vector<int> phi;                    // per W1 index
        long long resamples = 0;
        long long collision_resamples = 0;
        long long family_resamples = 0;
        LayerPreconditions preconditions;
    };

    // Draws phi(u) uniformly from f(u) and resamples the variables of the lowest violated event
    // (collisions by pair index first, then families) until none is left.
    // Without `trust` a failed or unverifiable precondition throws.
    auto lll_embed_layer(const LayerInstance & inst, std::uint64_t seed, long long max_resamples = default_resample_budget,
                         bool trust = false, long long cap = default_enumeration_cap) -> LayerOutcome;

    // injective, phi(u) in f(u), phi(N_v) not in F_v
    auto verify_layer(const LayerInstance & inst, const std::vector<int> & phi) -> bool;

    // largest family size allowed at level k by the density cap
    auto max_family_count(int delta_out, int delta_in, long a, long b, int k) -> mpz_class;

    // W1 of size w1 inside A = [0, a), each f(u) a random b-subset, |W2| = w1 with degrees within the bounds.
    // Each F_v is the upward closure of max_family_count random |N_v|-sets.
    struct RandomLayerSpec
    {
        int w1 = 4;
        long a = 256;
        long b = 128;
        int delta_out = 2;
        int delta_in = 2;
    };

    struct RandomLayer
    {
        LayerInstance instance;
        std::vector<std::vector<VertexSet>> forbidden;   // generators of F_v
    };

    auto random_layer_instance(const RandomLayerSpec & spec, std::uint64_t seed) -> RandomLayer;

    // Parameters of the layer-by-layer embedding for a guest of bandwidth w.
    struct PipelineSchedule
    {
        int delta = 0;
        int w = 0;
        int H = 0;
        int h = 0;
        std::vector<int> N;                      // N_1..N_h
        std::vector<mpq_class> n_prime;          // n'_1..n'_h
        std::vector<long> s;                     // ceil(c_s w n'_i)
        Sqrt2Scaled strength;                    // (1/(4 Delta^2))^w 2^{-Delta/2}
    };

    auto pipeline_schedule(const Digraph & g, const Layering & layering, const mpq_class & c_s = mpq_class(64))
        -> PipelineSchedule;

    auto pipeline_structure_params(const PipelineSchedule & schedule, const StructureOverrides & overrides) -> StructureParams;

    // Small constants under which grid(2,3) embeds into a few thousand vertices.
    struct DeskProfile
    {
        StructureOverrides overrides;
        mpq_class c_s;
    };

    auto desk_profile() -> DeskProfile;

    inline auto k_index(int i, int j, int w) -> int
    {
        return std::min(w, j - i - 1);
    }

    // delta_{k,d} = (1/(4 Delta^2))^k (2^{-1/2} s_1 / (2 b_1))^d
    auto delta_kd(int delta, int k, int d, long s1, const mpz_class & b1) -> Sqrt2Scaled;

    struct EmbedState
    {
        int i = 0;
        std::vector<int> phi;                    // -1 while unembedded
        std::vector<std::vector<int>> placed_in; // P_i(v)
        std::vector<int> r;                      // r_i(v)
    };

    struct PipelineOptions
    {
        bool audit = true;
        bool trust_lll = true;
        int layer_attempts = 8;
        long long max_resamples = default_resample_budget;
        long long cap = default_enumeration_cap;
        long samples = 20000;
    };

    struct LayerReport
    {
        int layer = 0;
        int attempts = 0;
        long long resamples = 0;
        bool lll_preconditions = false;
        bool condition3 = false;
        bool greedy = false;
    };

    struct PipelineResult
    {
        Embedding embedding;
        std::vector<LayerReport> layers;
    };

    auto embed_pipeline(const Digraph & g, const Layering & layering, const Tournament & t, const EmbeddingStructure & es,
                        const PipelineOptions & options, std::uint64_t seed) -> PipelineResult;

    auto embed_graded_pipeline(const Digraph & g, const Layering & layering, const Tournament & t, const GradedStructure & gs,
                               const PipelineOptions & options, std::uint64_t seed) -> PipelineResult;
}
