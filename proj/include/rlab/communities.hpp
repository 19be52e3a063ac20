#pragma once

#include <rlab/bignum.hpp>
#include <rlab/tournament.hpp>
#include <rlab/vertex_set.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rlab
{
    enum class Direction
    {
        In,
        Out,
        Undirected
    };

    auto direction_name(Direction d) -> std::string;

    // toward[v] is the neighbourhood a community counts (N+ for Out, N- for In);
    // against[v] is the reverse relation. Both alias the same rows for graphs.
    struct Adjacency
    {
        const std::vector<VertexSet> * toward = nullptr;
        const std::vector<VertexSet> * against = nullptr;

        auto n() const -> int
        {
            return int(toward->size());
        }
    };

    auto adjacency(const Tournament & t, Direction direction) -> Adjacency;
    auto adjacency(const std::vector<VertexSet> & graph_rows) -> Adjacency;

    inline constexpr long long default_enumeration_cap = 10'000'000;

    struct CommunitySpec
    {
        VertexSet A, C, R;
        int delta = 0;
        long s = 0;
        mpq_class e{0};
        Direction direction = Direction::Out;
    };

    struct CommunityVerdict
    {
        bool ok = false;
        bool base_ok = false;        // |N(C) n R| >= s+1
        bool size_ok = false;        // |A \ C| >= delta
        long long bad_count = 0;     // delta-subsets S of A \ C with |N(C u S) n R| <= s
        long long subsets = 0;       // C(|A \ C|, delta)
    };

    // common neighbourhood of `set` inside `within`
    auto common_neighbourhood(const std::vector<VertexSet> & rows, const VertexSet & set, const VertexSet & within) -> VertexSet;

    auto is_community(const Adjacency & adj, const CommunitySpec & spec, long long cap = default_enumeration_cap)
        -> CommunityVerdict;
    auto is_community_serial(const Adjacency & adj, const CommunitySpec & spec, long long cap = default_enumeration_cap)
        -> CommunityVerdict;
    auto is_community(const Tournament & t, const CommunitySpec & spec, long long cap = default_enumeration_cap)
        -> CommunityVerdict;

    struct SampledCommunity
    {
        double estimate = 0;         // bad fraction among sampled delta-subsets
        double half_width = 0;       // two-sided Hoeffding radius at `confidence`
        double confidence = 0.99;
        long samples = 0;
        bool base_ok = false;
        bool size_ok = false;
    };

    auto is_community_sampled(const Adjacency & adj, const CommunitySpec & spec, long samples, std::uint64_t seed,
                              double confidence = 0.99) -> SampledCommunity;

    auto subset_community(const Adjacency & adj, const CommunitySpec & spec, const VertexSet & a_prime,
                          long long cap = default_enumeration_cap) -> bool;

    struct MonotoneFamily
    {
        VertexSet ground;
        std::function<bool(const VertexSet &)> contains;
    };

    auto empty_family(const VertexSet & ground) -> MonotoneFamily;
    auto superset_family(const VertexSet & ground, const VertexSet & core) -> MonotoneFamily;

    auto k_density_exact(const MonotoneFamily & f, int k, long long cap = default_enumeration_cap) -> mpq_class;

    struct CascadeReport
    {
        std::vector<mpq_class> densities;   // entry i is the i-density, i in [0, k]
        bool all_within = false;            // i-density <= delta for every 1 <= i <= k
    };

    // Also walks one step up from every member of size <= k; a non-member superset raises MonotonicityViolated.
    auto check_upward_density_cascade(const MonotoneFamily & f, int k, const mpq_class & delta,
                                      long long cap = default_enumeration_cap) -> CascadeReport;

    // Sets S' of A \ C for which (A, C u S') is not an (R, delta2, s, delta2_frac C(m - delta1, delta2)) community.
    auto extension_bad_family(const Adjacency & adj, const VertexSet & a, const VertexSet & c, const VertexSet & r,
                              int delta1, int delta2, long m, long s, const mpq_class & delta1_frac,
                              const mpq_class & delta2_frac, long long cap = default_enumeration_cap) -> MonotoneFamily;

    struct DrcRequest
    {
        VertexSet L, R, A;
        int k = 1;
        int delta = 1;
        long s = 0;
        mpq_class d{0};
        std::optional<MonotoneFamily> family;
        mpq_class family_density{0};
        bool trust_family = false;
        int max_retries = 64;
        std::uint64_t seed = 0;
        long long cap = default_enumeration_cap;
        long samples = 20000;
    };

    struct DrcResult
    {
        std::vector<int> draws;      // the k draws from R, repetitions kept
        VertexSet K;
        VertexSet M;                 // N(K) n L
        VertexSet target;            // N(K) n (L u A)
        long long bad_count = 0;     // exact, or the scaled sampled estimate
        bool exact = true;
        int retries_used = 0;        // index of the accepted retry plus one
        mpq_class size_bound;        // (d^k - delta)/2 |L|
        mpq_class bad_bound;         // 4/(d^k - delta) C(|L u A|, Delta) (s/|R|)^k
        mpq_class observed_density;
    };

    auto dependent_random_choice(const Adjacency & adj, const DrcRequest & request) -> DrcResult;

    // A community claim with its verdict; the bound may carry powers of 2^{-1/2}.
    struct CommunityCertificate
    {
        VertexSet members;           // A
        VertexSet core;              // C
        VertexSet target;            // R
        int delta = 0;
        long s = 0;
        Sqrt2Scaled bound;
        Direction direction = Direction::Out;

        long long bad_count = 0;     // exact count, or the scaled sampled estimate rounded up
        mpz_class subsets{0};
        bool exact = true;
        bool base_ok = false;
        bool size_ok = false;
        bool ok = false;
    };

    // Exact when C(|A \ C|, delta) <= cap, sampled otherwise.
    auto certify(const Tournament & t, CommunityCertificate & cert, long long cap = default_enumeration_cap,
                 long samples = 20000, std::uint64_t seed = 0) -> void;
}
