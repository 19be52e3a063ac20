#pragma once

#include <rlab/digraph.hpp>
#include <rlab/embed_exact.hpp>
#include <rlab/tournament.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rlab
{
    inline constexpr long long default_subset_cap = 50'000'000;

    // c_0, c_1 must satisfy 1 < c_1^2 < c_0.
    struct LowerBoundProfile
    {
        mpq_class c0 = mpq_class(3, 2);
        mpq_class c1 = mpq_class(6, 5);
        std::optional<int> small_host_size;      // replaces floor(2^{floor(0.98 Delta)/2}) in the small branch
        std::optional<Tournament> small_host;    // replaces the random host in the small branch
    };

    auto check_profile(const LowerBoundProfile & profile) -> void;

    struct GuestParams
    {
        long n = 0;
        int delta = 0;
        LowerBoundProfile profile;
    };

    // m = ceil(1.01 n) and d = ceil(Delta / 101); below n = 100 nothing is removed and m = n.
    struct GuestRounding
    {
        long m = 0;
        long d = 0;
        long removed = 0;                        // per side
        bool degenerate = false;
    };

    auto guest_rounding(const GuestParams & params) -> GuestRounding;

    // Bipartite digraph on A = [0, side) and B = [side, 2 side), every edge A -> B.
    struct BipartiteGuest
    {
        Digraph graph;
        int side = 0;
        GuestRounding rounding;
        long edges_before_removal = 0;
        int attempts = 1;                        // > 1 only when degenerate draws were redrawn
    };

    auto random_guest_bipartite(const GuestParams & params, std::uint64_t seed) -> BipartiteGuest;
    auto complete_bipartite_guest(int side) -> BipartiteGuest;
    auto max_total_degree(const Digraph & g) -> int;

    enum class CheckMode
    {
        Exact,
        Sampled,
        Vacuous
    };

    auto check_mode_name(CheckMode m) -> std::string;

    struct Property2Report
    {
        CheckMode mode = CheckMode::Exact;
        long threshold = 0;                      // ceil(alpha n)
        bool pass = false;                       // sampled: not falsified
        long long examined = 0;
        std::vector<int> witness_x, witness_y;   // empty rectangle on failure
    };

    // e(X', Y') > 0 for all X' in A, Y' in B of size >= ceil(alpha side).
    auto check_guest_property2(const BipartiteGuest & h, const mpq_class & alpha, CheckMode mode,
                               long long cap = default_subset_cap, long samples = 10000, std::uint64_t seed = 0)
        -> Property2Report;

    struct Property1Params
    {
        int k = 2;
        int part_max = 0;                        // |X_i|, |Y_i| <= part_max
        int leftover_max = 0;                    // |D_X|, |D_Y| <= leftover_max
    };

    // part_max = floor((c1/c0)^Delta side), leftover_max = floor(0.02 side)
    auto property1_params(const BipartiteGuest & h, int delta, int k, const LowerBoundProfile & profile) -> Property1Params;

    struct Property1Report
    {
        CheckMode mode = CheckMode::Exact;
        mpq_class threshold;                     // 0.55 (0.98 side)^2
        long minimum = -1;                       // -1: no admissible partition
        bool pass = false;
        long long examined = 0;
        std::vector<int> label_x, label_y;       // 0 = leftover, i in [1, k] = part i
    };

    // sum over i != j with e(X_i, Y_j) > 0 of |X_i| |Y_j|
    auto partition_cross_sum(const BipartiteGuest & h, int k, const std::vector<int> & label_x,
                             const std::vector<int> & label_y) -> long;

    // Exact enumeration when (k+1)^{2 side} <= cap_exact, else TooLarge.
    auto check_guest_property1_exact(const BipartiteGuest & h, const Property1Params & p, long long cap_exact = 1LL << 26)
        -> Property1Report;
    // Random starts plus single-vertex moves; reports the smallest sum found.
    auto check_guest_property1_sampled(const BipartiteGuest & h, const Property1Params & p, long samples, std::uint64_t seed)
        -> Property1Report;

    auto random_host_tournament(int k, std::uint64_t seed) -> Tournament;

    struct HostCheckReport
    {
        int k = 0;
        mpq_class x;
        CheckMode mode = CheckMode::Exact;
        long long pairs = 0;                     // (T, S) pairs examined
        bool reduction_pass = false;             // e(T, S) <= 0.501 (t+s)^2 / 4 on every pair
        mpq_class worst_w;                       // max of W over admissible f, g
        bool pass = false;                       // worst_w <= 0.51 x^2
        std::vector<int> worst_t, worst_s;
        int i0 = -1, j0 = -1;                    // fractional coordinates, -1 when unused
        mpq_class f_i0, g_j0;
        std::vector<int> reduction_t, reduction_s;   // first pair breaking the reduction criterion
    };

    // Exact: all disjoint T, S with t + s <= 2x < t + s + 2, plus the best fractional completion.
    auto check_host_property_exact(const Tournament & r, const mpq_class & x, long long cap = default_subset_cap)
        -> HostCheckReport;
    auto check_host_property_exact_serial(const Tournament & r, const mpq_class & x, long long cap = default_subset_cap)
        -> HostCheckReport;
    auto check_host_property_sampled(const Tournament & r, const mpq_class & x, long samples, std::uint64_t seed)
        -> HostCheckReport;

    // W for explicit weights
    auto host_weight(const Tournament & r, const std::vector<mpq_class> & f, const std::vector<mpq_class> & g) -> mpq_class;

    enum class LowerBranch
    {
        Small,
        Large
    };

    struct LowerBoundProvenance
    {
        LowerBranch branch = LowerBranch::Small;
        long n = 0;
        int delta = 0;
        mpq_class c0, c1;
        std::uint64_t seed = 0;
        long host_size = 0;
        long k = 0;                              // large branch: parts of the blow-up
        long part_size = 0;
        bool host_overridden = false;
        GuestRounding rounding;
    };

    struct LowerBoundPair
    {
        BipartiteGuest d0;
        Tournament r;
        std::vector<VertexSet> parts;            // large branch only
        LowerBoundProvenance provenance;
    };

    // 0.98 n >= 2 c_0^Delta, decided exactly
    auto large_branch(long n, int delta, const mpq_class & c0) -> bool;
    auto build_D0_and_R(long n, int delta, const LowerBoundProfile & profile, std::uint64_t seed) -> LowerBoundPair;

    // No copy of D_0[A' u B'] in R for all |A'|, |B'| >= ceil(0.98 side), by backtracking.
    auto small_branch_holds(const BipartiteGuest & d0, const Tournament & r) -> bool;

    // V_i = [(i-1) side, i side), each G[V_i u V_{i+1}] a copy of D_0
    auto build_height_h_guest(const BipartiteGuest & d0, int h) -> std::pair<Digraph, Layering>;
    // max(1, ceil(h/2) - 1)
    auto lower_host_layers(int h) -> int;
    auto build_lower_host(const Tournament & r, int H) -> BlowupResult;

    struct FrontIndexTable
    {
        std::vector<std::vector<mpq_class>> f;   // f[i][j] = f_i(U_j), 1-based, 0 rows for undefined layers
        std::vector<int> j;                      // j_i, 0 when undefined or f_i(U_1) < 0.99
        std::vector<bool> defined;
        std::vector<int> monotonicity_violations;    // i with j_{i+1} < j_i
        std::vector<int> jump_violations;            // i with j_{i+2} <= j_i
        bool embedding_valid = false;
        auto violated() const -> bool
        {
            return ! monotonicity_violations.empty() || ! jump_violations.empty();
        }
    };

    // phi[v] = -1 for undefined vertices; each layer must be wholly defined or wholly undefined.
    auto front_index_diagnostic(const Digraph & g, const Layering & layering, const Tournament & t,
                                const std::vector<VertexSet> & parts, const std::vector<int> & phi) -> FrontIndexTable;

    enum class NoEmbeddingVerdict
    {
        ExactNotFound,
        Inconclusive,
        Found
    };

    auto no_embedding_verdict_name(NoEmbeddingVerdict v) -> std::string;

    struct NoEmbeddingResult
    {
        NoEmbeddingVerdict verdict = NoEmbeddingVerdict::Inconclusive;
        long long nodes = 0;
        Embedding embedding;
    };

    auto verify_no_embedding(const Digraph & g, const Tournament & t, long long budget = unlimited_budget) -> NoEmbeddingResult;

    // First census class on k vertices with no copy of g.
    auto census_free_host(const Digraph & g, int k) -> std::optional<Tournament>;

    struct ToyLowerBound
    {
        BipartiteGuest d0;
        Tournament r;
        Digraph g;
        Layering layering;
        BlowupResult host;
    };

    // oriented K_{2,2}, a 5-vertex host free of it, height h, host with lower_host_layers(h) copies
    auto toy_lower_bound(int h = 4) -> ToyLowerBound;
}
