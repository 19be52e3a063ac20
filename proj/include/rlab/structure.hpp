#pragma once

#include <rlab/bignum.hpp>
#include <rlab/communities.hpp>
#include <rlab/digraph.hpp>
#include <rlab/tournament.hpp>
#include <rlab/vertex_set.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rlab
{
    // Unset fields take the full-scale values for the given (Delta, w).
    struct StructureOverrides
    {
        std::optional<mpq_class> c_m;            // 3^{30 Delta w}
        std::optional<mpq_class> c_b;            // 3^{6 Delta w}
        std::optional<mpq_class> c_a;            // 3^{10 Delta w}
        std::optional<mpq_class> c_top;          // 3^{3 Delta w}
        std::optional<int> k_outer;              // 2 Delta w draws for the first DRC call
        std::optional<int> k_inner;              // 2 Delta draws per inner DRC call
        std::optional<mpq_class> family_delta;   // 3^{-3 Delta}
        std::optional<mpq_class> drc_density;    // 1/3
        int drc_retries = 64;
        int step_attempts = 8;
        long long cap = default_enumeration_cap;
        long samples = 20000;
    };

    struct StructureConstants
    {
        mpq_class c_m, c_b, c_a, c_top;
        int k_outer = 0;
        int k_inner = 0;
        mpq_class family_delta, drc_density;
    };

    auto resolve_constants(int delta, int w, const StructureOverrides & overrides) -> StructureConstants;

    struct StructureParams
    {
        int delta = 1;
        int w = 1;
        int h = 1;
        std::vector<long> s;                     // s_1..s_h at indices 0..h-1
        Sqrt2Scaled strength{mpq_class(1, 2), 0};  // the delta of the certificate bound, in (0,1)
        StructureOverrides overrides;
    };

    struct StructureSchedule
    {
        StructureConstants constants;
        std::vector<mpz_class> m, b, a;          // indices 0..h-1
        mpz_class host_size;                     // sum 6 a_i
    };

    // m_i = ceil(c_m strength^{-1/Delta} s_i), b_i = ceil(c_b m_i), a_i = ceil(c_a b_i).
    // Checks s_i >= max(s_{i-1}, s_{i+1}) / 2 with missing neighbours read as 0.
    auto structure_schedule(const StructureParams & params) -> StructureSchedule;

    // delta (s / 2b)^Delta C(m/3, Delta)
    auto structure_certificate_bound(const Sqrt2Scaled & strength, long s, const mpz_class & b, const mpz_class & m, int delta)
        -> Sqrt2Scaled;

    struct DrcSummary
    {
        std::string stage;
        std::vector<int> draws;
        int target_size = 0;
        long long bad_count = 0;
        mpq_class bad_bound;
        bool exact = true;
        int retries_used = 0;
    };

    struct BackwardStepRequest
    {
        VertexSet I, B;
        int delta = 1;
        int w = 1;
        long s = 0;
        std::optional<long> b_out;               // |A|; defaults to |I| / c_a
        std::optional<long> m;                   // lower size bound; defaults to ceil(|B| / c_b)
        std::optional<long> top_cap;             // cap on |B_w|; defaults to |B| / c_top
        StructureOverrides overrides;
        std::uint64_t seed = 0;
    };

    struct BackwardStepResult
    {
        VertexSet A;
        std::vector<VertexSet> B_sub;            // B_0 .. B_w
        std::vector<VertexSet> K;                // K_0 .. K_w
        std::vector<CommunityCertificate> certificates;  // entry j-1: (A u B_{j-1}, 0) over B_j
        std::vector<DrcSummary> drc;
        long b_out = 0;
        long m = 0;
        int attempts = 0;
    };

    // With I empty the first DRC call is skipped: B_w is B capped at top_cap and no family is kept.
    auto backward_step(const Tournament & t, const BackwardStepRequest & request) -> BackwardStepResult;

    struct EmbeddingStructure
    {
        int delta = 0;
        int w = 0;
        int h = 0;
        std::vector<long> s;
        Sqrt2Scaled strength;
        StructureSchedule schedule;
        MedianOrder median;
        std::vector<int> offsets;                // o_1..o_h
        std::vector<int> interval_choice;        // l in [6] chosen for o_{i-1}, 0 for i = 1
        std::vector<VertexSet> B;                // B_1..B_h
        std::vector<std::vector<VertexSet>> B_sub;   // B_sub[i-1][j] = B_{i,j}
        std::vector<CommunityCertificate> certificates;  // layer-major, j-minor
        std::vector<DrcSummary> drc;
    };

    auto build_structure(const Tournament & t, const StructureParams & params, std::uint64_t seed) -> EmbeddingStructure;

    // A_1..A_H at indices 0..H-1
    auto rename_structure(const EmbeddingStructure & es, int H) -> std::vector<VertexSet>;
    auto rename_index(int i, int w) -> std::pair<int, int>;

    struct AuditReport
    {
        bool ok = true;
        std::vector<std::string> failures;
        int certificates_exact = 0;
        int certificates_sampled = 0;
    };

    auto audit_structure(const Tournament & t, const EmbeddingStructure & es, long long cap = default_enumeration_cap,
                         long samples = 20000) -> AuditReport;

    // graded variant

    struct GradedOverrides
    {
        std::optional<mpq_class> c_s;            // 32
        std::optional<mpq_class> c_b;            // 2000 Delta+ Delta- c_s
        std::optional<mpq_class> c_a;            // 2 c_b
        std::optional<int> ell;                  // 4 Delta- + 4
        int drc_retries = 64;
        int step_attempts = 8;
        long long cap = default_enumeration_cap;
        long samples = 20000;
    };

    struct GradedParams
    {
        int delta_out = 0;
        int delta_in = 0;
        std::vector<int> delta_in_layer;         // Delta-_0..Delta-_H
        std::vector<int> layer_sizes;            // |V_1|..|V_H| at 0..H-1
        mpq_class eps;
        int ell = 0;
        mpq_class c_s, c_b, c_a;
        std::vector<mpq_class> n;                // n_1..n_H at 0..H-1
        std::vector<mpz_class> a, b, s;          // rounded up
        std::vector<Sqrt2Scaled> strength;       // delta_1..delta_{H-1}, entry H-1 unused
        mpz_class host_size;                     // sum 2 l a_i
    };

    auto graded_params(const Digraph & g, const Layering & layering, const GradedOverrides & overrides = {}) -> GradedParams;

    struct GradedStepRequest
    {
        int o = 0;
        VertexSet B;
        long a = 0;
        long a_prime = 0;
        long b = 0;
        int ell = 0;
        int k = 0;
        long s = 0;
        int delta_in = 0;
        int retries = 64;
        long long cap = default_enumeration_cap;
        long samples = 20000;
        std::uint64_t seed = 0;
    };

    struct GradedStepResult
    {
        int o_prime = 0;
        int subinterval = 0;                     // i in [2 l]
        VertexSet A;
        mpq_class size_bound;                    // a'/2 ((l-1)/(2l))^k
        CommunityCertificate certificate;        // bound 4 (2l/(l-1))^k C(a', Delta-) (s/b)^k
        DrcSummary drc;
    };

    auto graded_backward_step(const Tournament & t, const MedianOrder & median, const GradedStepRequest & request)
        -> GradedStepResult;

    struct GradedStructure
    {
        GradedParams params;
        MedianOrder median;
        std::vector<int> offsets;                // o_1..o_H
        std::vector<VertexSet> A;                // A_1..A_H
        std::vector<CommunityCertificate> step_certificates;   // entry i-1: (A_i, 0) over A_{i+1}, step bound
        std::vector<CommunityCertificate> strength_certificates;  // same sets, bound delta_i C(|A_i|, Delta-_i)
        std::vector<DrcSummary> drc;
    };

    auto build_graded_structure(const Tournament & t, const Digraph & g, const Layering & layering,
                                const GradedOverrides & overrides, std::uint64_t seed) -> GradedStructure;

    auto audit_graded_structure(const Tournament & t, const GradedStructure & gs, long long cap = default_enumeration_cap,
                                long samples = 20000) -> AuditReport;
}
