#include <catch_amalgamated.hpp>

#include <rlab/error.hpp>
#include <rlab/lowerbound.hpp>
#include <rlab/rng.hpp>

#include <cmath>
#include <functional>
#include <numeric>

using namespace rlab;

namespace
{
    auto kind_of(const std::function<void()> & f) -> ErrorKind
    {
        try {
            f();
        }
        catch (const Error & e) {
            return e.kind();
        }
        FAIL("expected an rlab::Error");
        return ErrorKind::IoError;
    }

    auto random_bipartite(int side, double p, std::uint64_t seed) -> BipartiteGuest
    {
        Rng rng(seed);
        std::vector<std::pair<int, int>> es;
        for (int a = 0; a < side; ++a)
            for (int b = 0; b < side; ++b)
                if (rng.unit() < p)
                    es.emplace_back(a, side + b);
        BipartiteGuest g;
        g.graph = Digraph(2 * side, std::move(es));
        g.side = side;
        return g;
    }

    auto from_edges(int side, const std::vector<std::pair<int, int>> & es) -> BipartiteGuest
    {
        BipartiteGuest g;
        g.graph = Digraph(2 * side, es);
        g.side = side;
        return g;
    }

    // every pair of t-subsets, directly
    auto property2_oracle(const BipartiteGuest & h, int t) -> bool
    {
        const int n = h.side;
        std::vector<std::uint32_t> nb(n, 0);
        for (auto [u, v] : h.graph.edges())
            nb[u] |= 1u << (v - n);
        for (std::uint32_t xm = 0; xm < (1u << n); ++xm) {
            if (std::popcount(xm) != t)
                continue;
            std::uint32_t reach = 0;
            for (int a = 0; a < n; ++a)
                if (xm >> a & 1)
                    reach |= nb[a];
            for (std::uint32_t ym = 0; ym < (1u << n); ++ym)
                if (std::popcount(ym) == t && ! (reach & ym))
                    return false;
        }
        return true;
    }

    // all (k+1)^{2n} labelings, sum recomputed from scratch
    auto property1_oracle(const BipartiteGuest & h, const Property1Params & p) -> long
    {
        const int n = h.side;
        const int base = p.k + 1;
        long total = 1;
        for (int i = 0; i < 2 * n; ++i)
            total *= base;
        long best = -1;
        std::vector<int> lx(n), ly(n);
        for (long code = 0; code < total; ++code) {
            long c = code;
            std::vector<int> cx(base, 0), cy(base, 0);
            for (int i = 0; i < n; ++i) {
                lx[i] = int(c % base);
                c /= base;
                ++cx[lx[i]];
            }
            for (int i = 0; i < n; ++i) {
                ly[i] = int(c % base);
                c /= base;
                ++cy[ly[i]];
            }
            bool ok = cx[0] <= p.leftover_max && cy[0] <= p.leftover_max;
            for (int i = 1; i < base; ++i)
                ok = ok && cx[i] <= p.part_max && cy[i] <= p.part_max;
            if (! ok)
                continue;
            long s = 0;
            for (int i = 1; i < base; ++i)
                for (int j = 1; j < base; ++j) {
                    if (i == j)
                        continue;
                    bool edge = false;
                    for (auto [u, v] : h.graph.edges())
                        edge = edge || (lx[u] == i && ly[v - n] == j);
                    if (edge)
                        s += long(cx[i]) * cy[j];
                }
            if (best < 0 || s < best)
                best = s;
        }
        return best;
    }

    // max W over f, g: each vertex full-f, full-g or empty, then at most two fractional coordinates;
    // doubles, weights summed edge by edge
    auto host_oracle(const Tournament & r, double x) -> double
    {
        const int k = r.n();
        const double two_x = 2 * x;
        std::vector<int> lab(k, 0);
        double best = -1;
        long total = 1;
        for (int i = 0; i < k; ++i)
            total *= 3;
        for (long code = 0; code < total; ++code) {
            long c = code;
            int t = 0, s = 0;
            for (int i = 0; i < k; ++i) {
                lab[i] = int(c % 3);
                c /= 3;
                t += lab[i] == 1;
                s += lab[i] == 2;
            }
            double rem = two_x - t - s;
            if (rem < -1e-12 || rem >= 2 - 1e-12)
                continue;
            std::vector<double> f(k, 0), g(k, 0);
            for (int i = 0; i < k; ++i) {
                f[i] = lab[i] == 1;
                g[i] = lab[i] == 2;
            }
            auto weight = [&] {
                double w = 0;
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        if (r.has_edge(i, j))
                            w += f[i] * g[j];
                return w;
            };
            if (rem < 1e-12) {
                best = std::max(best, weight());
                continue;
            }
            std::vector<int> empty;
            for (int i = 0; i < k; ++i)
                if (lab[i] == 0)
                    empty.push_back(i);
            // fine grid plus the closed-form interior point
            auto try_split = [&](int i0, int j0) {
                double lo = std::max(0.0, rem - 1), hi = std::min(1.0, rem);
                if (j0 < 0)
                    lo = hi = rem;
                if (i0 < 0)
                    lo = hi = 0;
                std::vector<double> alphas{lo, hi};
                for (int step = 1; step < 64; ++step)
                    alphas.push_back(lo + (hi - lo) * step / 64.0);
                if (i0 >= 0 && j0 >= 0 && r.has_edge(i0, j0)) {
                    double a = 0, b = 0;
                    for (int j = 0; j < k; ++j)
                        a += r.has_edge(i0, j) * g[j];
                    for (int i = 0; i < k; ++i)
                        b += r.has_edge(i, j0) * f[i];
                    double v = (a - b + rem) / 2;
                    if (v > lo && v < hi)
                        alphas.push_back(v);
                }
                for (double al : alphas) {
                    if (i0 >= 0)
                        f[i0] = al;
                    if (j0 >= 0)
                        g[j0] = rem - al;
                    best = std::max(best, weight());
                    if (i0 >= 0)
                        f[i0] = 0;
                    if (j0 >= 0)
                        g[j0] = 0;
                }
            };
            for (int i0 : empty) {
                if (rem <= 1 + 1e-12) {
                    try_split(i0, -1);
                    try_split(-1, i0);
                }
                for (int j0 : empty)
                    if (i0 != j0)
                        try_split(i0, j0);
            }
        }
        return best;
    }

    auto to_double(const mpq_class & q) -> double
    {
        return q.get_d();
    }
}

TEST_CASE("guest rounding and degree guarantee")
{
    LowerBoundProfile prof;
    GuestParams gp{300, 202, prof};
    auto r = guest_rounding(gp);
    CHECK(r.m == 303);
    CHECK(r.d == 2);
    CHECK(r.removed == 3);
    CHECK_FALSE(r.degenerate);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto g = random_guest_bipartite(gp, seed);
        CHECK(g.edges_before_removal == 606);
        CHECK(g.side == 300);
        CHECK(g.graph.n() == 600);
        CHECK(max_total_degree(g.graph) <= 202);
        for (auto [u, v] : g.graph.edges()) {
            CHECK(u < 300);
            CHECK(v >= 300);
        }
    }
    auto small = guest_rounding(GuestParams{40, 3, prof});
    CHECK(small.degenerate);
    CHECK(small.removed == 0);
    auto g = random_guest_bipartite(GuestParams{40, 3, prof}, 1);
    CHECK(max_total_degree(g.graph) <= 3);
    CHECK(g.edges_before_removal == 40);

    CHECK(kind_of([&] { guest_rounding(GuestParams{100, 1, prof}); }) == ErrorKind::InfeasibleParams);
    LowerBoundProfile bad;
    bad.c0 = mpq_class(5, 4);
    bad.c1 = mpq_class(6, 5);
    CHECK(kind_of([&] { random_guest_bipartite(GuestParams{300, 202, bad}, 1); }) == ErrorKind::InfeasibleParams);
}

TEST_CASE("guest property 2 on extreme and random instances")
{
    auto full = complete_bipartite_guest(20);
    auto rep = check_guest_property2(full, mpq_class(1, 100), CheckMode::Exact);
    CHECK(rep.pass);
    CHECK(rep.mode == CheckMode::Exact);

    auto empty = from_edges(20, {});
    rep = check_guest_property2(empty, mpq_class(1, 10), CheckMode::Exact);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.witness_x.size() == 2);
    CHECK(rep.witness_y.size() >= 2);
    CHECK_FALSE(check_guest_property2(empty, mpq_class(1, 10), CheckMode::Sampled, 0, 10, 1).pass);

    int passes = 0;
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        double p = 0.55 + 0.025 * double(seed);
        auto h = random_bipartite(20, p, seed);
        auto ex = check_guest_property2(h, mpq_class(3, 20), CheckMode::Exact);
        CHECK(ex.pass == property2_oracle(h, 3));
        passes += ex.pass;
        if (! ex.pass) {
            // the witness is an empty rectangle of the right size
            for (auto [u, v] : h.graph.edges()) {
                bool in_x = std::find(ex.witness_x.begin(), ex.witness_x.end(), u) != ex.witness_x.end();
                bool in_y = std::find(ex.witness_y.begin(), ex.witness_y.end(), v) != ex.witness_y.end();
                CHECK_FALSE((in_x && in_y));
            }
        }
        // sampling never contradicts a pass
        if (ex.pass)
            CHECK(check_guest_property2(h, mpq_class(3, 20), CheckMode::Sampled, 0, 200, seed).pass);
    }
    CHECK(passes > 0);
    CHECK(passes < 16);
    CHECK(kind_of([&] { check_guest_property2(full, mpq_class(1, 2), CheckMode::Exact, 1000); }) == ErrorKind::TooLarge);
}

TEST_CASE("guest property 1 exact minimum matches full enumeration")
{
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto h = random_bipartite(4, 0.5, 100 + seed);
        Property1Params p{2, 3, 1};
        auto ex = check_guest_property1_exact(h, p);
        CHECK(ex.minimum == property1_oracle(h, p));
        CHECK(partition_cross_sum(h, 2, ex.label_x, ex.label_y) == ex.minimum);
        auto sm = check_guest_property1_sampled(h, p, 30, seed);
        CHECK(sm.minimum == ex.minimum);
    }
}

TEST_CASE("guest property 1 verdicts")
{
    // K_{6,6} with three parts of two: every off-diagonal pair is joined
    auto full = complete_bipartite_guest(6);
    Property1Params p{3, 2, 0};
    auto ex = check_guest_property1_exact(full, p);
    CHECK(ex.minimum == 24);
    CHECK(ex.pass);

    // two isolated halves: X_i, Y_i on the same half leave no off-diagonal edge
    std::vector<std::pair<int, int>> es;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            es.emplace_back(a, 6 + b);
            es.emplace_back(3 + a, 9 + b);
        }
    auto split = from_edges(6, es);
    Property1Params q{2, 3, 0};
    auto ex2 = check_guest_property1_exact(split, q);
    CHECK(ex2.minimum == 0);
    CHECK_FALSE(ex2.pass);
    auto sm2 = check_guest_property1_sampled(split, q, 20, 3);
    CHECK(sm2.minimum == 0);
    CHECK_FALSE(sm2.pass);

    // a single part never has an off-diagonal pair
    Property1Params one{1, 6, 0};
    CHECK(check_guest_property1_exact(full, one).minimum == 0);

    // parts too small to cover the side: no admissible partition
    Property1Params tight{2, 2, 0};
    CHECK(check_guest_property1_exact(full, tight).mode == CheckMode::Vacuous);
    CHECK(kind_of([&] { check_guest_property1_exact(complete_bipartite_guest(20), p); }) == ErrorKind::TooLarge);
}

TEST_CASE("host check rejects the transitive tournament")
{
    auto t = transitive_tournament(12);
    auto rep = check_host_property_exact(t, mpq_class(4));
    CHECK(rep.worst_w == 16);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.reduction_pass);
    std::vector<mpq_class> f(12, 0), g(12, 0);
    for (int i = 0; i < 4; ++i) {
        f[i] = 1;
        g[4 + i] = 1;
    }
    CHECK(host_weight(t, f, g) == 16);
}

TEST_CASE("host check agrees with the continuous oracle")
{
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto r = random_host_tournament(10, 500 + seed);
        for (auto x : {mpq_class(2), mpq_class(7, 4), mpq_class(5, 2)}) {
            auto rep = check_host_property_exact(r, x);
            double oracle = host_oracle(r, to_double(x));
            CHECK(std::abs(to_double(rep.worst_w) - oracle) < 1e-9);
            CHECK(rep.pass == (oracle <= 0.51 * to_double(x) * to_double(x) + 1e-12));

            // the reported witness reproduces worst_w
            std::vector<mpq_class> f(10, 0), g(10, 0);
            for (int i : rep.worst_t)
                f[i] = 1;
            for (int j : rep.worst_s)
                g[j] = 1;
            if (rep.i0 >= 0)
                f[rep.i0] = rep.f_i0;
            if (rep.j0 >= 0)
                g[rep.j0] = rep.g_j0;
            mpq_class mass = 0;
            for (int i = 0; i < 10; ++i)
                mass += f[i] + g[i];
            CHECK(mass == 2 * x);
            CHECK(host_weight(r, f, g) == rep.worst_w);

            auto serial = check_host_property_exact_serial(r, x);
            CHECK(serial.worst_w == rep.worst_w);
            CHECK(serial.worst_t == rep.worst_t);
            CHECK(serial.worst_s == rep.worst_s);
            CHECK(serial.reduction_pass == rep.reduction_pass);

            auto sampled = check_host_property_sampled(r, x, 300, seed);
            CHECK(sampled.worst_w <= rep.worst_w);
        }
    }
}

TEST_CASE("host check is invariant under relabelling")
{
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto r = random_host_tournament(11, 900 + seed);
        std::vector<int> perm(11);
        std::iota(perm.begin(), perm.end(), 0);
        Rng rng(seed);
        rng.shuffle(perm);
        auto rp = r.induced(perm);
        auto a = check_host_property_exact(r, mpq_class(3));
        auto b = check_host_property_exact(rp, mpq_class(3));
        CHECK(a.worst_w == b.worst_w);
        CHECK(a.pass == b.pass);
        CHECK(a.reduction_pass == b.reduction_pass);
    }
}

TEST_CASE("host check is vacuous when 2x exceeds k")
{
    auto r = random_host_tournament(10, 1);
    auto rep = check_host_property_exact(r, mpq_class(11, 2));
    CHECK(rep.mode == CheckMode::Vacuous);
    CHECK(rep.pass);
    CHECK(check_host_property_sampled(r, mpq_class(6), 10, 1).mode == CheckMode::Vacuous);
}

TEST_CASE("D0 and R construction")
{
    LowerBoundProfile prof;
    auto small = build_D0_and_R(2, 2, prof, 7);
    CHECK(small.provenance.branch == LowerBranch::Small);
    CHECK(small.d0.side == 2);
    CHECK(small.d0.graph.edges().size() == 4);

    // 0.98 n >= 2 (3/2)^4 = 10.125 first holds at n = 11
    CHECK_FALSE(large_branch(10, 4, prof.c0));
    CHECK(large_branch(11, 4, prof.c0));
    for (long n = 1; n < 40; ++n)
        CHECK(large_branch(n, 4, prof.c0) == (mpq_class(98 * n, 100) >= 2 * mpq_class(81, 16)));

    auto large = build_D0_and_R(20, 4, prof, 3);
    CHECK(large.provenance.branch == LowerBranch::Large);
    CHECK(large.provenance.k == 5);
    CHECK(large.provenance.part_size == 9);
    CHECK(large.r.n() == 45);
    REQUIRE(large.parts.size() == 5);
    for (auto & part : large.parts)
        CHECK(part.size() == large.r.n() / 5);
    CHECK(max_total_degree(large.d0.graph) <= 4);
    CHECK(large.r.is_complete());

    CHECK(kind_of([&] { build_D0_and_R(1, 3, prof, 1); }) == ErrorKind::InfeasibleParams);
}

TEST_CASE("small branch hosts avoid the dense guest")
{
    LowerBoundProfile prof;
    for (int delta = 1; delta <= 3; ++delta) {
        auto pr = build_D0_and_R(delta, delta, prof, 11);
        REQUIRE(pr.provenance.branch == LowerBranch::Small);
        CHECK(small_branch_holds(pr.d0, pr.r));
    }
    auto toy = toy_lower_bound();
    CHECK(small_branch_holds(toy.d0, toy.r));
    CHECK_FALSE(small_branch_holds(toy.d0, transitive_tournament(6)));

    LowerBoundProfile over;
    over.small_host = toy.r;
    auto pr = build_D0_and_R(2, 2, over, 1);
    CHECK(pr.provenance.host_overridden);
    CHECK(pr.r == toy.r);
}

TEST_CASE("height-h guest and lower host")
{
    auto d0 = complete_bipartite_guest(3);
    auto [g2, l2] = build_height_h_guest(d0, 2);
    CHECK(g2.edges() == d0.graph.edges());
    auto [g, L] = build_height_h_guest(d0, 4);
    CHECK(g.n() == 12);
    CHECK(g.edges().size() == 3 * 9);
    CHECK(max_total_degree(g) <= 2 * max_total_degree(d0.graph));
    auto cl = compute_layering(g);
    CHECK(cl.w == 1);
    CHECK(cl.H == 4);
    CHECK(layering_valid(g, L));

    CHECK(lower_host_layers(2) == 1);
    CHECK(lower_host_layers(4) == 1);
    CHECK(lower_host_layers(6) == 2);
    CHECK(lower_host_layers(10) == 4);
    auto host = build_lower_host(transitive_tournament(3), 2);
    CHECK(host.tournament.n() == 6);
}

TEST_CASE("front index on layered maps")
{
    auto d0 = complete_bipartite_guest(2);
    auto [g, L] = build_height_h_guest(d0, 6);
    auto host = build_lower_host(random_tournament(4, 2), 3);
    // V_i wholly into part ceil(i/2)
    std::vector<int> phi(g.n());
    std::vector<int> used(3, 0);
    for (int v = 0; v < g.n(); ++v) {
        int part = (L.layer_of[v] + 1) / 2 - 1;
        phi[v] = host.parts[part].to_vector()[used[part]++];
    }
    auto tab = front_index_diagnostic(g, L, host.tournament, host.parts, phi);
    for (int i = 1; i <= 6; ++i)
        CHECK(tab.j[i] == (i + 1) / 2);
    CHECK(tab.jump_violations.empty());
    CHECK(tab.monotonicity_violations.empty());

    std::vector<int> none(g.n(), -1);
    CHECK(kind_of([&] { front_index_diagnostic(g, L, host.tournament, host.parts, none); }) == ErrorKind::PartialLayers);
    auto partial = phi;
    partial[0] = -1;
    CHECK(kind_of([&] { front_index_diagnostic(g, L, host.tournament, host.parts, partial); }) == ErrorKind::PartialLayers);

    // reversed order of layers: monotonicity breaks
    for (int v = 0; v < g.n(); ++v) {
        int part = 2 - ((L.layer_of[v] + 1) / 2 - 1);
        phi[v] = host.parts[part].to_vector()[v % 4 % 4];
    }
    auto rev = front_index_diagnostic(g, L, host.tournament, host.parts, phi);
    CHECK_FALSE(rev.monotonicity_violations.empty());
}

TEST_CASE("no embedding verification")
{
    Tournament cyclic(3);
    cyclic.orient(2, 0);
    CHECK(verify_no_embedding(transitive_digraph(3), cyclic).verdict == NoEmbeddingVerdict::ExactNotFound);
    CHECK(verify_no_embedding(transitive_digraph(3), transitive_tournament(3)).verdict == NoEmbeddingVerdict::Found);

    auto toy = toy_lower_bound(4);
    CHECK(toy.r.n() == 5);
    CHECK(toy.host.tournament.n() == 5);
    CHECK(verify_no_embedding(toy.g, toy.host.tournament).verdict == NoEmbeddingVerdict::ExactNotFound);

    // ten layers against four copies of R: as many host vertices as guest vertices
    auto tall = toy_lower_bound(10);
    CHECK(tall.host.tournament.n() == tall.g.n());
    auto res = verify_no_embedding(tall.g, tall.host.tournament);
    CHECK(res.verdict == NoEmbeddingVerdict::ExactNotFound);
    CHECK(verify_no_embedding(tall.g, tall.host.tournament, 5).verdict == NoEmbeddingVerdict::Inconclusive);

    // every attempted total map of the tall instance trips a front-index claim
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        std::vector<int> perm(tall.g.n());
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        auto tab = front_index_diagnostic(tall.g, tall.layering, tall.host.tournament, tall.host.parts, perm);
        CHECK_FALSE(tab.embedding_valid);
        CHECK(tab.violated());
    }
}
