#include <catch_amalgamated.hpp>

#include <rlab/error.hpp>
#include <rlab/io.hpp>
#include <rlab/rng.hpp>
#include <rlab/tournament.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace rlab;

namespace
{
    auto three_cycle() -> Tournament
    {
        Tournament t(3);
        t.orient(2, 0);
        return t;
    }

    auto all_orders_best(const Tournament & t) -> long long
    {
        std::vector<int> order(t.n());
        std::iota(order.begin(), order.end(), 0);
        long long best = 0;
        do
            best = std::max(best, count_forward_edges(t, order));
        while (std::next_permutation(order.begin(), order.end()));
        return best;
    }

    // direct reading of the certificate: for all i and p != i the prefix/suffix in-degree bound
    auto certificate_by_definition(const Tournament & t, const std::vector<int> & order) -> bool
    {
        int n = int(order.size());
        for (int i = 0; i < n; ++i)
            for (int p = 0; p < n; ++p) {
                if (p == i)
                    continue;
                int lo = std::min(p, i), hi = std::max(p, i), count = 0, len = hi - lo;
                for (int q = lo; q <= hi; ++q) {
                    if (q == i)
                        continue;
                    if (p < i && t.has_edge(order[q], order[i]))
                        ++count;
                    if (p > i && t.has_edge(order[i], order[q]))
                        ++count;
                }
                if (2 * count < len)
                    return false;
            }
        return true;
    }

    auto tournament_from_code(int n, long code) -> Tournament
    {
        Tournament t(n);
        int bit = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++bit)
                if ((code >> bit) & 1)
                    t.orient(j, i);
        return t;
    }

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
}

TEST_CASE("random and transitive tournaments")
{
    CHECK(random_tournament(1, 9).out(0).empty());
    CHECK(random_tournament(3, 42) == random_tournament(3, 42));
    CHECK(random_tournament(40, 1).is_complete());

    double mean = 1000.0 * 999 / 4, sigma = std::sqrt(1000.0 * 999 / 2 / 4);
    std::vector<int> identity(1000);
    std::iota(identity.begin(), identity.end(), 0);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto forward = double(count_forward_edges(random_tournament(1000, seed), identity));
        CHECK(std::abs(forward - mean) <= 3 * sigma + 1);
    }

    auto tt2 = transitive_tournament(2);
    CHECK(tt2.has_edge(0, 1));
    auto tt4 = transitive_tournament(4);
    CHECK(count_forward_edges(tt4, {0, 1, 2, 3}) == 6);
    for (int n = 1; n <= 12; ++n) {
        auto m = median_order_local(transitive_tournament(n), std::uint64_t(n));
        CHECK(m.forward_edges == n * (n - 1) / 2);
    }
}

TEST_CASE("blowup and layered tournaments")
{
    auto single = blowup(transitive_tournament(1), 3, [](int) { return three_cycle(); });
    CHECK(single.tournament == three_cycle());

    auto tt = blowup(transitive_tournament(2), 2, [](int) { return transitive_tournament(2); });
    CHECK(tt.tournament == transitive_tournament(4));

    for (int k = 1; k <= 5; ++k)
        for (int part = 1; part <= 4; ++part) {
            auto pattern = random_tournament(k, std::uint64_t(10 * k + part));
            auto b = blowup_random_inner(pattern, part, 3);
            REQUIRE(b.tournament.is_complete());
            for (int u = 0; u < k * part; ++u)
                for (int v = 0; v < k * part; ++v)
                    if (u / part != v / part)
                        CHECK(b.tournament.has_edge(u, v) == pattern.has_edge(u / part, v / part));
        }

    auto r = three_cycle();
    CHECK(layered_tournament(r, 1).tournament == r);
    auto layered = layered_tournament(r, 2);
    REQUIRE(layered.tournament.n() == 6);
    for (int u = 0; u < 6; ++u)
        for (int v = 0; v < 6; ++v) {
            if (u == v)
                continue;
            if (u / 3 < v / 3)
                CHECK(layered.tournament.has_edge(u, v));
            else if (u / 3 == v / 3)
                CHECK(layered.tournament.has_edge(u, v) == r.has_edge(u % 3, v % 3));
        }
    CHECK(layered.tournament.has_edge(0, 3));
}

TEST_CASE("median orders")
{
    auto cyc = three_cycle();
    CHECK(median_order_local(cyc, 1).forward_edges == 2);
    CHECK(median_order_exact(cyc).forward_edges == 2);
    CHECK(all_orders_best(cyc) == 2);
    CHECK(median_order_exact(transitive_tournament(6)).forward_edges == 15);
    CHECK(kind_of([] { median_order_exact(random_tournament(15, 1)); }) == ErrorKind::TooLarge);

    // every labelled tournament on 5 vertices covers all 12 isomorphism classes
    for (long code = 0; code < (1L << 10); ++code) {
        auto t = tournament_from_code(5, code);
        auto exact = median_order_exact(t);
        auto local = median_order_local(t, std::uint64_t(code));
        CHECK(exact.forward_edges == all_orders_best(t));
        CHECK(local.forward_edges <= exact.forward_edges);
        CHECK(local.certificate);
        CHECK(exact.certificate);
    }

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto t = random_tournament(200, seed);
        auto m = median_order_local(t, seed);
        CHECK(m.certificate);
        CHECK(verify_median_certificate_serial(t, m.order));
        std::vector<int> identity(200);
        std::iota(identity.begin(), identity.end(), 0);
        CHECK(m.forward_edges >= count_forward_edges(t, identity));
    }

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto t = random_tournament(9, seed);
        auto m = median_order_local(t, seed);
        CHECK(certificate_by_definition(t, m.order));
        std::vector<int> shuffled = m.order;
        Rng rng(seed);
        rng.shuffle(shuffled);
        CHECK(verify_median_certificate(t, shuffled) == certificate_by_definition(t, shuffled));
        CHECK(verify_median_certificate_serial(t, shuffled) == certificate_by_definition(t, shuffled));
    }
}

TEST_CASE("interval density")
{
    auto tt = transitive_tournament(20);
    auto mt = median_order_local(tt, 1);
    auto a = interval_set(mt, 11, 14);
    CHECK(interval_density(tt, mt, 5, 11, a).density == 1);

    auto r = random_tournament(10, 2);
    auto mr = median_order_local(r, 2);
    CHECK(kind_of([&] { interval_density(r, mr, 1, 5, VertexSet(10)); }) == ErrorKind::HypothesisViolation);
    CHECK(kind_of([&] { interval_density(r, mr, 5, 5, interval_set(mr, 6, 7)); }) == ErrorKind::HypothesisViolation);
    CHECK(kind_of([&] { interval_density(r, mr, 3, 6, interval_set(mr, 4, 5)); }) == ErrorKind::HypothesisViolation);

    Rng rng(77);
    int trials = 0;
    for (std::uint64_t seed = 0; trials < 1000; ++seed) {
        auto t = random_tournament(100, seed);
        auto m = median_order_local(t, seed);
        REQUIRE(m.certificate);
        for (int rep = 0; rep < 50 && trials < 1000; ++rep, ++trials) {
            int width = 1 + int(rng.below(20));
            int j = 2 * width + 1 + int(rng.below(100 - 3 * width - 1));
            VertexSet target(100);
            for (int p = j; p < j + width; ++p)
                if (rng.coin())
                    target.insert(m.order[p - 1]);
            if (target.empty())
                target.insert(m.order[j - 1]);
            auto result = interval_density(t, m, j - 2 * width, j, target);
            REQUIRE(result.guaranteed.has_value());
            CHECK(*result.guaranteed >= mpq_class(1, 4));
            CHECK(result.density >= mpq_class(1, 4));
            CHECK(result.density >= *result.guaranteed);
        }
    }
}

TEST_CASE("common neighbourhoods")
{
    auto t = transitive_tournament(6);
    auto all = VertexSet::full(6);
    CHECK(common_out_neighborhood(t, VertexSet(6), all) == all);
    CHECK(common_out_neighborhood(t, VertexSet::from_list(6, {0}), all) == VertexSet::from_list(6, {1, 2, 3, 4, 5}));

    auto r = random_tournament(64, 5);
    Rng rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        VertexSet s(64);
        while (s.size() < 3)
            s.insert(int(rng.below(64)));
        auto fast_out = common_out_neighborhood(r, s, VertexSet::full(64));
        auto fast_in = common_in_neighborhood(r, s, VertexSet::full(64));
        for (int v = 0; v < 64; ++v) {
            bool out_all = true, in_all = true;
            s.for_each([&](int x) {
                out_all = out_all && r.has_edge(x, v);
                in_all = in_all && r.has_edge(v, x);
            });
            CHECK(fast_out.contains(v) == out_all);
            CHECK(fast_in.contains(v) == in_all);
        }
    }
}

TEST_CASE("TOURN format")
{
    for (int n : {1, 2, 3, 5, 8, 13, 40}) {
        auto t = random_tournament(n, std::uint64_t(n));
        auto text = write_tourn(t);
        CHECK(read_tourn(text) == t);
        CHECK(write_tourn(read_tourn(text)) == text);
    }
    CHECK(write_tourn(transitive_tournament(3)) == "TOURN 1\n3\ne\n");
    CHECK(write_tourn(three_cycle()) == "TOURN 1\n3\na\n");
    CHECK(kind_of([] { read_tourn("TOURN 1\n3\nf\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { read_tourn("TOURN 1\n3\nee\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { read_tourn("TOURN 1\n3\ng\n"); }) == ErrorKind::ParseError);
    CHECK(tournament_dot(three_cycle()).find("2 -> 0") != std::string::npos);
}
