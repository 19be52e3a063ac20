#include <rlab/communities.hpp>
#include <rlab/lowerbound.hpp>
#include <rlab/ramsey.hpp>
#include <rlab/tournament.hpp>

#include <benchmark/benchmark.h>

#include <numeric>

using namespace rlab;

namespace
{
    // Adjacency points into the tournament, so the case owns it
    struct CommunityCase
    {
        Tournament t;
        CommunitySpec spec;
    };

    auto community_case(int n) -> CommunityCase
    {
        auto t = random_tournament(n, 11);
        CommunitySpec spec;
        std::vector<int> a(n / 2), r(n - n / 2);
        std::iota(a.begin(), a.end(), 0);
        std::iota(r.begin(), r.end(), n / 2);
        spec.A = VertexSet::from_list(n, a);
        spec.C = VertexSet(n);
        spec.R = VertexSet::from_list(n, r);
        spec.delta = 3;
        spec.s = 2;
        return {std::move(t), spec};
    }

    void bm_community(benchmark::State & state)
    {
        auto c = community_case(int(state.range(0)));
        auto adj = adjacency(c.t, Direction::Out);
        for (auto _ : state)
            benchmark::DoNotOptimize(is_community(adj, c.spec).bad_count);
    }

    void bm_community_serial(benchmark::State & state)
    {
        auto c = community_case(int(state.range(0)));
        auto adj = adjacency(c.t, Direction::Out);
        for (auto _ : state)
            benchmark::DoNotOptimize(is_community_serial(adj, c.spec).bad_count);
    }

    void bm_host_check(benchmark::State & state)
    {
        auto t = random_tournament(int(state.range(0)), 3);
        for (auto _ : state)
            benchmark::DoNotOptimize(check_host_property_exact(t, mpq_class(2)).worst_w);
    }

    void bm_host_check_serial(benchmark::State & state)
    {
        auto t = random_tournament(int(state.range(0)), 3);
        for (auto _ : state)
            benchmark::DoNotOptimize(check_host_property_exact_serial(t, mpq_class(2)).worst_w);
    }

    auto median_case(int n) -> std::pair<Tournament, std::vector<int>>
    {
        auto t = random_tournament(n, 5);
        auto m = median_order_local(t, 5);
        return {t, m.order};
    }

    void bm_median_certificate(benchmark::State & state)
    {
        auto [t, order] = median_case(int(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(verify_median_certificate(t, order));
    }

    void bm_median_certificate_serial(benchmark::State & state)
    {
        auto [t, order] = median_case(int(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(verify_median_certificate_serial(t, order));
    }

    void bm_universality(benchmark::State & state)
    {
        auto census = enumerate_tournaments(int(state.range(0)));
        auto g = oriented_path(int(state.range(0)), 0b1010101);
        for (auto _ : state)
            benchmark::DoNotOptimize(universality_check(g, census, true).universal);
    }

    void bm_universality_serial(benchmark::State & state)
    {
        auto census = enumerate_tournaments(int(state.range(0)));
        auto g = oriented_path(int(state.range(0)), 0b1010101);
        for (auto _ : state)
            benchmark::DoNotOptimize(universality_check(g, census, false).universal);
    }
}

BENCHMARK(bm_community)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_community_serial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_host_check)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_host_check_serial)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_median_certificate)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_median_certificate_serial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK(bm_universality)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_universality_serial)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
