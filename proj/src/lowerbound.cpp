#include <rlab/lowerbound.hpp>

#include <rlab/bignum.hpp>
#include <rlab/census.hpp>
#include <rlab/error.hpp>
#include <rlab/rng.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

#include <omp.h>

namespace rlab
{
    using std::vector;

    namespace
    {
        auto binom(long n, long k) -> mpz_class
        {
            return k < 0 || k > n ? mpz_class(0) : binomial(n, k);
        }

        // calls f on each k-subset of items, in lexicographic index order, until f returns false
        template <typename F>
        auto for_each_combination(const vector<int> & items, int k, F && f) -> void
        {
            int n = int(items.size());
            if (k > n)
                return;
            vector<int> idx(k);
            std::iota(idx.begin(), idx.end(), 0);
            vector<int> pick(k);
            while (true) {
                for (int i = 0; i < k; ++i)
                    pick[i] = items[idx[i]];
                if (! f(pick))
                    return;
                int i = k - 1;
                while (i >= 0 && idx[i] == n - k + i)
                    --i;
                if (i < 0)
                    return;
                ++idx[i];
                for (int j = i + 1; j < k; ++j)
                    idx[j] = idx[j - 1] + 1;
            }
        }

        auto a_side_neighbours(const BipartiteGuest & h) -> vector<VertexSet>
        {
            vector<VertexSet> nb(h.side, VertexSet(h.side));
            for (auto [u, v] : h.graph.edges())
                nb[u].insert(v - h.side);
            return nb;
        }
    }

    auto check_profile(const LowerBoundProfile & profile) -> void
    {
        require(profile.c1 > 1 && profile.c1 * profile.c1 < profile.c0, ErrorKind::InfeasibleParams,
                "profile needs 1 < c1^2 < c0");
    }

    auto guest_rounding(const GuestParams & params) -> GuestRounding
    {
        require(params.n >= 1 && params.delta >= 1, ErrorKind::InfeasibleParams, "n and Delta must be positive");
        GuestRounding r;
        r.d = (params.delta + 100) / 101;
        r.degenerate = params.n < 100;
        if (r.degenerate) {
            r.m = params.n;
            r.removed = 0;
        }
        else {
            r.m = (101 * params.n + 99) / 100;
            r.removed = r.m - params.n;
        }
        require(r.d <= r.m, ErrorKind::InfeasibleParams, "more edges than vertex pairs");
        // vertices of degree > Delta on one side number at most d m / (Delta + 1)
        if (! r.degenerate)
            require(r.d * r.m / (params.delta + 1) <= r.removed, ErrorKind::InfeasibleParams,
                    "removal cannot guarantee the degree bound");
        return r;
    }

    auto random_guest_bipartite(const GuestParams & params, std::uint64_t seed) -> BipartiteGuest
    {
        check_profile(params.profile);
        auto rounding = guest_rounding(params);
        const long m = rounding.m;
        const long edges = rounding.d * m;
        const int attempts = rounding.degenerate ? 64 : 1;
        for (int attempt = 0; attempt < attempts; ++attempt) {
            Rng rng(derive_seed(seed, attempt));
            // Floyd's sampler over the m^2 cells
            std::unordered_set<long long> cells;
            const long long total = (long long) m * m;
            for (long long j = total - edges; j < total; ++j) {
                auto t = (long long) rng.below(j + 1);
                if (! cells.insert(t).second)
                    cells.insert(j);
            }
            vector<long long> sorted(cells.begin(), cells.end());
            std::sort(sorted.begin(), sorted.end());
            vector<long> deg_a(m, 0), deg_b(m, 0);
            for (auto c : sorted) {
                ++deg_a[c / m];
                ++deg_b[c % m];
            }
            auto keep_side = [&](const vector<long> & deg) {
                vector<int> ids(m);
                std::iota(ids.begin(), ids.end(), 0);
                std::stable_sort(ids.begin(), ids.end(), [&](int x, int y) { return deg[x] > deg[y]; });
                vector<int> label(m, -1);
                vector<int> kept(ids.begin() + rounding.removed, ids.end());
                std::sort(kept.begin(), kept.end());
                for (size_t i = 0; i < kept.size(); ++i)
                    label[kept[i]] = int(i);
                return label;
            };
            auto la = keep_side(deg_a);
            auto lb = keep_side(deg_b);
            const int side = int(params.n);
            vector<std::pair<int, int>> es;
            for (auto c : sorted) {
                int a = la[c / m], b = lb[c % m];
                if (a >= 0 && b >= 0)
                    es.emplace_back(a, side + b);
            }
            BipartiteGuest g{Digraph(2 * side, std::move(es)), side, rounding, edges, attempt + 1};
            if (max_total_degree(g.graph) <= params.delta)
                return g;
            require(rounding.degenerate, ErrorKind::InfeasibleParams, "degree audit failed after removal");
        }
        fail(ErrorKind::InfeasibleParams, "no degenerate draw met the degree bound");
    }

    auto complete_bipartite_guest(int side) -> BipartiteGuest
    {
        require(side >= 1, ErrorKind::InfeasibleParams, "side must be positive");
        vector<std::pair<int, int>> es;
        for (int a = 0; a < side; ++a)
            for (int b = 0; b < side; ++b)
                es.emplace_back(a, side + b);
        GuestRounding r{side, side, 0, true};
        return BipartiteGuest{Digraph(2 * side, std::move(es)), side, r, long(side) * side, 1};
    }

    auto max_total_degree(const Digraph & g) -> int
    {
        int best = 0;
        for (int v = 0; v < g.n(); ++v)
            best = std::max(best, int(g.out_adj(v).size() + g.in_adj(v).size()));
        return best;
    }

    auto check_mode_name(CheckMode m) -> std::string
    {
        switch (m) {
            case CheckMode::Exact:
                return "exact";
            case CheckMode::Sampled:
                return "sampled";
            case CheckMode::Vacuous:
                return "vacuous";
        }
        return "?";
    }

    auto check_guest_property2(const BipartiteGuest & h, const mpq_class & alpha, CheckMode mode, long long cap, long samples,
                               std::uint64_t seed) -> Property2Report
    {
        require(alpha > 0 && alpha <= 1, ErrorKind::InfeasibleParams, "alpha must lie in (0, 1]");
        Property2Report rep;
        rep.mode = mode;
        const int side = h.side;
        const int t = int(ceil_q(alpha * side).get_si());
        rep.threshold = t;
        auto nb = a_side_neighbours(h);
        auto fail_with = [&](const vector<int> & xs, const VertexSet & free) {
            rep.pass = false;
            rep.witness_x = xs;
            rep.witness_y.clear();
            free.for_each([&](int y) { rep.witness_y.push_back(side + y); });
        };
        if (mode == CheckMode::Exact) {
            require(binom(side, t) <= long(cap), ErrorKind::TooLarge, "too many subsets for exact property check");
            // grow X' in index order; the free part of B only shrinks, so prune once it drops below t
            rep.pass = true;
            vector<int> xs;
            auto rec = [&](auto & self, int next, const VertexSet & free) -> bool {
                ++rep.examined;
                if (free.size() < t)
                    return true;
                if (int(xs.size()) == t) {
                    fail_with(xs, free);
                    return false;
                }
                for (int a = next; a <= side - (t - int(xs.size())); ++a) {
                    auto nf = free;
                    nf -= nb[a];
                    xs.push_back(a);
                    bool go = self(self, a + 1, nf);
                    xs.pop_back();
                    if (! go)
                        return false;
                }
                return true;
            };
            rec(rec, 0, VertexSet::full(side));
            return rep;
        }
        require(mode == CheckMode::Sampled, ErrorKind::InfeasibleParams, "unknown mode");
        Rng rng(seed);
        vector<int> ids(side);
        std::iota(ids.begin(), ids.end(), 0);
        rep.pass = true;
        for (long s = 0; s < samples; ++s) {
            rng.shuffle(ids);
            vector<int> xs(ids.begin(), ids.begin() + t);
            auto free = VertexSet::full(side);
            for (int a : xs)
                free -= nb[a];
            ++rep.examined;
            if (free.size() >= t) {
                std::sort(xs.begin(), xs.end());
                fail_with(xs, free);
                return rep;
            }
        }
        return rep;
    }

    auto property1_params(const BipartiteGuest & h, int delta, int k, const LowerBoundProfile & profile) -> Property1Params
    {
        check_profile(profile);
        Property1Params p;
        p.k = k;
        p.part_max = int(floor_q(pow_q(profile.c1 / profile.c0, delta) * h.side).get_si());
        p.leftover_max = int(floor_q(mpq_class(h.side, 50)).get_si());
        return p;
    }

    namespace
    {
        auto property1_threshold(int side) -> mpq_class
        {
            mpq_class t = mpq_class(55, 100) * mpq_class(98 * side, 100) * mpq_class(98 * side, 100);
            t.canonicalize();
            return t;
        }

        struct CrossEval
        {
            const BipartiteGuest & h;
            int k;
            vector<VertexSet> nb;

            auto sum(const vector<int> & lx, const vector<int> & ly) const -> long
            {
                vector<long> sx(k + 1, 0), sy(k + 1, 0);
                for (int l : lx)
                    ++sx[l];
                for (int l : ly)
                    ++sy[l];
                vector<char> conn((k + 1) * (k + 1), 0);
                for (auto [u, v] : h.graph.edges())
                    conn[lx[u] * (k + 1) + ly[v - h.side]] = 1;
                long total = 0;
                for (int i = 1; i <= k; ++i)
                    for (int j = 1; j <= k; ++j)
                        if (i != j && conn[i * (k + 1) + j])
                            total += sx[i] * sy[j];
                return total;
            }
        };

        auto admissible(const vector<int> & labels, const Property1Params & p) -> bool
        {
            vector<int> cnt(p.k + 1, 0);
            for (int l : labels)
                ++cnt[l];
            if (cnt[0] > p.leftover_max)
                return false;
            for (int i = 1; i <= p.k; ++i)
                if (cnt[i] > p.part_max)
                    return false;
            return true;
        }
    }

    auto partition_cross_sum(const BipartiteGuest & h, int k, const vector<int> & label_x, const vector<int> & label_y) -> long
    {
        require(int(label_x.size()) == h.side && int(label_y.size()) == h.side, ErrorKind::InfeasibleParams,
                "one label per vertex");
        return CrossEval{h, k, {}}.sum(label_x, label_y);
    }

    auto check_guest_property1_exact(const BipartiteGuest & h, const Property1Params & p, long long cap_exact) -> Property1Report
    {
        require(p.k >= 1 && p.part_max >= 0 && p.leftover_max >= 0, ErrorKind::InfeasibleParams, "bad partition bounds");
        mpz_class space;
        mpz_ui_pow_ui(space.get_mpz_t(), p.k + 1, 2 * h.side);
        require(space <= long(cap_exact), ErrorKind::TooLarge, "partition space over the exact cap");
        Property1Report rep;
        rep.mode = CheckMode::Exact;
        rep.threshold = property1_threshold(h.side);
        const int n = h.side;
        const int k = p.k;
        auto nb = a_side_neighbours(h);

        // X labels in canonical first-occurrence form; Y labels by branch and bound on the running sum
        vector<int> lx(n), ly(n);
        vector<int> sx(k + 1, 0), sy(k + 1, 0);
        vector<VertexSet> part_nb(k + 1, VertexSet(n));
        // conn[i][j]: some edge X_i -> Y_j
        vector<vector<int>> conn_count(k + 1, vector<int>(k + 1, 0));
        long best = -1;

        auto y_rec = [&](auto & self, int y, long partial) -> void {
            ++rep.examined;
            if (best >= 0 && partial >= best)
                return;
            if (y == n) {
                best = partial;
                rep.label_x = lx;
                rep.label_y = ly;
                return;
            }
            for (int j = 0; j <= k; ++j) {
                int cap = j == 0 ? p.leftover_max : p.part_max;
                if (sy[j] >= cap)
                    continue;
                // new sum contribution: one more vertex in Y_j, plus X_i newly joined to Y_j
                long add = 0;
                vector<int> newly;
                if (j > 0) {
                    for (int i = 1; i <= k; ++i) {
                        if (i == j)
                            continue;
                        bool edge = part_nb[i].contains(y);
                        if (conn_count[i][j] > 0)
                            add += sx[i];
                        else if (edge) {
                            add += long(sx[i]) * (sy[j] + 1);
                        }
                        if (edge)
                            newly.push_back(i);
                    }
                }
                for (int i : newly)
                    ++conn_count[i][j];
                ++sy[j];
                ly[y] = j;
                self(self, y + 1, partial + add);
                --sy[j];
                for (int i : newly)
                    --conn_count[i][j];
            }
        };

        auto x_rec = [&](auto & self, int x, int used) -> void {
            if (x == n) {
                for (int i = 0; i <= k; ++i)
                    part_nb[i].clear();
                for (int a = 0; a < n; ++a)
                    part_nb[lx[a]] |= nb[a];
                y_rec(y_rec, 0, 0);
                return;
            }
            for (int i = 0; i <= std::min(k, used + 1); ++i) {
                int cap = i == 0 ? p.leftover_max : p.part_max;
                if (sx[i] >= cap)
                    continue;
                ++sx[i];
                lx[x] = i;
                self(self, x + 1, std::max(used, i));
                --sx[i];
            }
        };
        x_rec(x_rec, 0, 0);
        rep.minimum = best;
        if (best < 0) {
            rep.mode = CheckMode::Vacuous;
            rep.pass = true;
        }
        else
            rep.pass = mpq_class(best) > rep.threshold;
        return rep;
    }

    auto check_guest_property1_sampled(const BipartiteGuest & h, const Property1Params & p, long samples, std::uint64_t seed)
        -> Property1Report
    {
        require(p.k >= 1 && p.part_max >= 0 && p.leftover_max >= 0, ErrorKind::InfeasibleParams, "bad partition bounds");
        Property1Report rep;
        rep.mode = CheckMode::Sampled;
        rep.threshold = property1_threshold(h.side);
        const int n = h.side;
        const int k = p.k;
        if (long(k) * p.part_max + p.leftover_max < n) {
            rep.mode = CheckMode::Vacuous;
            rep.pass = true;
            return rep;
        }
        CrossEval ev{h, k, {}};
        auto random_labels = [&](Rng & rng) {
            vector<int> cap(k + 1, p.part_max);
            cap[0] = p.leftover_max;
            vector<int> ids(n), lab(n);
            std::iota(ids.begin(), ids.end(), 0);
            rng.shuffle(ids);
            for (int v : ids) {
                vector<int> open;
                for (int i = 0; i <= k; ++i)
                    if (cap[i] > 0)
                        open.push_back(i);
                int l = open[rng.below(open.size())];
                --cap[l];
                lab[v] = l;
            }
            return lab;
        };
        long best = -1;
        for (long s = 0; s < samples; ++s) {
            Rng rng(derive_seed(seed, s));
            auto lx = random_labels(rng);
            auto ly = random_labels(rng);
            long cur = ev.sum(lx, ly);
            bool improved = true;
            while (improved) {
                improved = false;
                for (auto * lab : {&lx, &ly}) {
                    for (int v = 0; v < n; ++v) {
                        // relabel v, or swap its label with another vertex
                        for (int l = 0; l <= k; ++l) {
                            if (l == (*lab)[v])
                                continue;
                            int old = (*lab)[v];
                            (*lab)[v] = l;
                            if (admissible(*lab, p)) {
                                long cand = ev.sum(lx, ly);
                                if (cand < cur) {
                                    cur = cand;
                                    improved = true;
                                    continue;
                                }
                            }
                            (*lab)[v] = old;
                        }
                        for (int u = v + 1; u < n; ++u) {
                            if ((*lab)[u] == (*lab)[v])
                                continue;
                            std::swap((*lab)[u], (*lab)[v]);
                            long cand = ev.sum(lx, ly);
                            if (cand < cur) {
                                cur = cand;
                                improved = true;
                            }
                            else
                                std::swap((*lab)[u], (*lab)[v]);
                        }
                    }
                }
            }
            ++rep.examined;
            if (best < 0 || cur < best) {
                best = cur;
                rep.label_x = lx;
                rep.label_y = ly;
            }
        }
        rep.minimum = best;
        rep.pass = best < 0 || mpq_class(best) > rep.threshold;
        return rep;
    }

    auto random_host_tournament(int k, std::uint64_t seed) -> Tournament
    {
        require(k >= 1, ErrorKind::InfeasibleParams, "host needs a vertex");
        return random_tournament(k, seed);
    }

    auto host_weight(const Tournament & r, const vector<mpq_class> & f, const vector<mpq_class> & g) -> mpq_class
    {
        require(int(f.size()) == r.n() && int(g.size()) == r.n(), ErrorKind::InfeasibleParams, "one weight per vertex");
        mpq_class w = 0;
        for (int i = 0; i < r.n(); ++i)
            r.out(i).for_each([&](int j) { w += f[i] * g[j]; });
        return w;
    }

    namespace
    {
        // W scaled by D^2, where D = 2 * denominator(2x), for one support pair and its best completion
        struct PairBest
        {
            long long w = -1;
            std::uint64_t tmask = 0, smask = 0;
            int i0 = -1, j0 = -1;
            long long alpha = 0, beta = 0;       // numerators over D

            auto better_than(const PairBest & o) const -> bool
            {
                if (w != o.w)
                    return w > o.w;
                if (tmask != o.tmask)
                    return tmask < o.tmask;
                return smask < o.smask;
            }
        };

        struct HostScan
        {
            vector<std::uint64_t> out, in;
            int k = 0;
            long long D = 0;                     // common denominator of the fractional weights
            long long rn_hi = 0;                 // r numerator for t + s = floor(2x)
            int c_hi = 0;
        };

        auto best_completion(const HostScan & hs, std::uint64_t tm, std::uint64_t sm, long long e, long long rn) -> PairBest
        {
            PairBest b;
            b.tmask = tm;
            b.smask = sm;
            const long long D = hs.D;
            const long long base = e * D * D;
            if (rn == 0) {
                b.w = base;
                return b;
            }
            std::uint64_t full = hs.k == 64 ? ~0ULL : ((1ULL << hs.k) - 1);
            std::uint64_t outside = full & ~(tm | sm);
            vector<int> free;
            for (std::uint64_t o = outside; o; o &= o - 1)
                free.push_back(std::countr_zero(o));
            auto fa = [&](int i) { return (long long) std::popcount(hs.out[i] & sm); };
            auto gb = [&](int j) { return (long long) std::popcount(hs.in[j] & tm); };
            auto consider = [&](long long w, int i0, int j0, long long al, long long be) {
                if (w > b.w) {
                    b.w = w;
                    b.i0 = i0;
                    b.j0 = j0;
                    b.alpha = al;
                    b.beta = be;
                }
            };
            if (rn <= D) {
                // a single fractional coordinate carries all of r
                for (int i : free) {
                    consider(base + rn * fa(i) * D, i, -1, rn, 0);
                    consider(base + rn * gb(i) * D, -1, i, 0, rn);
                }
            }
            for (int i0 : free)
                for (int j0 : free) {
                    if (i0 == j0)
                        continue;
                    long long a = fa(i0), bb = gb(j0);
                    long long E = (hs.out[i0] >> j0) & 1;
                    long long lo = std::max(0LL, rn - D), hi = std::min(D, rn);
                    auto val = [&](long long al) { return base + al * a * D + (rn - al) * bb * D + al * (rn - al) * E; };
                    vector<long long> cands{lo, hi};
                    if (E) {
                        long long v = (D * (a - bb) + rn) / 2;
                        for (long long c : {v, v + 1})
                            if (c > lo && c < hi)
                                cands.push_back(c);
                    }
                    for (long long al : cands)
                        consider(val(al), i0, j0, al, rn - al);
                }
            return b;
        }

        auto host_exact(const Tournament & r, const mpq_class & x, long long cap, bool parallel) -> HostCheckReport
        {
            require(x >= 0, ErrorKind::InfeasibleParams, "x must be non-negative");
            HostCheckReport rep;
            rep.k = r.n();
            rep.x = x;
            rep.mode = CheckMode::Exact;
            const int k = r.n();
            mpq_class two_x = 2 * x;
            if (two_x > k) {
                rep.mode = CheckMode::Vacuous;
                rep.pass = true;
                rep.reduction_pass = true;
                return rep;
            }
            require(k <= 62, ErrorKind::TooLarge, "exact host check supports at most 62 vertices");
            HostScan hs;
            hs.k = k;
            for (int i = 0; i < k; ++i) {
                std::uint64_t o = 0, n = 0;
                r.out(i).for_each([&](int j) { o |= 1ULL << j; });
                r.in(i).for_each([&](int j) { n |= 1ULL << j; });
                hs.out.push_back(o);
                hs.in.push_back(n);
            }
            mpz_class q = two_x.get_den();
            require(q < 1'000'000, ErrorKind::TooLarge, "denominator of x too large");
            hs.D = 2 * q.get_si();
            hs.c_hi = int(floor_q(two_x).get_si());
            mpq_class frac = two_x - hs.c_hi;
            hs.rn_hi = mpq_class(frac * long(hs.D)).get_num().get_si();

            vector<int> sizes;
            for (int c : {hs.c_hi - 1, hs.c_hi})
                if (c >= 0)
                    sizes.push_back(c);
            mpz_class pairs = 0;
            for (int c : sizes) {
                mpz_class twoc;
                mpz_ui_pow_ui(twoc.get_mpz_t(), 2, c);
                pairs += binom(k, c) * twoc;
            }
            require(pairs <= long(cap), ErrorKind::TooLarge, "too many support pairs for the exact host check");

            const std::uint64_t limit = 1ULL << k;
            const int threads = parallel ? omp_get_max_threads() : 1;
            vector<PairBest> best(threads);
            vector<std::pair<std::uint64_t, std::uint64_t>> first_bad(threads, {~0ULL, ~0ULL});
            vector<long long> counted(threads, 0);

#pragma omp parallel for schedule(dynamic, 64) num_threads(threads) if (parallel)
            for (long long tml = 0; tml < (long long) limit; ++tml) {
                int tid = parallel ? omp_get_thread_num() : 0;
                auto tm = std::uint64_t(tml);
                int t = std::popcount(tm);
                if (t > hs.c_hi)
                    continue;
                std::uint64_t comp = (limit - 1) & ~tm;
                vector<int> pos;
                for (std::uint64_t o = comp; o; o &= o - 1)
                    pos.push_back(std::countr_zero(o));
                for (int c : sizes) {
                    int s = c - t;
                    if (s < 0)
                        continue;
                    // one fewer integral vertex leaves one more unit of weight
                    long long rn = c == hs.c_hi ? hs.rn_hi : hs.rn_hi + hs.D;
                    for_each_combination(pos, s, [&](const vector<int> & pick) {
                        std::uint64_t sm = 0;
                        for (int j : pick)
                            sm |= 1ULL << j;
                        long long e = 0;
                        for (std::uint64_t o = tm; o; o &= o - 1)
                            e += std::popcount(hs.out[std::countr_zero(o)] & sm);
                        ++counted[tid];
                        if (4000 * e > 501LL * c * c) {
                            auto key = std::make_pair(tm, sm);
                            if (key < first_bad[tid])
                                first_bad[tid] = key;
                        }
                        auto pb = best_completion(hs, tm, sm, e, rn);
                        if (pb.w >= 0 && pb.better_than(best[tid]))
                            best[tid] = pb;
                        return true;
                    });
                }
            }
            PairBest top;
            std::pair<std::uint64_t, std::uint64_t> bad{~0ULL, ~0ULL};
            for (int i = 0; i < threads; ++i) {
                if (best[i].w >= 0 && (top.w < 0 || best[i].better_than(top)))
                    top = best[i];
                bad = std::min(bad, first_bad[i]);
                rep.pairs += counted[i];
            }
            auto members = [&](std::uint64_t m) {
                vector<int> v;
                for (; m; m &= m - 1)
                    v.push_back(std::countr_zero(m));
                return v;
            };
            rep.reduction_pass = bad.first == ~0ULL;
            if (! rep.reduction_pass) {
                rep.reduction_t = members(bad.first);
                rep.reduction_s = members(bad.second);
            }
            if (top.w < 0) {
                rep.mode = CheckMode::Vacuous;
                rep.pass = true;
                return rep;
            }
            rep.worst_w = mpq_class(mpz_class(long(top.w)), mpz_class(long(hs.D * hs.D)));
            rep.worst_w.canonicalize();
            rep.worst_t = members(top.tmask);
            rep.worst_s = members(top.smask);
            rep.i0 = top.i0;
            rep.j0 = top.j0;
            rep.f_i0 = mpq_class(long(top.alpha), long(hs.D));
            rep.f_i0.canonicalize();
            rep.g_j0 = mpq_class(long(top.beta), long(hs.D));
            rep.g_j0.canonicalize();
            rep.pass = rep.worst_w <= mpq_class(51, 100) * x * x;
            return rep;
        }
    }

    auto check_host_property_exact(const Tournament & r, const mpq_class & x, long long cap) -> HostCheckReport
    {
        return host_exact(r, x, cap, true);
    }

    auto check_host_property_exact_serial(const Tournament & r, const mpq_class & x, long long cap) -> HostCheckReport
    {
        return host_exact(r, x, cap, false);
    }
}

namespace rlab
{
    using std::vector;

    auto check_host_property_sampled(const Tournament & r, const mpq_class & x, long samples, std::uint64_t seed)
        -> HostCheckReport
    {
        require(x >= 0, ErrorKind::InfeasibleParams, "x must be non-negative");
        HostCheckReport rep;
        rep.k = r.n();
        rep.x = x;
        rep.mode = CheckMode::Sampled;
        const int k = r.n();
        mpq_class two_x = 2 * x;
        if (two_x > k) {
            rep.mode = CheckMode::Vacuous;
            rep.pass = true;
            rep.reduction_pass = true;
            return rep;
        }
        mpz_class c_hi_z;
        mpz_fdiv_q(c_hi_z.get_mpz_t(), two_x.get_num_mpz_t(), two_x.get_den_mpz_t());
        const int c_hi = int(c_hi_z.get_si());
        Rng rng(seed);
        vector<int> ids(k);
        std::iota(ids.begin(), ids.end(), 0);
        bool have = false;
        rep.reduction_pass = true;
        for (long it = 0; it < samples; ++it) {
            int c = (c_hi >= 1 && rng.coin()) ? c_hi - 1 : c_hi;
            mpq_class rem = two_x - c;
            int t = int(rng.below(c + 1));
            rng.shuffle(ids);
            // integral part, then up to two fractional coordinates split at a random point
            vector<mpq_class> f(k, 0), g(k, 0);
            for (int i = 0; i < t; ++i)
                f[ids[i]] = 1;
            for (int i = t; i < c; ++i)
                g[ids[i]] = 1;
            long long e = 0;
            for (int i = 0; i < t; ++i)
                for (int j = t; j < c; ++j)
                    e += r.has_edge(ids[i], ids[j]);
            if (4000 * e > 501LL * c * c && rep.reduction_pass) {
                rep.reduction_pass = false;
                rep.reduction_t.assign(ids.begin(), ids.begin() + t);
                rep.reduction_s.assign(ids.begin() + t, ids.begin() + c);
            }
            int i0 = -1, j0 = -1;
            if (rem > 0) {
                const int free = k - c;
                if (free == 0 || (rem > 1 && free < 2))
                    continue;
                mpq_class lo = rem > 1 ? rem - 1 : mpq_class(0);
                mpq_class hi = rem < 1 ? rem : mpq_class(1);
                if (free < 2)
                    lo = hi;
                mpq_class alpha = lo + (hi - lo) * mpq_class(long(rng.below(17)), 16);
                if (alpha > 0) {
                    i0 = ids[c];
                    f[i0] = alpha;
                }
                if (rem - alpha > 0) {
                    j0 = ids[c + 1];
                    g[j0] = rem - alpha;
                }
            }
            auto w = host_weight(r, f, g);
            ++rep.pairs;
            if (! have || w > rep.worst_w) {
                have = true;
                rep.worst_w = w;
                rep.worst_t.assign(ids.begin(), ids.begin() + t);
                rep.worst_s.assign(ids.begin() + t, ids.begin() + c);
                std::sort(rep.worst_t.begin(), rep.worst_t.end());
                std::sort(rep.worst_s.begin(), rep.worst_s.end());
                rep.i0 = i0;
                rep.j0 = j0;
                rep.f_i0 = i0 >= 0 ? f[i0] : mpq_class(0);
                rep.g_j0 = j0 >= 0 ? g[j0] : mpq_class(0);
            }
        }
        rep.pass = ! have || rep.worst_w <= mpq_class(51, 100) * x * x;
        return rep;
    }

    auto large_branch(long n, int delta, const mpq_class & c0) -> bool
    {
        // 49 n q^Delta >= 100 p^Delta
        mpz_class pd, qd;
        mpz_pow_ui(pd.get_mpz_t(), c0.get_num_mpz_t(), delta);
        mpz_pow_ui(qd.get_mpz_t(), c0.get_den_mpz_t(), delta);
        return mpz_class(49) * n * qd >= mpz_class(100) * pd;
    }

    namespace
    {
        inline constexpr long host_vertex_cap = 1L << 15;
    }

    auto build_D0_and_R(long n, int delta, const LowerBoundProfile & profile, std::uint64_t seed) -> LowerBoundPair
    {
        check_profile(profile);
        require(n >= 1 && delta >= 1, ErrorKind::InfeasibleParams, "n and Delta must be positive");
        LowerBoundPair out;
        auto & pv = out.provenance;
        pv.n = n;
        pv.delta = delta;
        pv.c0 = profile.c0;
        pv.c1 = profile.c1;
        pv.seed = seed;
        if (! large_branch(n, delta, profile.c0)) {
            pv.branch = LowerBranch::Small;
            require(n >= delta, ErrorKind::InfeasibleParams, "small branch needs n >= Delta");
            out.d0 = complete_bipartite_guest(delta);
            pv.rounding = out.d0.rounding;
            if (profile.small_host) {
                out.r = *profile.small_host;
                pv.host_overridden = true;
            }
            else {
                long size;
                if (profile.small_host_size) {
                    size = *profile.small_host_size;
                    pv.host_overridden = true;
                }
                else {
                    // floor(2^{f/2}) with f = floor(0.98 Delta)
                    long f = 49L * delta / 50;
                    mpz_class p2, root;
                    mpz_ui_pow_ui(p2.get_mpz_t(), 2, f);
                    mpz_sqrt(root.get_mpz_t(), p2.get_mpz_t());
                    require(root <= host_vertex_cap, ErrorKind::TooLarge, "small-branch host too large");
                    size = root.get_si();
                }
                require(size >= 1 && size <= host_vertex_cap, ErrorKind::InfeasibleParams, "host size out of range");
                out.r = random_host_tournament(int(size), derive_seed(seed, 1));
            }
            pv.host_size = out.r.n();
            return out;
        }
        pv.branch = LowerBranch::Large;
        out.d0 = random_guest_bipartite(GuestParams{n, delta, profile}, derive_seed(seed, 0));
        pv.rounding = out.d0.rounding;
        mpz_class pd, qd;
        mpz_pow_ui(pd.get_mpz_t(), profile.c0.get_num_mpz_t(), delta);
        mpz_pow_ui(qd.get_mpz_t(), profile.c0.get_den_mpz_t(), delta);
        mpz_class k = pd / qd;
        require(k >= 2, ErrorKind::InfeasibleParams, "blow-up needs at least two parts");
        mpz_class c1n, c1d;
        mpz_pow_ui(c1n.get_mpz_t(), profile.c1.get_num_mpz_t(), delta);
        mpz_pow_ui(c1d.get_mpz_t(), profile.c1.get_den_mpz_t(), delta);
        mpz_class N;
        mpz_class num = c1n * n;
        mpz_cdiv_q(N.get_mpz_t(), num.get_mpz_t(), c1d.get_mpz_t());
        mpz_class part;
        mpz_cdiv_q(part.get_mpz_t(), N.get_mpz_t(), k.get_mpz_t());
        require(k * part <= host_vertex_cap, ErrorKind::TooLarge, "blow-up host too large");
        pv.k = k.get_si();
        pv.part_size = part.get_si();
        pv.host_size = pv.k * pv.part_size;
        auto pattern = random_host_tournament(int(pv.k), derive_seed(seed, 1));
        auto b = blowup_random_inner(pattern, int(pv.part_size), derive_seed(seed, 2));
        out.r = std::move(b.tournament);
        out.parts = std::move(b.parts);
        return out;
    }

    auto small_branch_holds(const BipartiteGuest & d0, const Tournament & r) -> bool
    {
        const int side = d0.side;
        const int t = int((49L * side + 49) / 50);
        vector<int> as(side), bs(side);
        std::iota(as.begin(), as.end(), 0);
        std::iota(bs.begin(), bs.end(), side);
        bool holds = true;
        // larger A', B' contain a copy of these, so the smallest admissible sizes suffice
        for_each_combination(as, t, [&](const vector<int> & pa) {
            for_each_combination(bs, t, [&](const vector<int> & pb) {
                vector<int> idx(2 * side, -1);
                int next = 0;
                for (int v : pa)
                    idx[v] = next++;
                for (int v : pb)
                    idx[v] = next++;
                vector<std::pair<int, int>> es;
                for (auto [u, v] : d0.graph.edges())
                    if (idx[u] >= 0 && idx[v] >= 0)
                        es.emplace_back(idx[u], idx[v]);
                Digraph sub(next, std::move(es));
                if (backtracking_embed(sub, r).status != SearchStatus::NotFound)
                    holds = false;
                return holds;
            });
            return holds;
        });
        return holds;
    }

    auto build_height_h_guest(const BipartiteGuest & d0, int h) -> std::pair<Digraph, Layering>
    {
        require(h >= 2, ErrorKind::InfeasibleParams, "height must be at least 2");
        const int n = d0.side;
        vector<std::pair<int, int>> es;
        for (int i = 1; i < h; ++i)
            for (auto [a, b] : d0.graph.edges())
                es.emplace_back((i - 1) * n + a, i * n + (b - n));
        Layering L;
        L.H = h;
        L.w = 1;
        L.layer_of.resize(size_t(n) * h);
        for (int v = 0; v < n * h; ++v)
            L.layer_of[v] = v / n + 1;
        return {Digraph(n * h, std::move(es)), L};
    }

    auto lower_host_layers(int h) -> int
    {
        return std::max(1, (h + 1) / 2 - 1);
    }

    auto build_lower_host(const Tournament & r, int H) -> BlowupResult
    {
        return layered_tournament(r, H);
    }

    auto front_index_diagnostic(const Digraph & g, const Layering & layering, const Tournament & t,
                                const vector<VertexSet> & parts, const vector<int> & phi) -> FrontIndexTable
    {
        require(int(phi.size()) == g.n() && int(layering.layer_of.size()) == g.n(), ErrorKind::InfeasibleParams,
                "map and layering must cover the guest");
        require(! parts.empty(), ErrorKind::InfeasibleParams, "host needs at least one part");
        const int h = layering.H;
        const int H = int(parts.size());
        vector<int> part_of(t.n(), 0);
        for (int p = 0; p < H; ++p)
            parts[p].for_each([&](int x) { part_of[x] = p + 1; });
        auto layers = layering.layers();
        FrontIndexTable tab;
        tab.f.assign(h + 1, {});
        tab.j.assign(h + 1, 0);
        tab.defined.assign(h + 1, false);
        bool any = false;
        for (int i = 1; i <= h; ++i) {
            int def = 0;
            for (int v : layers[i])
                def += phi[v] >= 0;
            require(def == 0 || def == int(layers[i].size()), ErrorKind::PartialLayers, "layer partially mapped");
            if (def == 0 || layers[i].empty())
                continue;
            any = true;
            tab.defined[i] = true;
            // count[p]: vertices of V_i sent into part p; U_j collects parts j..H
            vector<long> count(H + 2, 0);
            for (int v : layers[i]) {
                require(phi[v] < t.n(), ErrorKind::InfeasibleParams, "image outside the host");
                ++count[part_of[phi[v]]];
            }
            tab.f[i].assign(H + 1, 0);
            long suffix = 0;
            for (int j = H; j >= 1; --j) {
                suffix += count[j];
                tab.f[i][j] = mpq_class(suffix, long(layers[i].size()));
                tab.f[i][j].canonicalize();
                if (tab.j[i] == 0 && tab.f[i][j] >= mpq_class(99, 100))
                    tab.j[i] = j;
            }
        }
        require(any, ErrorKind::PartialLayers, "no layer mapped");
        for (int i = 1; i + 1 <= h; ++i)
            if (tab.defined[i] && tab.defined[i + 1] && tab.j[i + 1] < tab.j[i])
                tab.monotonicity_violations.push_back(i);
        for (int i = 1; i + 2 <= h; ++i)
            if (tab.defined[i] && tab.defined[i + 2] && tab.j[i + 2] <= tab.j[i])
                tab.jump_violations.push_back(i);
        bool total = std::all_of(phi.begin(), phi.end(), [](int x) { return x >= 0; });
        tab.embedding_valid = total && verify_embedding(g, t, phi);
        return tab;
    }

    auto no_embedding_verdict_name(NoEmbeddingVerdict v) -> std::string
    {
        switch (v) {
            case NoEmbeddingVerdict::ExactNotFound:
                return "exact-not-found";
            case NoEmbeddingVerdict::Inconclusive:
                return "inconclusive";
            case NoEmbeddingVerdict::Found:
                return "found";
        }
        return "?";
    }

    auto verify_no_embedding(const Digraph & g, const Tournament & t, long long budget) -> NoEmbeddingResult
    {
        auto sr = backtracking_embed(g, t, budget);
        NoEmbeddingResult out;
        out.nodes = sr.nodes;
        switch (sr.status) {
            case SearchStatus::NotFound:
                out.verdict = NoEmbeddingVerdict::ExactNotFound;
                break;
            case SearchStatus::BudgetExhausted:
                out.verdict = NoEmbeddingVerdict::Inconclusive;
                break;
            case SearchStatus::Found:
                out.verdict = NoEmbeddingVerdict::Found;
                out.embedding = sr.embedding;
                out.embedding.verified = verify_embedding(g, t, sr.embedding.map);
                break;
        }
        return out;
    }

    auto census_free_host(const Digraph & g, int k) -> std::optional<Tournament>
    {
        auto census = enumerate_tournaments(k);
        auto plan = make_embed_plan(g);
        for (std::size_t i = 0; i < census.size(); ++i) {
            auto tiny = census.tiny(i);
            if (backtracking_embed(plan, tiny_to_host(tiny)).status == SearchStatus::NotFound)
                return tiny_to_tournament(tiny);
        }
        return std::nullopt;
    }

    auto toy_lower_bound(int h) -> ToyLowerBound
    {
        ToyLowerBound toy;
        toy.d0 = complete_bipartite_guest(2);
        auto r = census_free_host(toy.d0.graph, 5);
        require(r.has_value(), ErrorKind::InfeasibleParams, "no 5-vertex host avoids the oriented K_{2,2}");
        toy.r = *r;
        std::tie(toy.g, toy.layering) = build_height_h_guest(toy.d0, h);
        toy.host = build_lower_host(toy.r, lower_host_layers(h));
        return toy;
    }
}
