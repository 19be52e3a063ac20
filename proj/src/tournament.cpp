#include <rlab/tournament.hpp>
#include <rlab/error.hpp>
#include <rlab/rng.hpp>

#include <omp.h>

#include <algorithm>
#include <numeric>

using std::vector;

namespace rlab
{
    Tournament::Tournament(int n) :
        _n(n),
        _out(n, VertexSet(n)),
        _in(n, VertexSet(n))
    {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                _out[u].insert(v);
                _in[v].insert(u);
            }
    }

    auto Tournament::orient(int u, int v) -> void
    {
        _out[v].erase(u);
        _in[u].erase(v);
        _out[u].insert(v);
        _in[v].insert(u);
    }

    auto Tournament::is_complete() const -> bool
    {
        if (int(_out.size()) != _n || int(_in.size()) != _n)
            return false;
        for (int u = 0; u < _n; ++u) {
            if (_out[u].contains(u) || _in[u].contains(u))
                return false;
            for (int v = u + 1; v < _n; ++v) {
                bool uv = _out[u].contains(v), vu = _out[v].contains(u);
                if (uv == vu)
                    return false;
                if (_in[v].contains(u) != uv || _in[u].contains(v) != vu)
                    return false;
            }
        }
        return true;
    }

    auto Tournament::induced(const vector<int> & vertices) const -> Tournament
    {
        int k = int(vertices.size());
        Tournament result(k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (has_edge(vertices[j], vertices[i]))
                    result.orient(j, i);
        return result;
    }

    auto random_tournament(int n, std::uint64_t seed) -> Tournament
    {
        Tournament t(n);
        Rng rng(seed);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.coin())
                    t.orient(v, u);
        return t;
    }

    auto transitive_tournament(int n) -> Tournament
    {
        return Tournament(n);
    }

    auto blowup(const Tournament & pattern, int part_size, const std::function<Tournament(int)> & inner) -> BlowupResult
    {
        require(part_size >= 1, ErrorKind::InfeasibleParams, "part size must be positive");
        int k = pattern.n(), n = k * part_size;
        BlowupResult result{Tournament(n), {}};
        for (int p = 0; p < k; ++p) {
            VertexSet part(n);
            for (int c = 0; c < part_size; ++c)
                part.insert(p * part_size + c);
            result.parts.push_back(std::move(part));
        }
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q)
                if (pattern.has_edge(q, p))
                    for (int x = 0; x < part_size; ++x)
                        for (int y = 0; y < part_size; ++y)
                            result.tournament.orient(q * part_size + y, p * part_size + x);
        for (int p = 0; p < k; ++p) {
            Tournament in = inner(p);
            require(in.n() == part_size, ErrorKind::InfeasibleParams, "inner tournament has the wrong size");
            for (int x = 0; x < part_size; ++x)
                for (int y = x + 1; y < part_size; ++y)
                    if (in.has_edge(y, x))
                        result.tournament.orient(p * part_size + y, p * part_size + x);
        }
        return result;
    }

    auto blowup_random_inner(const Tournament & pattern, int part_size, std::uint64_t seed) -> BlowupResult
    {
        return blowup(pattern, part_size, [&](int p) { return random_tournament(part_size, derive_seed(seed, std::uint64_t(p))); });
    }

    auto layered_tournament(const Tournament & r, int H) -> BlowupResult
    {
        require(H >= 1, ErrorKind::InfeasibleParams, "layer count must be positive");
        return blowup(transitive_tournament(H), r.n(), [&](int) { return r; });
    }

    auto common_out_neighborhood(const Tournament & t, const VertexSet & s, const VertexSet & r) -> VertexSet
    {
        VertexSet result = r;
        s.for_each([&](int v) { result &= t.out(v); });
        return result;
    }

    auto common_in_neighborhood(const Tournament & t, const VertexSet & s, const VertexSet & r) -> VertexSet
    {
        VertexSet result = r;
        s.for_each([&](int v) { result &= t.in(v); });
        return result;
    }

    auto count_forward_edges(const Tournament & t, const vector<int> & order) -> long long
    {
        long long total = 0;
        VertexSet before(t.n());
        for (int v : order) {
            total += t.in(v).intersect_count(before);
            before.insert(v);
        }
        return total;
    }

    auto make_median_order(const Tournament & t, vector<int> order) -> MedianOrder
    {
        MedianOrder m;
        m.order = std::move(order);
        m.position.assign(t.n(), -1);
        for (int p = 0; p < int(m.order.size()); ++p)
            m.position[m.order[p]] = p;
        m.forward_edges = count_forward_edges(t, m.order);
        m.certificate = verify_median_certificate(t, m.order);
        return m;
    }

    namespace
    {
        struct Move
        {
            int gain = 0;
            int target = -1;
        };

        // best relocation of order[i]; gain counts forward edges won minus lost
        auto best_move(const Tournament & t, const vector<int> & order, int i) -> Move
        {
            int v = order[i];
            const auto & out = t.out(v);
            Move best;
            int gain = 0;
            for (int p = i - 1; p >= 0; --p) {
                gain += out.contains(order[p]) ? 1 : -1;
                if (gain > best.gain) {
                    best.gain = gain;
                    best.target = p;
                }
            }
            gain = 0;
            for (int p = i + 1; p < int(order.size()); ++p) {
                gain += out.contains(order[p]) ? -1 : 1;
                if (gain > best.gain) {
                    best.gain = gain;
                    best.target = p;
                }
            }
            return best;
        }

        auto relocation_safe(const Tournament & t, const vector<int> & order, int i) -> bool
        {
            int v = order[i];
            const auto & out = t.out(v);
            int gain = 0;
            for (int p = i - 1; p >= 0; --p) {
                gain += out.contains(order[p]) ? 1 : -1;
                if (gain > 0)
                    return false;
            }
            gain = 0;
            for (int p = i + 1; p < int(order.size()); ++p) {
                gain += out.contains(order[p]) ? -1 : 1;
                if (gain > 0)
                    return false;
            }
            return true;
        }
    }

    auto median_order_local(const Tournament & t, std::uint64_t seed) -> MedianOrder
    {
        int n = t.n();
        vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        Rng rng(seed);
        rng.shuffle(order);
        // score order is a cheap warm start; the shuffle only decides ties
        vector<int> score(n);
        for (int v = 0; v < n; ++v)
            score[v] = t.out_degree(v);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return score[a] > score[b]; });

        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i < n; ++i) {
                auto move = best_move(t, order, i);
                if (move.gain <= 0)
                    continue;
                int v = order[i];
                if (move.target < i)
                    std::move_backward(order.begin() + move.target, order.begin() + i, order.begin() + i + 1);
                else
                    std::move(order.begin() + i + 1, order.begin() + move.target + 1, order.begin() + i);
                order[move.target] = v;
                improved = true;
            }
        }
        return make_median_order(t, std::move(order));
    }

    auto median_order_exact(const Tournament & t) -> MedianOrder
    {
        int n = t.n();
        require(n <= 14, ErrorKind::TooLarge, "exact median order is limited to 14 vertices");
        int full = 1 << n;
        vector<int> in_mask(n, 0);
        for (int v = 0; v < n; ++v)
            for (int u = 0; u < n; ++u)
                if (u != v && t.has_edge(u, v))
                    in_mask[v] |= 1 << u;

        vector<int> best(full, -1), last(full, -1);
        best[0] = 0;
        for (int mask = 0; mask < full; ++mask) {
            if (best[mask] < 0)
                continue;
            for (int v = 0; v < n; ++v) {
                if (mask & (1 << v))
                    continue;
                int next = mask | (1 << v);
                int value = best[mask] + std::popcount(unsigned(in_mask[v] & mask));
                if (value > best[next]) {
                    best[next] = value;
                    last[next] = v;
                }
            }
        }
        vector<int> order;
        for (int mask = full - 1; mask; mask &= ~(1 << last[mask]))
            order.push_back(last[mask]);
        std::reverse(order.begin(), order.end());
        return make_median_order(t, std::move(order));
    }

    auto verify_median_certificate_serial(const Tournament & t, const vector<int> & order) -> bool
    {
        for (int i = 0; i < int(order.size()); ++i)
            if (! relocation_safe(t, order, i))
                return false;
        return true;
    }

    auto verify_median_certificate(const Tournament & t, const vector<int> & order) -> bool
    {
        int n = int(order.size());
        int violations = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+:violations)
        for (int i = 0; i < n; ++i)
            if (! relocation_safe(t, order, i))
                ++violations;
        return violations == 0;
    }

    auto edge_density(const Tournament & t, const VertexSet & from, const VertexSet & to) -> mpq_class
    {
        long long edges = 0;
        from.for_each([&](int u) { edges += t.out(u).intersect_count(to); });
        long long denom = (long long)from.size() * to.size();
        require(denom > 0, ErrorKind::HypothesisViolation, "density of an empty pair");
        mpq_class result(mpz_class(std::to_string(edges)), mpz_class(std::to_string(denom)));
        result.canonicalize();
        return result;
    }

    auto interval_set(const MedianOrder & m, int lo, int hi) -> VertexSet
    {
        VertexSet result(int(m.order.size()));
        for (int p = std::max(lo, 1); p < hi && p <= int(m.order.size()); ++p)
            result.insert(m.order[p - 1]);
        return result;
    }

    auto interval_density(const Tournament & t, const MedianOrder & m, int i_start, int i_end, const VertexSet & a)
        -> IntervalDensity
    {
        int n = t.n();
        require(i_start >= 1 && i_start < i_end && i_end <= n + 1, ErrorKind::HypothesisViolation,
                "interval [" + std::to_string(i_start) + "," + std::to_string(i_end) + ") is not inside [1," + std::to_string(n + 1) + ")");
        require(! a.empty(), ErrorKind::HypothesisViolation, "target set is empty");
        int last = 0;
        bool after = true;
        a.for_each([&](int v) {
            int pos = m.position[v] + 1;
            after = after && pos >= i_end;
            last = std::max(last, pos);
        });
        require(after, ErrorKind::HypothesisViolation, "target set must lie after the interval");

        IntervalDensity result;
        result.density = edge_density(t, interval_set(m, i_start, i_end), a);
        if (m.certificate) {
            int len = i_end - i_start, span = last - i_end + 1;
            for (int k = len; k >= 1; --k) {
                if (len % k)
                    continue;
                int width = len / k;
                if (width >= span && i_end + width + 1 <= n) {
                    result.k = k;
                    result.a = width;
                    mpq_class bound(k - 1, 2 * k);
                    bound.canonicalize();
                    result.guaranteed = bound;
                    break;
                }
            }
        }
        return result;
    }
}
