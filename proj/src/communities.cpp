#include <rlab/communities.hpp>
#include <rlab/error.hpp>
#include <rlab/rng.hpp>

#include <omp.h>

#include <cmath>
#include <numeric>

using std::vector;

namespace rlab
{
    auto direction_name(Direction d) -> std::string
    {
        switch (d) {
            case Direction::In: return "in";
            case Direction::Out: return "out";
            case Direction::Undirected: return "undirected";
        }
        return "?";
    }

    auto adjacency(const Tournament & t, Direction direction) -> Adjacency
    {
        require(direction != Direction::Undirected, ErrorKind::PreconditionViolated, "a tournament has no undirected adjacency");
        if (direction == Direction::Out)
            return {&t.out_rows(), &t.in_rows()};
        return {&t.in_rows(), &t.out_rows()};
    }

    auto adjacency(const vector<VertexSet> & graph_rows) -> Adjacency
    {
        return {&graph_rows, &graph_rows};
    }

    auto common_neighbourhood(const vector<VertexSet> & rows, const VertexSet & set, const VertexSet & within) -> VertexSet
    {
        VertexSet result = within;
        set.for_each([&](int v) { result &= rows[v]; });
        return result;
    }

    namespace
    {
        auto small_binomial(long n, long k) -> long long
        {
            if (k < 0 || k > n)
                return 0;
            long long result = 1;
            for (long i = 1; i <= k; ++i)
                result = result * (n - k + i) / i;
            return result;
        }

        // Counts delta-subsets of elems[start..] that keep |current n ...| <= s, with stack[depth] holding current.
        struct BadCounter
        {
            const vector<VertexSet> & rows;
            const vector<int> & elems;
            long s;
            vector<VertexSet> stack;

            auto count(int start, int left, int depth) -> long long
            {
                const VertexSet & current = stack[depth];
                if (current.size() <= s)
                    return small_binomial(long(elems.size()) - start, left);
                if (left == 0)
                    return 0;
                long long total = 0;
                for (int i = start; i <= int(elems.size()) - left; ++i) {
                    stack[depth + 1] = current;
                    stack[depth + 1] &= rows[elems[i]];
                    total += count(i + 1, left - 1, depth + 1);
                }
                return total;
            }
        };

        auto prepare(const Adjacency & adj, const CommunitySpec & spec, long long cap, vector<int> & elems, VertexSet & base)
            -> CommunityVerdict
        {
            CommunityVerdict verdict;
            elems = (spec.A - spec.C).to_vector();
            base = common_neighbourhood(*adj.toward, spec.C, spec.R);
            verdict.base_ok = base.size() >= spec.s + 1;
            verdict.size_ok = long(elems.size()) >= spec.delta;
            mpz_class subsets = binomial(long(elems.size()), spec.delta);
            require(subsets <= mpz_class(std::to_string(cap)), ErrorKind::TooLarge,
                    "community enumeration needs " + subsets.get_str() + " subsets");
            verdict.subsets = subsets.get_si();
            return verdict;
        }

        auto finish(CommunityVerdict verdict, const CommunitySpec & spec) -> CommunityVerdict
        {
            verdict.ok = verdict.base_ok && verdict.size_ok && mpq_class(mpz_class(std::to_string(verdict.bad_count))) <= spec.e;
            return verdict;
        }
    }

    auto is_community_serial(const Adjacency & adj, const CommunitySpec & spec, long long cap) -> CommunityVerdict
    {
        vector<int> elems;
        VertexSet base;
        auto verdict = prepare(adj, spec, cap, elems, base);
        if (verdict.size_ok) {
            BadCounter counter{*adj.toward, elems, spec.s, vector<VertexSet>(spec.delta + 1, base)};
            verdict.bad_count = counter.count(0, spec.delta, 0);
        }
        return finish(verdict, spec);
    }

    auto is_community(const Adjacency & adj, const CommunitySpec & spec, long long cap) -> CommunityVerdict
    {
        vector<int> elems;
        VertexSet base;
        auto verdict = prepare(adj, spec, cap, elems, base);
        if (! verdict.size_ok)
            return finish(verdict, spec);
        if (spec.delta == 0 || base.size() <= spec.s) {
            verdict.bad_count = base.size() <= spec.s ? verdict.subsets : 0;
            return finish(verdict, spec);
        }
        int top = int(elems.size()) - spec.delta + 1;
        long long bad = 0;
#pragma omp parallel reduction(+:bad)
        {
            BadCounter counter{*adj.toward, elems, spec.s, vector<VertexSet>(spec.delta + 1, base)};
#pragma omp for schedule(dynamic, 1)
            for (int i = 0; i < top; ++i) {
                counter.stack[1] = base;
                counter.stack[1] &= (*adj.toward)[elems[i]];
                bad += counter.count(i + 1, spec.delta - 1, 1);
            }
        }
        verdict.bad_count = bad;
        return finish(verdict, spec);
    }

    auto is_community(const Tournament & t, const CommunitySpec & spec, long long cap) -> CommunityVerdict
    {
        return is_community(adjacency(t, spec.direction), spec, cap);
    }

    auto is_community_sampled(const Adjacency & adj, const CommunitySpec & spec, long samples, std::uint64_t seed,
                              double confidence) -> SampledCommunity
    {
        require(samples >= 1, ErrorKind::PreconditionViolated, "at least one sample is required");
        require(confidence > 0 && confidence < 1, ErrorKind::PreconditionViolated, "confidence must lie in (0,1)");
        SampledCommunity result;
        result.samples = samples;
        result.confidence = confidence;
        auto elems = (spec.A - spec.C).to_vector();
        VertexSet base = common_neighbourhood(*adj.toward, spec.C, spec.R);
        result.base_ok = base.size() >= spec.s + 1;
        result.size_ok = long(elems.size()) >= spec.delta;
        result.half_width = std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * double(samples)));
        if (! result.size_ok)
            return result;
        Rng rng(seed);
        long bad = 0;
        VertexSet current;
        for (long t = 0; t < samples; ++t) {
            current = base;
            // partial Fisher-Yates picks a uniform delta-subset
            for (int j = 0; j < spec.delta; ++j) {
                auto pick = j + int(rng.below(elems.size() - j));
                std::swap(elems[j], elems[pick]);
                current &= (*adj.toward)[elems[j]];
            }
            if (current.size() <= spec.s)
                ++bad;
        }
        result.estimate = double(bad) / double(samples);
        return result;
    }

    auto subset_community(const Adjacency & adj, const CommunitySpec & spec, const VertexSet & a_prime, long long cap) -> bool
    {
        require(a_prime.is_subset_of(spec.A), ErrorKind::NotSubset, "A' is not a subset of A");
        require((a_prime - spec.C).size() >= spec.delta, ErrorKind::PreconditionViolated, "|A' \\ C| is below delta");
        CommunitySpec sub = spec;
        sub.A = a_prime;
        return is_community(adj, sub, cap).ok;
    }

    auto empty_family(const VertexSet & ground) -> MonotoneFamily
    {
        return {ground, [](const VertexSet &) { return false; }};
    }

    auto superset_family(const VertexSet & ground, const VertexSet & core) -> MonotoneFamily
    {
        return {ground, [core](const VertexSet & x) { return core.is_subset_of(x); }};
    }

    namespace
    {
        template <typename F>
        auto for_each_subset(const vector<int> & elems, int universe, int k, F && f) -> void
        {
            int n = int(elems.size());
            if (k > n)
                return;
            vector<int> idx(k);
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
                VertexSet set(universe);
                for (int i : idx)
                    set.insert(elems[i]);
                f(set);
                int j = k - 1;
                while (j >= 0 && idx[j] == n - k + j)
                    --j;
                if (j < 0)
                    return;
                ++idx[j];
                for (int t = j + 1; t < k; ++t)
                    idx[t] = idx[t - 1] + 1;
            }
        }

        auto check_cap(long n, int k, long long cap) -> mpz_class
        {
            mpz_class total = binomial(n, k);
            require(total <= mpz_class(std::to_string(cap)), ErrorKind::TooLarge,
                    "enumeration needs " + total.get_str() + " subsets");
            return total;
        }
    }

    auto k_density_exact(const MonotoneFamily & f, int k, long long cap) -> mpq_class
    {
        auto elems = f.ground.to_vector();
        mpz_class total = check_cap(long(elems.size()), k, cap);
        require(total > 0, ErrorKind::PreconditionViolated, "ground set has no subsets of size " + std::to_string(k));
        long long members = 0;
        for_each_subset(elems, f.ground.universe(), k, [&](const VertexSet & x) { members += f.contains(x) ? 1 : 0; });
        mpq_class density(mpz_class(std::to_string(members)), total);
        density.canonicalize();
        return density;
    }

    auto check_upward_density_cascade(const MonotoneFamily & f, int k, const mpq_class & delta, long long cap) -> CascadeReport
    {
        auto elems = f.ground.to_vector();
        CascadeReport report;
        report.all_within = true;
        for (int i = 0; i <= k; ++i) {
            mpz_class total = check_cap(long(elems.size()), i, cap);
            long long members = 0;
            for_each_subset(elems, f.ground.universe(), i, [&](const VertexSet & y) {
                if (! f.contains(y))
                    return;
                ++members;
                for (int x : elems) {
                    if (y.contains(x))
                        continue;
                    VertexSet bigger = y;
                    bigger.insert(x);
                    if (! f.contains(bigger))
                        fail(ErrorKind::MonotonicityViolated,
                             "family contains a " + std::to_string(i) + "-set but not its superset adding vertex " + std::to_string(x));
                }
            });
            mpq_class density = total > 0 ? mpq_class(mpz_class(std::to_string(members)), total) : mpq_class(0);
            density.canonicalize();
            if (i >= 1 && density > delta)
                report.all_within = false;
            report.densities.push_back(density);
        }
        return report;
    }

    auto extension_bad_family(const Adjacency & adj, const VertexSet & a, const VertexSet & c, const VertexSet & r, int delta1,
                              int delta2, long m, long s, const mpq_class & delta1_frac, const mpq_class & delta2_frac,
                              long long cap) -> MonotoneFamily
    {
        require(delta1 >= 0 && delta2 >= 0 && delta1 + delta2 <= m && m <= (a - c).size(), ErrorKind::PreconditionViolated,
                "extension needs delta1 + delta2 <= m <= |A \\ C|");
        CommunitySpec parent{a, c, r, delta1 + delta2, s, delta1_frac * delta2_frac * mpq_class(binomial(m, delta1 + delta2)),
                             Direction::Out};
        require(is_community(adj, parent, cap).ok, ErrorKind::PreconditionUnverified,
                "(A, C) is not a community with the combined parameters");
        mpq_class e2 = delta2_frac * mpq_class(binomial(m - delta1, delta2));
        return {a - c, [adj, a, c, r, delta2, s, e2, cap](const VertexSet & extra) {
                    CommunitySpec child{a, c | extra, r, delta2, s, e2, Direction::Out};
                    return ! is_community(adj, child, cap).ok;
                }};
    }

    auto dependent_random_choice(const Adjacency & adj, const DrcRequest & req) -> DrcResult
    {
        require(! req.L.empty() && ! req.R.empty(), ErrorKind::PreconditionViolated, "L and R must be non-empty");
        require(req.k >= 1 && req.delta >= 0 && req.max_retries >= 1, ErrorKind::PreconditionViolated, "bad DRC parameters");

        long long edges = 0;
        req.L.for_each([&](int v) { edges += (*adj.toward)[v].intersect_count(req.R); });
        mpq_class observed(mpz_class(std::to_string(edges)), mpz_class(std::to_string((long long)req.L.size() * req.R.size())));
        observed.canonicalize();
        require(observed >= req.d, ErrorKind::DensityTooLow,
                "edge density " + observed.get_str() + " is below the declared " + req.d.get_str());
        mpq_class dk = pow_q(req.d, req.k);
        mpq_class margin = dk - req.family_density;
        require(2 * req.family_density < dk, ErrorKind::DensityTooLow, "family density must be below d^k / 2");

        if (req.family && ! req.trust_family) {
            require(binomial(req.family->ground.size(), req.k) <= mpz_class(std::to_string(req.cap)),
                    ErrorKind::PreconditionUnverified, "family too large to verify; pass trust_family");
            require(k_density_exact(*req.family, req.k, req.cap) <= req.family_density, ErrorKind::PreconditionViolated,
                    "family k-density exceeds the declared bound");
        }

        VertexSet l_or_a = req.L | req.A;
        DrcResult result;
        result.observed_density = observed;
        result.size_bound = margin / 2 * req.L.size();
        result.bad_bound = 4 / margin * mpq_class(binomial(l_or_a.size(), req.delta)) * pow_q(mpq_class(req.s, req.R.size()), req.k);
        result.bad_bound.canonicalize();

        auto r_list = req.R.to_vector();
        std::string deficits;
        for (int attempt = 0; attempt < req.max_retries; ++attempt) {
            Rng rng(derive_seed(req.seed, std::uint64_t(attempt)));
            vector<int> draws(req.k);
            VertexSet k_set(req.R.universe());
            for (auto & x : draws) {
                x = r_list[rng.below(r_list.size())];
                k_set.insert(x);
            }
            if (req.family && req.family->contains(k_set)) {
                deficits = "K in family";
                continue;
            }
            VertexSet target = common_neighbourhood(*adj.against, k_set, l_or_a);
            VertexSet m_set = target & req.L;
            if (mpq_class(m_set.size()) < result.size_bound) {
                deficits = "|M| = " + std::to_string(m_set.size()) + " < " + result.size_bound.get_str();
                continue;
            }
            CommunitySpec spec{target, VertexSet(target.universe()), req.R, req.delta, req.s, result.bad_bound, Direction::Out};
            long long bad = 0;
            bool exact = binomial(target.size(), req.delta) <= mpz_class(std::to_string(req.cap));
            bool ok;
            if (exact) {
                auto verdict = is_community(adj, spec, req.cap);
                bad = verdict.bad_count;
                ok = verdict.ok;
            }
            else {
                auto sampled = is_community_sampled(adj, spec, req.samples, derive_seed(req.seed, 1000003 + attempt));
                mpq_class scaled = mpq_class(binomial(target.size(), req.delta)) * mpq_class(sampled.estimate);
                bad = to_long(ceil_q(scaled));
                ok = sampled.base_ok && sampled.size_ok && mpq_class(long(bad)) <= result.bad_bound;
            }
            if (! ok) {
                deficits = "bad count " + std::to_string(bad) + " vs bound " + result.bad_bound.get_str();
                continue;
            }
            result.draws = std::move(draws);
            result.K = std::move(k_set);
            result.M = std::move(m_set);
            result.target = std::move(target);
            result.bad_count = bad;
            result.exact = exact;
            result.retries_used = attempt + 1;
            return result;
        }
        fail(ErrorKind::RetriesExhausted,
             "no accepted K after " + std::to_string(req.max_retries) + " retries; last deficit: " + deficits);
    }
}

namespace rlab
{
    auto certify(const Tournament & t, CommunityCertificate & cert, long long cap, long samples, std::uint64_t seed) -> void
    {
        auto adj = adjacency(t, cert.direction);
        CommunitySpec spec{cert.members, cert.core, cert.target, cert.delta, cert.s, mpq_class(0), cert.direction};
        cert.subsets = binomial((cert.members - cert.core).size(), cert.delta);
        cert.exact = cert.subsets <= mpz_class(std::to_string(cap));
        if (cert.exact) {
            auto verdict = is_community(adj, spec, cap);
            cert.base_ok = verdict.base_ok;
            cert.size_ok = verdict.size_ok;
            cert.bad_count = verdict.bad_count;
        }
        else {
            auto sampled = is_community_sampled(adj, spec, samples, seed);
            cert.base_ok = sampled.base_ok;
            cert.size_ok = sampled.size_ok;
            cert.bad_count = to_long(ceil_q(mpq_class(cert.subsets) * mpq_class(sampled.estimate)));
        }
        cert.ok = cert.base_ok && cert.size_ok && at_most(mpz_class(std::to_string(cert.bad_count)), cert.bound);
    }
}
