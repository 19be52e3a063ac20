#include <rlab/embed.hpp>
#include <rlab/error.hpp>
#include <rlab/rng.hpp>

#include <algorithm>

using std::string;
using std::to_string;
using std::vector;

namespace rlab
{
    namespace
    {
        auto mpz_of(long v) -> mpz_class
        {
            return mpz_class(std::to_string(v));
        }

        auto image_set(int universe, const vector<int> & phi, const vector<int> & idx) -> VertexSet
        {
            VertexSet s(universe);
            for (int u : idx)
                s.insert(phi[u]);
            return s;
        }

        auto effective_b(const LayerInstance & inst) -> long
        {
            if (inst.b > 0)
                return inst.b;
            long b = inst.A.size();
            for (auto & f : inst.f)
                b = std::min<long>(b, f.size());
            return b;
        }

        // lowest collision pair (u, w), u < w, or {-1, -1}
        auto first_collision(const vector<int> & phi) -> std::pair<int, int>
        {
            for (size_t u = 0; u < phi.size(); ++u)
                for (size_t w = u + 1; w < phi.size(); ++w)
                    if (phi[u] == phi[w])
                        return {int(u), int(w)};
            return {-1, -1};
        }
    }

    auto family_density_cap(int delta_out, int delta_in, long a, long b, int k) -> Sqrt2Scaled
    {
        mpq_class ratio(mpz_of(b), mpz_of(a));
        ratio.canonicalize();
        return Sqrt2Scaled{pow_q(ratio, k) / (4 * delta_out * delta_in), -long(k)};
    }

    auto check_layer_preconditions(const LayerInstance & inst, long long cap) -> LayerPreconditions
    {
        LayerPreconditions pre;
        const long a = inst.A.size(), b = effective_b(inst);
        pre.sizes_ok = a >= b && b >= 32L * long(inst.W1.size());
        pre.candidates_ok = true;
        for (auto & f : inst.f)
            pre.candidates_ok = pre.candidates_ok && f.is_subset_of(inst.A) && f.size() >= b;
        vector<int> out_deg(inst.f.size(), 0);
        for (auto & nv : inst.nbrs) {
            pre.candidates_ok = pre.candidates_ok && int(nv.size()) <= inst.delta_in;
            for (int u : nv)
                ++out_deg[u];
        }
        for (int d : out_deg)
            pre.candidates_ok = pre.candidates_ok && d <= inst.delta_out;

        pre.densities_checked = true;
        pre.densities_ok = true;
        for (size_t v = 0; v < inst.F.size(); ++v) {
            int k = int(inst.nbrs[v].size());
            try {
                mpq_class density = k_density_exact(inst.F[v], k, cap);
                mpq_class count = density * mpq_class(binomial(a, k));
                pre.family_counts.push_back(count.get_num());
                auto bound = family_density_cap(inst.delta_out, inst.delta_in, a, b, k).times(mpq_class(binomial(a, k)));
                pre.densities_ok = pre.densities_ok && at_most(count.get_num(), bound);
            }
            catch (const Error & e) {
                if (e.kind() != ErrorKind::TooLarge)
                    throw;
                pre.densities_checked = false;
                pre.family_counts.push_back(-1);
            }
        }
        return pre;
    }

    auto lll_embed_layer(const LayerInstance & inst, std::uint64_t seed, long long max_resamples, bool trust, long long cap)
        -> LayerOutcome
    {
        const size_t n1 = inst.W1.size(), n2 = inst.W2.size();
        require(inst.f.size() == n1 && inst.nbrs.size() == n2 && inst.F.size() == n2, ErrorKind::PreconditionViolated,
                "instance arrays disagree in length");
        for (size_t u = 0; u < n1; ++u)
            require(! inst.f[u].empty(), ErrorKind::PreconditionViolated,
                    "guest vertex " + to_string(inst.W1[u]) + " has no candidates");
        LayerOutcome out;
        out.preconditions = check_layer_preconditions(inst, cap);
        if (! trust) {
            const auto & p = out.preconditions;
            require(p.sizes_ok, ErrorKind::PreconditionViolated, "need a >= b >= 32 |W1|");
            require(p.candidates_ok, ErrorKind::PreconditionViolated, "candidate sets or degrees out of bounds");
            require(p.densities_checked, ErrorKind::PreconditionUnverified, "family densities too large to enumerate");
            require(p.densities_ok, ErrorKind::PreconditionViolated, "a family exceeds the density cap");
        }

        vector<vector<int>> cand(n1);
        for (size_t u = 0; u < n1; ++u)
            cand[u] = inst.f[u].to_vector();
        Rng rng(seed);
        vector<int> phi(n1);
        auto draw = [&](int u) { phi[u] = cand[u][rng.below(cand[u].size())]; };
        for (size_t u = 0; u < n1; ++u)
            draw(int(u));

        const int universe = inst.A.universe();
        // family status cache, invalidated through the variables it reads
        vector<vector<int>> families_of(n1);
        for (size_t v = 0; v < n2; ++v)
            for (int u : inst.nbrs[v])
                families_of[u].push_back(int(v));
        vector<char> dirty(n2, 1), hit(n2, 0);
        auto family_hit = [&](size_t v) -> bool {
            if (dirty[v]) {
                auto img = image_set(universe, phi, inst.nbrs[v]);
                hit[v] = int(img.size()) == int(inst.nbrs[v].size()) && inst.F[v].contains(img);
                dirty[v] = 0;
            }
            return hit[v];
        };
        auto resample = [&](int u) {
            draw(u);
            for (int v : families_of[u])
                dirty[v] = 1;
        };

        while (true) {
            auto [u, w] = first_collision(phi);
            if (u >= 0) {
                require(out.resamples < max_resamples, ErrorKind::ResampleBudgetExhausted,
                        "budget exhausted with a collision between guest vertices " + to_string(inst.W1[u]) + " and " +
                            to_string(inst.W1[w]));
                resample(u);
                resample(w);
                ++out.resamples;
                ++out.collision_resamples;
                continue;
            }
            size_t v = 0;
            while (v < n2 && ! family_hit(v))
                ++v;
            if (v == n2)
                break;
            require(out.resamples < max_resamples, ErrorKind::ResampleBudgetExhausted,
                    "budget exhausted with the family of guest vertex " + to_string(inst.W2[v]) + " hit");
            for (int x : inst.nbrs[v])
                resample(x);
            ++out.resamples;
            ++out.family_resamples;
        }
        require(verify_layer(inst, phi), ErrorKind::PreconditionViolated, "postcondition check failed");
        out.phi = std::move(phi);
        return out;
    }

    auto verify_layer(const LayerInstance & inst, const vector<int> & phi) -> bool
    {
        if (phi.size() != inst.W1.size())
            return false;
        for (size_t u = 0; u < phi.size(); ++u)
            if (phi[u] < 0 || ! inst.f[u].contains(phi[u]))
                return false;
        if (first_collision(phi).first >= 0)
            return false;
        for (size_t v = 0; v < inst.W2.size(); ++v)
            if (inst.F[v].contains(image_set(inst.A.universe(), phi, inst.nbrs[v])))
                return false;
        return true;
    }

    auto max_family_count(int delta_out, int delta_in, long a, long b, int k) -> mpz_class
    {
        auto bound = family_density_cap(delta_out, delta_in, a, b, k).times(mpq_class(binomial(a, k)));
        mpz_class c = mpz_class(std::to_string(static_cast<long long>(bound.approx())));
        while (c > 0 && ! at_most(c, bound))
            --c;
        while (at_most(c + 1, bound))
            ++c;
        return c;
    }

    auto random_layer_instance(const RandomLayerSpec & spec, std::uint64_t seed) -> RandomLayer
    {
        require(spec.w1 >= 1 && spec.a >= spec.b && spec.b >= 1, ErrorKind::InfeasibleParams, "need a >= b >= 1");
        Rng rng(seed);
        RandomLayer out;
        auto & inst = out.instance;
        const int a = int(spec.a);
        inst.A = VertexSet::full(a);
        inst.delta_out = spec.delta_out;
        inst.delta_in = spec.delta_in;
        vector<int> all(a);
        for (int x = 0; x < a; ++x)
            all[x] = x;
        for (int u = 0; u < spec.w1; ++u) {
            inst.W1.push_back(u);
            rng.shuffle(all);
            inst.f.push_back(VertexSet::from_list(a, vector<int>(all.begin(), all.begin() + spec.b)));
        }
        vector<int> capacity(spec.w1, spec.delta_out);
        for (int v = 0; v < spec.w1; ++v) {
            vector<int> open;
            for (int u = 0; u < spec.w1; ++u)
                if (capacity[u] > 0)
                    open.push_back(u);
            if (open.empty())
                break;
            rng.shuffle(open);
            int d = 1 + int(rng.below(std::uint64_t(std::min<int>(spec.delta_in, int(open.size())))));
            vector<int> nv(open.begin(), open.begin() + d);
            std::sort(nv.begin(), nv.end());
            for (int u : nv)
                --capacity[u];
            inst.W2.push_back(spec.w1 + v);
            inst.nbrs.push_back(nv);
        }
        for (auto & nv : inst.nbrs) {
            int k = int(nv.size());
            long count = to_long(max_family_count(spec.delta_out, spec.delta_in, spec.a, spec.b, k));
            // distinct random k-sets
            vector<VertexSet> gens;
            while (long(gens.size()) < count) {
                rng.shuffle(all);
                auto cand = VertexSet::from_list(a, vector<int>(all.begin(), all.begin() + k));
                if (std::find(gens.begin(), gens.end(), cand) == gens.end())
                    gens.push_back(cand);
            }
            out.forbidden.push_back(gens);
            inst.F.push_back(MonotoneFamily{inst.A, [gens](const VertexSet & S) {
                                                for (auto & x : gens)
                                                    if (x.is_subset_of(S))
                                                        return true;
                                                return false;
                                            }});
        }
        return out;
    }

    auto pipeline_schedule(const Digraph & g, const Layering & layering, const mpq_class & c_s) -> PipelineSchedule
    {
        require(layering_valid(g, layering), ErrorKind::LayeringMismatch, "layering does not fit the digraph");
        PipelineSchedule ps;
        auto profile = degree_profile(g, layering);
        ps.delta = std::max(profile.delta, 1);
        ps.w = std::max(max_edge_span(g, layering.layer_of), 1);
        ps.H = layering.H;
        ps.h = (ps.H + ps.w - 1) / ps.w;
        auto sizes = layering.layer_sizes();
        ps.N.assign(ps.h, 0);
        for (int i = 1; i <= ps.H; ++i) {
            int block = (i + ps.w - 1) / ps.w;
            ps.N[block - 1] = std::max(ps.N[block - 1], sizes[i - 1]);
        }
        for (int i = 1; i <= ps.h; ++i) {
            mpq_class sum = 0;
            for (int j = 1; j <= ps.h; ++j) {
                mpq_class term(ps.N[j - 1]);
                mpq_div_2exp(term.get_mpq_t(), term.get_mpq_t(), static_cast<unsigned long>(std::abs(i - j)));
                sum += term;
            }
            ps.n_prime.push_back(sum);
            ps.s.push_back(std::max(1L, to_long(ceil_q(c_s * ps.w * sum))));
        }
        mpq_class base(1, 4 * ps.delta * ps.delta);
        base.canonicalize();
        ps.strength = Sqrt2Scaled{pow_q(base, ps.w), -long(ps.delta)};
        return ps;
    }

    auto pipeline_structure_params(const PipelineSchedule & ps, const StructureOverrides & overrides) -> StructureParams
    {
        StructureParams p;
        p.delta = ps.delta;
        p.w = ps.w;
        p.h = ps.h;
        p.s = ps.s;
        p.strength = ps.strength;
        p.overrides = overrides;
        return p;
    }

    auto desk_profile() -> DeskProfile
    {
        DeskProfile d;
        d.overrides.c_m = mpq_class(3, 4);
        d.overrides.c_b = mpq_class(5, 2);
        d.overrides.c_a = mpq_class(10);
        d.overrides.c_top = mpq_class(1);
        d.overrides.k_outer = 1;
        d.overrides.k_inner = 3;
        d.overrides.family_delta = mpq_class(1, 1000);
        d.c_s = mpq_class(1, 3);
        return d;
    }

    auto delta_kd(int delta, int k, int d, long s1, const mpz_class & b1) -> Sqrt2Scaled
    {
        mpq_class base(1, 4 * delta * delta), ratio(mpz_of(s1), 2 * b1);
        base.canonicalize();
        ratio.canonicalize();
        return Sqrt2Scaled{pow_q(base, k) * pow_q(ratio, d), -long(d)};
    }

    namespace
    {
        struct PipelineContext
        {
            const Digraph & g;
            const Tournament & t;
            const EmbeddingStructure & es;
            const PipelineOptions & options;
            vector<VertexSet> A;                 // A_1..A_H
            vector<vector<int>> layers;          // V_1..V_H at 1..H
            int H = 0;

            auto s_of(int j) const -> long
            {
                return es.s[(j + es.w - 1) / es.w - 1];
            }

            auto m_of(int j) const -> const mpz_class &
            {
                return es.schedule.m[(j + es.w - 1) / es.w - 1];
            }

            auto members(int lo, int hi) const -> VertexSet
            {
                VertexSet s(t.n());
                for (int x = std::max(lo, 1); x <= hi; ++x)
                    s |= A[x - 1];
                return s;
            }

            // (A_{j-k} u ... u A_{j-1}, core) as an (A_j, r, s_j, delta_{k,r} C(m_j/3, r))-out-community
            auto community(int k, int j, const VertexSet & core, int r, std::uint64_t seed) const -> CommunityCertificate
            {
                CommunityCertificate cert;
                cert.members = members(j - k, j - 1);
                cert.core = core;
                cert.target = A[j - 1];
                cert.delta = r;
                cert.s = s_of(j);
                cert.bound = delta_kd(es.delta, k, r, es.s[0], es.schedule.b[0])
                                 .times(binomial_rational(mpq_class(m_of(j), 3), r));
                certify(t, cert, options.cap, options.samples, seed);
                return cert;
            }
        };

        auto condition3(const PipelineContext & ctx, const EmbedState & st, std::uint64_t seed) -> bool
        {
            const int n = ctx.t.n();
            for (int j = st.i + 1; j <= ctx.H; ++j)
                for (int v : ctx.layers[j]) {
                    VertexSet core(n);
                    for (int u : st.placed_in[v])
                        core.insert(st.phi[u]);
                    auto cert = ctx.community(k_index(st.i, j, ctx.es.w), j, core, st.r[v], derive_seed(seed, std::uint64_t(v)));
                    if (! cert.ok)
                        return false;
                }
            return true;
        }

        auto layers_of(const Layering & layering) -> vector<vector<int>>
        {
            return layering.layers();
        }

        auto finish(const Digraph & g, const Tournament & t, PipelineResult & result, const vector<int> & phi) -> void
        {
            result.embedding.map = phi;
            result.embedding.verified = verify_embedding(g, t, phi);
            require(result.embedding.verified, ErrorKind::LayerFailed, "final embedding failed verification");
        }
    }

    auto embed_pipeline(const Digraph & g, const Layering & layering, const Tournament & t, const EmbeddingStructure & es,
                        const PipelineOptions & options, std::uint64_t seed) -> PipelineResult
    {
        require(layering_valid(g, layering), ErrorKind::LayeringMismatch, "layering does not fit the digraph");
        require(max_edge_span(g, layering.layer_of) <= es.w, ErrorKind::LayeringMismatch,
                "guest bandwidth exceeds the structure's w = " + to_string(es.w));
        require(layering.H <= es.h * es.w, ErrorKind::LayeringMismatch, "guest has more layers than the structure");
        require(degree_profile(g, layering).delta <= es.delta, ErrorKind::LayeringMismatch,
                "guest degree exceeds the structure's Delta");
        if (options.audit) {
            auto audit = audit_structure(t, es, options.cap, options.samples);
            require(audit.ok, ErrorKind::PreconditionViolated,
                    "structure audit failed: " + (audit.failures.empty() ? string() : audit.failures.front()));
        }

        PipelineContext ctx{g, t, es, options, rename_structure(es, layering.H), layers_of(layering), layering.H};
        const int n = g.n();
        EmbedState st;
        st.phi.assign(n, -1);
        st.placed_in.assign(n, {});
        st.r.assign(n, 0);
        for (int v = 0; v < n; ++v)
            st.r[v] = int(g.in_adj(v).size());

        PipelineResult result;
        require(condition3(ctx, st, derive_seed(seed, 0)), ErrorKind::LayerFailed,
                "layer 0: community condition fails before embedding");
        VertexSet used(t.n());

        for (int i = 1; i <= ctx.H; ++i) {
            const auto & Vi = ctx.layers[i];
            vector<int> index_of(n, -1);
            for (size_t x = 0; x < Vi.size(); ++x)
                index_of[Vi[x]] = int(x);

            LayerInstance inst;
            inst.W1 = Vi;
            inst.A = ctx.A[i - 1];
            inst.delta_out = es.delta;
            inst.delta_in = es.delta;
            for (int u : Vi) {
                VertexSet core(t.n());
                for (int x : g.in_adj(u))
                    core.insert(st.phi[x]);
                inst.f.push_back(common_out_neighborhood(t, core, inst.A) - used);
            }
            // W2: out-neighbours of V_i, in label order
            vector<int> w2;
            for (int u : Vi)
                for (int v : g.out_adj(u))
                    w2.push_back(v);
            std::sort(w2.begin(), w2.end());
            w2.erase(std::unique(w2.begin(), w2.end()), w2.end());
            inst.W2 = w2;
            for (int v : w2) {
                vector<int> nv;
                for (int u : g.in_adj(v))
                    if (index_of[u] >= 0)
                        nv.push_back(index_of[u]);
                inst.nbrs.push_back(nv);
                int j = layering.layer_of[v];
                int k = k_index(i, j, es.w);
                int r_after = st.r[v] - int(nv.size());
                VertexSet before(t.n());
                for (int u : st.placed_in[v])
                    before.insert(st.phi[u]);
                std::uint64_t fseed = derive_seed(seed, 100000 + std::uint64_t(v));
                const PipelineContext * c = &ctx;
                inst.F.push_back(MonotoneFamily{inst.A, [c, k, j, before, r_after, fseed](const VertexSet & S) {
                                                    return ! c->community(k, j, before | S, r_after, fseed).ok;
                                                }});
            }

            LayerReport report;
            report.layer = i;
            bool accepted = false;
            string deficit;
            EmbedState next;
            for (int attempt = 0; attempt < options.layer_attempts && ! accepted; ++attempt) {
                report.attempts = attempt + 1;
                LayerOutcome lo;
                try {
                    lo = lll_embed_layer(inst, derive_seed(seed, std::uint64_t(i) * 64 + std::uint64_t(attempt)),
                                         options.max_resamples, options.trust_lll, options.cap);
                }
                catch (const Error & e) {
                    if (e.kind() != ErrorKind::ResampleBudgetExhausted && e.kind() != ErrorKind::PreconditionViolated)
                        throw;
                    deficit = e.what();
                    continue;
                }
                next = st;
                next.i = i;
                for (size_t x = 0; x < Vi.size(); ++x)
                    next.phi[Vi[x]] = lo.phi[x];
                for (int v = 0; v < n; ++v) {
                    int gained = 0;
                    for (int u : g.in_adj(v))
                        if (layering.layer_of[u] == i) {
                            next.placed_in[v].push_back(u);
                            ++gained;
                        }
                    next.r[v] = st.r[v] - gained;
                    require(next.r[v] == int(g.in_adj(v).size()) - int(next.placed_in[v].size()), ErrorKind::LayerFailed,
                            "bookkeeping of unembedded in-neighbours broke");
                }
                report.resamples += lo.resamples;
                report.lll_preconditions = lo.preconditions.hold();
                report.condition3 = condition3(ctx, next, derive_seed(seed, 200000 + std::uint64_t(i)));
                if (! report.condition3) {
                    deficit = "community condition fails after the layer";
                    continue;
                }
                accepted = true;
            }
            require(accepted, ErrorKind::LayerFailed, "layer " + to_string(i) + ": " + deficit);
            st = std::move(next);
            for (int u : Vi)
                used.insert(st.phi[u]);
            result.layers.push_back(report);
        }
        finish(g, t, result, st.phi);
        return result;
    }

    auto embed_graded_pipeline(const Digraph & g, const Layering & layering, const Tournament & t, const GradedStructure & gs,
                               const PipelineOptions & options, std::uint64_t seed) -> PipelineResult
    {
        require(layering_valid(g, layering), ErrorKind::LayeringMismatch, "layering does not fit the digraph");
        require(max_edge_span(g, layering.layer_of) <= 1, ErrorKind::PreconditionViolated, "the layering is not graded");
        const int H = layering.H, n = g.n();
        require(int(gs.A.size()) == H, ErrorKind::LayeringMismatch, "structure and guest disagree on the number of layers");
        if (options.audit) {
            auto audit = audit_graded_structure(t, gs, options.cap, options.samples);
            require(audit.ok, ErrorKind::PreconditionViolated,
                    "structure audit failed: " + (audit.failures.empty() ? string() : audit.failures.front()));
        }
        const auto layers = layering.layers();
        const auto & p = gs.params;
        vector<int> phi(n, -1);
        PipelineResult result;
        auto candidates = [&](int u, int i) {
            VertexSet core(t.n());
            for (int x : g.in_adj(u))
                core.insert(phi[x]);
            return common_out_neighborhood(t, core, gs.A[i - 1]);
        };

        for (int i = 1; i <= H - 1; ++i) {
            const auto & Vi = layers[i];
            vector<int> index_of(n, -1);
            for (size_t x = 0; x < Vi.size(); ++x)
                index_of[Vi[x]] = int(x);
            LayerInstance inst;
            inst.W1 = Vi;
            inst.A = gs.A[i - 1];
            inst.delta_out = p.delta_out;
            inst.delta_in = p.delta_in;
            for (int u : Vi)
                inst.f.push_back(i == 1 ? inst.A : candidates(u, i));
            const VertexSet next_set = gs.A[i];
            const long s_next = to_long(p.s[i]);
            const Tournament * tp = &t;
            for (int v : layers[i + 1]) {
                vector<int> nv;
                for (int u : g.in_adj(v))
                    nv.push_back(index_of[u]);
                inst.W2.push_back(v);
                inst.nbrs.push_back(nv);
                inst.F.push_back(MonotoneFamily{inst.A, [tp, next_set, s_next](const VertexSet & S) {
                                                    return long(common_out_neighborhood(*tp, S, next_set).size()) <= s_next;
                                                }});
            }
            LayerReport report;
            report.layer = i;
            bool accepted = false;
            string deficit;
            for (int attempt = 0; attempt < options.layer_attempts && ! accepted; ++attempt) {
                report.attempts = attempt + 1;
                try {
                    auto lo = lll_embed_layer(inst, derive_seed(seed, std::uint64_t(i) * 64 + std::uint64_t(attempt)),
                                              options.max_resamples, options.trust_lll, options.cap);
                    for (size_t x = 0; x < Vi.size(); ++x)
                        phi[Vi[x]] = lo.phi[x];
                    report.resamples += lo.resamples;
                    report.lll_preconditions = lo.preconditions.hold();
                    accepted = true;
                }
                catch (const Error & e) {
                    if (e.kind() != ErrorKind::ResampleBudgetExhausted && e.kind() != ErrorKind::PreconditionViolated)
                        throw;
                    deficit = e.what();
                }
            }
            require(accepted, ErrorKind::LayerFailed, "layer " + to_string(i) + ": " + deficit);
            report.condition3 = true;
            for (int v : layers[i + 1])
                report.condition3 = report.condition3 && long(candidates(v, i + 1).size()) >= s_next + 1;
            require(report.condition3, ErrorKind::LayerFailed, "layer " + to_string(i) + ": a next-layer vertex has too few candidates");
            result.layers.push_back(report);
        }

        // last layer: smallest unused candidate
        LayerReport report;
        report.layer = H;
        report.attempts = 1;
        report.greedy = true;
        VertexSet used(t.n());
        for (int v : layers[H]) {
            VertexSet c = (H == 1 ? gs.A[0] : candidates(v, H)) - used;
            require(! c.empty(), ErrorKind::LayerFailed, "layer " + to_string(H) + ": no free candidate for guest vertex " + to_string(v));
            phi[v] = c.first();
            used.insert(phi[v]);
        }
        report.condition3 = true;
        result.layers.push_back(report);
        finish(g, t, result, phi);
        return result;
    }
}
