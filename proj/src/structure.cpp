#include <rlab/structure.hpp>
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
        auto pow3(unsigned long e) -> mpz_class
        {
            mpz_class r;
            mpz_ui_pow_ui(r.get_mpz_t(), 3, e);
            return r;
        }

        auto mpz_of(long v) -> mpz_class
        {
            return mpz_class(std::to_string(v));
        }

        // the first `count` members by vertex index
        auto truncate(const VertexSet & set, long count) -> VertexSet
        {
            if (set.size() <= count)
                return set;
            VertexSet result(set.universe());
            long taken = 0;
            set.for_each([&](int v) {
                if (taken < count) {
                    result.insert(v);
                    ++taken;
                }
            });
            return result;
        }

        auto summary(const string & stage, const DrcResult & r) -> DrcSummary
        {
            return {stage, r.draws, r.target.size(), r.bad_count, r.bad_bound, r.exact, r.retries_used};
        }

        auto positions_within(const MedianOrder & median, const VertexSet & set, long lo, long hi) -> bool
        {
            bool ok = true;
            set.for_each([&](int v) {
                long p = median.position[v] + 1;
                ok = ok && p >= lo && p < hi;
            });
            return ok;
        }
    }

    auto resolve_constants(int delta, int w, const StructureOverrides & o) -> StructureConstants
    {
        require(delta >= 1 && w >= 1, ErrorKind::InfeasibleParams, "Delta and w must be positive");
        unsigned long dw = static_cast<unsigned long>(delta) * static_cast<unsigned long>(w);
        StructureConstants c;
        c.c_m = o.c_m.value_or(mpq_class(pow3(30 * dw)));
        c.c_b = o.c_b.value_or(mpq_class(pow3(6 * dw)));
        c.c_a = o.c_a.value_or(mpq_class(pow3(10 * dw)));
        c.c_top = o.c_top.value_or(mpq_class(pow3(3 * dw)));
        c.k_outer = o.k_outer.value_or(2 * delta * w);
        c.k_inner = o.k_inner.value_or(2 * delta);
        c.family_delta = o.family_delta.value_or(mpq_class(1, pow3(3 * static_cast<unsigned long>(delta))));
        c.drc_density = o.drc_density.value_or(mpq_class(1, 3));
        c.family_delta.canonicalize();
        require(c.c_m > 0 && c.c_b >= 1 && c.c_a >= 1 && c.c_top >= 1, ErrorKind::InfeasibleParams, "constants out of range");
        require(c.k_outer >= 1 && c.k_inner >= 1, ErrorKind::InfeasibleParams, "draw counts must be positive");
        return c;
    }

    auto structure_schedule(const StructureParams & p) -> StructureSchedule
    {
        require(p.h >= 1 && int(p.s.size()) == p.h, ErrorKind::InfeasibleParams, "need exactly h values s_i");
        require(p.strength.coeff > 0 && ! at_least(p.strength, mpq_class(1)), ErrorKind::InfeasibleParams,
                "strength must lie in (0,1)");
        for (int i = 0; i < p.h; ++i) {
            require(p.s[i] >= 1, ErrorKind::InfeasibleParams, "s_i must be positive");
            long prev = i > 0 ? p.s[i - 1] : 0, next = i + 1 < p.h ? p.s[i + 1] : 0;
            require(2 * p.s[i] >= std::max(prev, next), ErrorKind::InfeasibleParams,
                    "s_" + to_string(i + 1) + " is below half of a neighbour");
        }
        StructureSchedule sched;
        sched.constants = resolve_constants(p.delta, p.w, p.overrides);
        const auto & c = sched.constants;
        sched.host_size = 0;
        // x^Delta >= (c_m s)^Delta / strength  <=>  x^{2 Delta} >= (c_m s)^{2 Delta} / (coeff^2 2^{half_exponent})
        for (int i = 0; i < p.h; ++i) {
            mpq_class base = c.c_m * mpz_of(p.s[i]);
            mpq_class v = pow_q(base, 2 * p.delta) / (p.strength.coeff * p.strength.coeff);
            if (p.strength.half_exponent >= 0)
                mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<unsigned long>(p.strength.half_exponent));
            else
                mpq_mul_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<unsigned long>(-p.strength.half_exponent));
            mpz_class m = ceil_root(v, 2 * p.delta);
            sched.m.push_back(m);
            sched.b.push_back(ceil_q(c.c_b * m));
            sched.a.push_back(ceil_q(c.c_a * sched.b.back()));
            sched.host_size += 6 * sched.a.back();
        }
        return sched;
    }

    auto structure_certificate_bound(const Sqrt2Scaled & strength, long s, const mpz_class & b, const mpz_class & m, int delta)
        -> Sqrt2Scaled
    {
        mpq_class ratio(mpz_of(s), 2 * b);
        ratio.canonicalize();
        return strength.times(pow_q(ratio, delta) * binomial_rational(mpq_class(m, 3), delta));
    }

    auto backward_step(const Tournament & t, const BackwardStepRequest & req) -> BackwardStepResult
    {
        const int n = t.n(), w = req.w;
        const auto c = resolve_constants(req.delta, w, req.overrides);
        const auto & ov = req.overrides;
        require(! req.I.intersects(req.B), ErrorKind::PreconditionViolated, "I and B must be disjoint");
        require(mpz_of(req.B.size()) >= 3 * c.c_b, ErrorKind::PreconditionViolated,
                "|B| = " + to_string(req.B.size()) + " is below 3 c_b = " + mpq_class(3 * c.c_b).get_str());
        const bool has_i = ! req.I.empty();
        const long b_out = req.b_out.value_or(to_long(floor_q(mpz_of(req.I.size()) / c.c_a)));
        const long m = req.m.value_or(to_long(ceil_q(mpz_of(req.B.size()) / c.c_b)));
        const long top = req.top_cap.value_or(to_long(floor_q(mpz_of(req.B.size()) / c.c_top)));
        require(b_out <= req.I.size(), ErrorKind::PreconditionViolated, "|A| cannot exceed |I|");
        if (has_i) {
            auto d = edge_density(t, req.I, req.B);
            require(d >= c.drc_density, ErrorKind::DensityTooLow,
                    "d(I,B) = " + d.get_str() + " is below " + c.drc_density.get_str());
        }

        auto in_adj = adjacency(t, Direction::In);
        auto out_adj = adjacency(t, Direction::Out);
        string deficit;
        for (int attempt = 0; attempt < ov.step_attempts; ++attempt) {
            std::uint64_t seed = derive_seed(req.seed, std::uint64_t(attempt));
            BackwardStepResult res;
            res.b_out = b_out;
            res.m = m;
            res.attempts = attempt + 1;
            res.B_sub.assign(w + 1, VertexSet(n));
            res.K.assign(w + 1, VertexSet(n));
            vector<VertexSet> a_sets(w + 1, VertexSet(n));
            vector<mpq_class> bounds(w + 1);
            try {
                VertexSet bw = req.B;
                if (has_i) {
                    DrcRequest outer;
                    outer.L = req.B;
                    outer.R = req.I;
                    outer.A = VertexSet(n);
                    outer.k = c.k_outer;
                    outer.delta = c.k_inner * w;
                    outer.s = b_out;
                    outer.d = c.drc_density;
                    outer.max_retries = ov.drc_retries;
                    outer.seed = derive_seed(seed, 0);
                    outer.cap = ov.cap;
                    outer.samples = ov.samples;
                    auto r = dependent_random_choice(in_adj, outer);
                    res.drc.push_back(summary("outer", r));
                    bw = r.M;
                }
                bw = truncate(bw, top);
                if (bw.size() < m) {
                    deficit = "|B_w| = " + to_string(bw.size()) + " < m = " + to_string(m);
                    continue;
                }
                res.B_sub[w] = bw;
                a_sets[w] = req.I;
                bool short_set = false;
                for (int i = w; i >= 1 && ! short_set; --i) {
                    const VertexSet & bi = res.B_sub[i];
                    DrcRequest inner;
                    inner.L = bi;
                    inner.R = bi;
                    inner.A = a_sets[i];
                    inner.k = c.k_inner;
                    inner.delta = req.delta;
                    inner.s = req.s;
                    inner.d = c.drc_density;
                    inner.max_retries = ov.drc_retries;
                    inner.seed = derive_seed(seed, std::uint64_t(i));
                    inner.cap = ov.cap;
                    inner.samples = ov.samples;
                    if (has_i) {
                        int order = c.k_inner * (i - 1);
                        Sqrt2Scaled bound{pow_q(c.family_delta, i - 1) * mpq_class(binomial(m, order)), 0};
                        VertexSet core = res.K[i];
                        const VertexSet & target = req.I;
                        long s_fam = b_out;
                        long long cap = ov.cap;
                        long samples = ov.samples;
                        std::uint64_t fseed = derive_seed(seed, 5000 + std::uint64_t(i));
                        inner.family = MonotoneFamily{bi, [&t, bi, core, target, order, s_fam, bound, cap, samples,
                                                            fseed](const VertexSet & extra) {
                            CommunityCertificate cert;
                            cert.members = bi;
                            cert.core = core | extra;
                            cert.target = target;
                            cert.delta = order;
                            cert.s = s_fam;
                            cert.bound = bound;
                            cert.direction = Direction::In;
                            certify(t, cert, cap, samples, fseed);
                            return ! cert.ok;
                        }};
                        inner.family_density = c.family_delta;
                        inner.trust_family = true;
                    }
                    auto r = dependent_random_choice(out_adj, inner);
                    res.drc.push_back(summary("inner " + to_string(i), r));
                    bounds[i] = r.bad_bound;
                    res.K[i - 1] = res.K[i] | r.K;
                    res.B_sub[i - 1] = common_neighbourhood(t.in_rows(), res.K[i - 1], bw);
                    a_sets[i - 1] = common_neighbourhood(t.in_rows(), res.K[i - 1], req.I);
                    if (i - 1 >= 1 && res.B_sub[i - 1].size() < m) {
                        deficit = "|B_" + to_string(i - 1) + "| = " + to_string(res.B_sub[i - 1].size()) + " < m = " +
                                  to_string(m);
                        short_set = true;
                    }
                }
                if (short_set)
                    continue;
                if (a_sets[0].size() < b_out) {
                    deficit = "|A_0| = " + to_string(a_sets[0].size()) + " < b = " + to_string(b_out);
                    continue;
                }
                res.A = truncate(a_sets[0], b_out);
                bool all_ok = true;
                for (int j = 1; j <= w; ++j) {
                    CommunityCertificate cert;
                    cert.members = res.A | res.B_sub[j - 1];
                    cert.core = VertexSet(n);
                    cert.target = res.B_sub[j];
                    cert.delta = req.delta;
                    cert.s = req.s;
                    cert.bound = Sqrt2Scaled{bounds[j], 0};
                    certify(t, cert, ov.cap, ov.samples, derive_seed(seed, 9000 + std::uint64_t(j)));
                    if (! cert.ok) {
                        all_ok = false;
                        deficit = "step certificate " + to_string(j) + ": bad " + to_string(cert.bad_count) + " vs " +
                                  cert.bound.to_string();
                    }
                    res.certificates.push_back(std::move(cert));
                }
                if (! all_ok)
                    continue;
                return res;
            }
            catch (const Error & e) {
                if (e.kind() != ErrorKind::RetriesExhausted)
                    throw;
                deficit = e.what();
            }
        }
        fail(ErrorKind::StructureFailed,
             "backward step failed after " + to_string(ov.step_attempts) + " attempts; last deficit: " + deficit);
    }

    auto build_structure(const Tournament & t, const StructureParams & params, std::uint64_t seed) -> EmbeddingStructure
    {
        auto sched = structure_schedule(params);
        const int N = t.n(), h = params.h, w = params.w;
        require(mpz_of(N) >= sched.host_size, ErrorKind::TooSmall,
                "host has " + to_string(N) + " vertices, needs " + sched.host_size.get_str());
        const auto & c = sched.constants;

        EmbeddingStructure es;
        es.delta = params.delta;
        es.w = w;
        es.h = h;
        es.s = params.s;
        es.strength = params.strength;
        es.schedule = sched;
        es.median = median_order_local(t, derive_seed(seed, 0xfeed));
        es.offsets.assign(h, 0);
        es.interval_choice.assign(h, 0);
        es.B.assign(h, VertexSet(N));
        es.B_sub.assign(h, vector<VertexSet>(w + 1, VertexSet(N)));

        vector<long> a(h), b(h), m(h);
        for (int i = 0; i < h; ++i) {
            a[i] = to_long(sched.a[i]);
            b[i] = to_long(sched.b[i]);
            m[i] = to_long(sched.m[i]);
        }
        es.offsets[h - 1] = int(N - a[h - 1] + 1);
        es.B[h - 1] = interval_set(es.median, es.offsets[h - 1], N + 1);

        vector<vector<CommunityCertificate>> certs(h);
        for (int i = h; i >= 1; --i) {
            const VertexSet & bi = es.B[i - 1];
            VertexSet interval(N);
            if (i >= 2) {
                int chosen = 0;
                for (int l = 1; l <= 6 && ! chosen; ++l) {
                    long lo = es.offsets[i - 1] - l * a[i - 2];
                    VertexSet cand = interval_set(es.median, int(lo), int(lo + a[i - 2]));
                    if (edge_density(t, cand, bi) >= mpq_class(1, 3)) {
                        chosen = l;
                        es.offsets[i - 2] = int(lo);
                        interval = cand;
                    }
                }
                require(chosen > 0, ErrorKind::StructureFailed,
                        "layer " + to_string(i) + ": no interval of density 1/3 among the six candidates");
                es.interval_choice[i - 1] = chosen;
            }
            long top = std::min(i >= 2 ? to_long(floor_q(mpz_of(bi.size()) / c.c_top)) : long(bi.size()), b[i - 1]);
            string deficit;
            bool accepted = false;
            for (int attempt = 0; attempt < params.overrides.step_attempts && ! accepted; ++attempt) {
                BackwardStepRequest req;
                req.I = interval;
                req.B = bi;
                req.delta = params.delta;
                req.w = w;
                req.s = params.s[i - 1];
                req.b_out = i >= 2 ? b[i - 2] : 0;
                req.m = m[i - 1];
                req.top_cap = top;
                req.overrides = params.overrides;
                req.seed = derive_seed(seed, std::uint64_t(i) * 1000 + std::uint64_t(attempt));
                BackwardStepResult step;
                try {
                    step = backward_step(t, req);
                }
                catch (const Error & e) {
                    if (e.kind() != ErrorKind::StructureFailed)
                        throw;
                    deficit = e.what();
                    continue;
                }
                VertexSet prev = i >= 2 ? step.A : VertexSet(N);
                vector<CommunityCertificate> layer;
                bool ok = true;
                for (int j = 1; j <= w; ++j) {
                    CommunityCertificate cert;
                    cert.members = prev | step.B_sub[j - 1];
                    cert.core = VertexSet(N);
                    cert.target = step.B_sub[j];
                    cert.delta = params.delta;
                    cert.s = params.s[i - 1];
                    cert.bound = structure_certificate_bound(params.strength, params.s[i - 1], sched.b[i - 1], sched.m[i - 1],
                                                             params.delta);
                    certify(t, cert, params.overrides.cap, params.overrides.samples,
                            derive_seed(req.seed, 7000 + std::uint64_t(j)));
                    if (! cert.ok) {
                        ok = false;
                        deficit = "certificate (" + to_string(i) + "," + to_string(j) + "): bad " + to_string(cert.bad_count) +
                                  " vs " + cert.bound.to_string();
                    }
                    layer.push_back(std::move(cert));
                }
                if (! ok)
                    continue;
                accepted = true;
                if (i >= 2)
                    es.B[i - 2] = step.A;
                es.B_sub[i - 1] = step.B_sub;
                certs[i - 1] = std::move(layer);
                for (auto & d : step.drc) {
                    d.stage = "layer " + to_string(i) + " " + d.stage;
                    es.drc.push_back(std::move(d));
                }
            }
            require(accepted, ErrorKind::StructureFailed, "layer " + to_string(i) + ": " + deficit);
        }
        for (auto & layer : certs)
            for (auto & cert : layer)
                es.certificates.push_back(std::move(cert));
        return es;
    }

    auto rename_index(int i, int w) -> std::pair<int, int>
    {
        require(i >= 1 && w >= 1, ErrorKind::IndexOutOfRange, "layer index must be positive");
        return {(i + w - 1) / w, (i - 1) % w + 1};
    }

    auto rename_structure(const EmbeddingStructure & es, int H) -> vector<VertexSet>
    {
        require(H >= 0 && H <= es.h * es.w, ErrorKind::IndexOutOfRange,
                "H = " + to_string(H) + " exceeds h w = " + to_string(es.h * es.w));
        vector<VertexSet> result;
        for (int i = 1; i <= H; ++i) {
            auto [block, j] = rename_index(i, es.w);
            result.push_back(es.B_sub[block - 1][j]);
        }
        return result;
    }

    auto audit_structure(const Tournament & t, const EmbeddingStructure & es, long long cap, long samples) -> AuditReport
    {
        AuditReport report;
        auto flag = [&](bool ok, const string & what) {
            if (! ok) {
                report.ok = false;
                report.failures.push_back(what);
            }
        };
        const int N = t.n(), h = es.h, w = es.w;
        const auto & sc = es.schedule;
        flag(int(es.B.size()) == h && int(es.B_sub.size()) == h && int(es.offsets.size()) == h, "shape");
        if (! report.ok)
            return report;
        flag(es.offsets[h - 1] == to_long(N - sc.a[h - 1] + 1), "o_h = N - a_h + 1");
        flag(es.offsets[0] >= 1, "o_1 >= 1");
        for (int i = 2; i <= h; ++i) {
            long o = es.offsets[i - 1], prev = es.offsets[i - 2], a_prev = to_long(sc.a[i - 2]);
            flag(prev >= o - 6 * a_prev && prev <= o - a_prev, "offset window at layer " + to_string(i));
        }
        for (int i = 1; i <= h; ++i) {
            const auto & bi = es.B[i - 1];
            flag(positions_within(es.median, bi, es.offsets[i - 1], es.offsets[i - 1] + to_long(sc.a[i - 1])),
                 "B_" + to_string(i) + " outside its interval");
            for (int k = i + 1; k <= h; ++k)
                flag(! bi.intersects(es.B[k - 1]), "B_" + to_string(i) + " meets B_" + to_string(k));
            const auto & sub = es.B_sub[i - 1];
            for (int j = 0; j <= w; ++j) {
                flag(sub[j].is_subset_of(j < w ? sub[j + 1] : bi), "nesting at (" + to_string(i) + "," + to_string(j) + ")");
                if (j >= 1)
                    flag(mpz_of(sub[j].size()) >= sc.m[i - 1] && mpz_of(sub[j].size()) <= sc.b[i - 1],
                         "size sandwich at (" + to_string(i) + "," + to_string(j) + ")");
            }
            for (int j = 1; j <= w; ++j) {
                CommunityCertificate cert;
                cert.members = (i >= 2 ? es.B[i - 2] : VertexSet(N)) | sub[j - 1];
                cert.core = VertexSet(N);
                cert.target = sub[j];
                cert.delta = es.delta;
                cert.s = es.s[i - 1];
                cert.bound = structure_certificate_bound(es.strength, es.s[i - 1], sc.b[i - 1], sc.m[i - 1], es.delta);
                certify(t, cert, cap, samples, derive_seed(0xa0d17, std::uint64_t(i * 64 + j)));
                (cert.exact ? report.certificates_exact : report.certificates_sampled)++;
                flag(cert.ok, "certificate (" + to_string(i) + "," + to_string(j) + "): bad " + to_string(cert.bad_count) +
                                  " vs " + cert.bound.to_string());
            }
        }
        return report;
    }

    auto graded_params(const Digraph & g, const Layering & layering, const GradedOverrides & ov) -> GradedParams
    {
        require(layering_valid(g, layering) && max_edge_span(g, layering.layer_of) <= 1, ErrorKind::PreconditionViolated,
                "the layering is not graded");
        auto profile = degree_profile(g, layering);
        const int H = layering.H;
        GradedParams p;
        p.delta_out = profile.delta_out;
        p.delta_in = profile.delta_in;
        p.delta_in_layer = profile.delta_in_per_layer;
        p.layer_sizes = layering.layer_sizes();
        require(p.delta_in >= 1, ErrorKind::HypothesisViolation, "guest has no edges");
        for (int i = 1; i <= H - 1; ++i)
            require(p.delta_in_layer[i] >= 1, ErrorKind::HypothesisViolation,
                    "layers " + to_string(i) + " and " + to_string(i + 1) + " are not joined; split into components");
        p.eps = mpq_class(2, p.delta_in);
        p.eps.canonicalize();
        p.ell = ov.ell.value_or(4 * p.delta_in + 4);
        require(p.ell >= 2, ErrorKind::InfeasibleParams, "l must be at least 2");
        p.c_s = ov.c_s.value_or(mpq_class(32));
        p.c_b = ov.c_b.value_or(2000 * p.delta_out * p.delta_in * p.c_s);
        p.c_a = ov.c_a.value_or(2 * p.c_b);
        mpq_class q = 2 + p.eps;
        p.n.assign(H, mpq_class(0));
        for (int i = H; i >= 1; --i) {
            p.n[i - 1] = pow_q(q, 2 * (p.delta_in_layer[i - 1] + p.delta_in_layer[i])) * p.layer_sizes[i - 1];
            if (i < H)
                p.n[i - 1] += p.n[i] / 2;
        }
        p.host_size = 0;
        for (int i = 1; i <= H; ++i) {
            p.a.push_back(ceil_q(p.c_a * p.n[i - 1]));
            p.b.push_back(ceil_q(p.c_b / pow_q(q, 2 * p.delta_in_layer[i]) * p.n[i - 1]));
            p.s.push_back(ceil_q(p.c_s / pow_q(q, 2 * (p.delta_in_layer[i] + p.delta_in_layer[i - 1])) * p.n[i - 1]));
            p.host_size += 2 * p.ell * p.a.back();
        }
        for (int i = 1; i <= H; ++i) {
            if (i == H) {
                p.strength.push_back(Sqrt2Scaled{mpq_class(0), 0});
                continue;
            }
            int d = p.delta_in_layer[i];
            mpq_class ratio(p.s[i], p.b[i]);
            ratio.canonicalize();
            p.strength.push_back(Sqrt2Scaled{pow_q(ratio, d) / (4 * p.delta_in * p.delta_out), -d});
        }
        return p;
    }

    auto graded_backward_step(const Tournament & t, const MedianOrder & median, const GradedStepRequest & r) -> GradedStepResult
    {
        const long N = t.n();
        require(2 * r.a_prime >= r.a, ErrorKind::PreconditionViolated, "need 2a' >= a");
        require(2 * r.ell * r.a_prime < r.o && r.o <= N - r.a + 1, ErrorKind::PreconditionViolated,
                "need 2 l a' < o <= N - a + 1 (o = " + to_string(r.o) + ")");
        require(r.ell >= 2 && r.k >= 1 && r.delta_in >= 0, ErrorKind::PreconditionViolated, "bad l, k or Delta-");
        require(positions_within(median, r.B, r.o, r.o + r.a), ErrorKind::PreconditionViolated, "B must lie in [o, o + a)");
        require(r.B.size() >= r.b && r.b >= 1, ErrorKind::PreconditionViolated, "|B| must be at least b >= 1");

        mpq_class d(r.ell - 1, 2 * r.ell);
        d.canonicalize();
        GradedStepResult res;
        VertexSet chosen(t.n());
        for (int i = 1; i <= 2 * r.ell && ! res.subinterval; ++i) {
            long lo = r.o + (i - 2 * r.ell - 1) * r.a_prime;
            VertexSet cand = interval_set(median, int(lo), int(lo + r.a_prime));
            if (edge_density(t, cand, r.B) >= d) {
                res.subinterval = i;
                res.o_prime = int(lo);
                chosen = cand;
            }
        }
        require(res.subinterval > 0, ErrorKind::StructureFailed, "no subinterval reaches density (l-1)/(2l)");

        DrcRequest drc;
        drc.L = chosen;
        drc.R = r.B;
        drc.A = VertexSet(t.n());
        drc.k = r.k;
        drc.delta = r.delta_in;
        drc.s = r.s;
        drc.d = d;
        drc.max_retries = r.retries;
        drc.seed = r.seed;
        drc.cap = r.cap;
        drc.samples = r.samples;
        auto out = dependent_random_choice(adjacency(t, Direction::Out), drc);
        res.drc = summary("graded", out);
        res.A = out.M;
        res.size_bound = mpq_class(r.a_prime, 2) * pow_q(d, r.k);
        require(mpq_class(res.A.size()) >= res.size_bound, ErrorKind::StructureFailed, "|A| is below a'/2 d^k");

        mpq_class inv(2 * r.ell, r.ell - 1), ratio(r.s, r.b);
        inv.canonicalize();
        ratio.canonicalize();
        auto & cert = res.certificate;
        cert.members = res.A;
        cert.core = VertexSet(t.n());
        cert.target = r.B;
        cert.delta = r.delta_in;
        cert.s = r.s;
        cert.bound = Sqrt2Scaled{4 * pow_q(inv, r.k) * mpq_class(binomial(r.a_prime, r.delta_in)) * pow_q(ratio, r.k), 0};
        certify(t, cert, r.cap, r.samples, derive_seed(r.seed, 77));
        return res;
    }

    auto build_graded_structure(const Tournament & t, const Digraph & g, const Layering & layering, const GradedOverrides & ov,
                                std::uint64_t seed) -> GradedStructure
    {
        GradedStructure gs;
        gs.params = graded_params(g, layering, ov);
        const auto & p = gs.params;
        const int N = t.n(), H = layering.H;
        require(mpz_of(N) >= p.host_size, ErrorKind::TooSmall,
                "host has " + to_string(N) + " vertices, needs " + p.host_size.get_str());
        gs.median = median_order_local(t, derive_seed(seed, 0xfeed));
        gs.offsets.assign(H, 0);
        gs.A.assign(H, VertexSet(N));
        gs.step_certificates.resize(std::max(H - 1, 0));
        gs.strength_certificates.resize(std::max(H - 1, 0));
        long a_top = to_long(p.a[H - 1]);
        gs.offsets[H - 1] = int(N - a_top + 1);
        gs.A[H - 1] = interval_set(gs.median, gs.offsets[H - 1], N + 1);

        for (int i = H - 1; i >= 1; --i) {
            string deficit;
            bool accepted = false;
            for (int attempt = 0; attempt < ov.step_attempts && ! accepted; ++attempt) {
                GradedStepRequest req;
                req.o = gs.offsets[i];
                req.B = gs.A[i];
                req.a = to_long(p.a[i]);
                req.a_prime = to_long(p.a[i - 1]);
                req.b = to_long(p.b[i]);
                req.ell = p.ell;
                req.k = 2 * p.delta_in_layer[i];
                req.s = to_long(p.s[i]);
                req.delta_in = p.delta_in_layer[i];
                req.retries = ov.drc_retries;
                req.cap = ov.cap;
                req.samples = ov.samples;
                req.seed = derive_seed(seed, std::uint64_t(i) * 1000 + std::uint64_t(attempt));
                GradedStepResult step;
                try {
                    step = graded_backward_step(t, gs.median, req);
                }
                catch (const Error & e) {
                    if (e.kind() != ErrorKind::RetriesExhausted && e.kind() != ErrorKind::StructureFailed)
                        throw;
                    deficit = e.what();
                    continue;
                }
                if (mpz_of(step.A.size()) < p.b[i - 1]) {
                    deficit = "|A_" + to_string(i) + "| = " + to_string(step.A.size()) + " < b = " + p.b[i - 1].get_str();
                    continue;
                }
                if (! step.certificate.ok) {
                    deficit = "step certificate: bad " + to_string(step.certificate.bad_count);
                    continue;
                }
                CommunityCertificate strong = step.certificate;
                strong.bound = p.strength[i - 1].times(mpq_class(binomial(step.A.size(), p.delta_in_layer[i])));
                certify(t, strong, ov.cap, ov.samples, derive_seed(req.seed, 78));
                if (! strong.ok) {
                    deficit = "strength certificate: bad " + to_string(strong.bad_count) + " vs " + strong.bound.to_string();
                    continue;
                }
                accepted = true;
                gs.offsets[i - 1] = step.o_prime;
                gs.A[i - 1] = step.A;
                gs.step_certificates[i - 1] = step.certificate;
                gs.strength_certificates[i - 1] = strong;
                step.drc.stage = "layer " + to_string(i);
                gs.drc.push_back(step.drc);
            }
            require(accepted, ErrorKind::StructureFailed, "layer " + to_string(i) + ": " + deficit);
        }
        return gs;
    }

    auto audit_graded_structure(const Tournament & t, const GradedStructure & gs, long long cap, long samples) -> AuditReport
    {
        AuditReport report;
        auto flag = [&](bool ok, const string & what) {
            if (! ok) {
                report.ok = false;
                report.failures.push_back(what);
            }
        };
        const auto & p = gs.params;
        const int H = int(gs.A.size()), N = t.n();
        flag(H >= 1 && int(gs.offsets.size()) == H, "shape");
        if (! report.ok)
            return report;
        flag(gs.offsets[H - 1] == N - to_long(p.a[H - 1]) + 1, "o_H = N - a_H + 1");
        flag(gs.offsets[0] >= 1, "o_1 >= 1");
        for (int i = 1; i <= H; ++i) {
            long o = gs.offsets[i - 1], a = to_long(p.a[i - 1]);
            flag(positions_within(gs.median, gs.A[i - 1], o, o + a), "A_" + to_string(i) + " outside its interval");
            flag(mpz_of(gs.A[i - 1].size()) >= p.b[i - 1], "|A_" + to_string(i) + "| < b_" + to_string(i));
            for (int k = i + 1; k <= H; ++k)
                flag(! gs.A[i - 1].intersects(gs.A[k - 1]), "A_" + to_string(i) + " meets A_" + to_string(k));
            if (i < H) {
                long next = gs.offsets[i];
                flag(o >= next - 2 * p.ell * a && o <= next - a, "offset window at layer " + to_string(i));
                for (auto * list : {&gs.step_certificates, &gs.strength_certificates}) {
                    CommunityCertificate cert = (*list)[i - 1];
                    flag(cert.members == gs.A[i - 1] && cert.target == gs.A[i], "certificate sets at layer " + to_string(i));
                    certify(t, cert, cap, samples, derive_seed(0xa0d17, std::uint64_t(i)));
                    (cert.exact ? report.certificates_exact : report.certificates_sampled)++;
                    flag(cert.ok, "certificate at layer " + to_string(i) + ": bad " + to_string(cert.bad_count) + " vs " +
                                      cert.bound.to_string());
                }
            }
        }
        return report;
    }
}
