#include <rlab/report.hpp>

#include <chrono>
#include <ctime>

namespace rlab
{
    namespace
    {
        auto drc_summary_json(const DrcSummary & d) -> Json
        {
            Json j;
            j["stage"] = d.stage;
            j["draws"] = d.draws;
            j["target_size"] = d.target_size;
            j["bad_count"] = d.bad_count;
            j["bad_bound"] = to_json(d.bad_bound);
            j["exact"] = d.exact;
            j["retries_used"] = d.retries_used;
            return j;
        }

        auto zs(const std::vector<mpz_class> & v) -> Json
        {
            Json a = Json::array();
            for (auto & z : v)
                a.push_back(to_json(z));
            return a;
        }

        auto utc_now() -> std::string
        {
            auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            char buf[32];
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
            return buf;
        }
    }

    auto render_report(const Report & report) -> std::string
    {
        Json j;
        j["schema"] = report_schema;
        j["version"] = library_version;
        j["command"] = report.command;
        j["config"] = report.config;
        j["status"] = report.verified ? "verified" : "unverified";
        j["result"] = report.result;
        if (report.timestamp)
            j["timestamp"] = utc_now();
        return j.dump(2) + "\n";
    }

    auto to_json(const mpz_class & z) -> Json
    {
        return z.get_str();
    }

    auto to_json(const mpq_class & q) -> Json
    {
        return to_string_q(q);
    }

    auto to_json(const Sqrt2Scaled & s) -> Json
    {
        Json j;
        j["coeff"] = to_string_q(s.coeff);
        j["half_exponent"] = s.half_exponent;
        j["text"] = s.to_string();
        j["approx"] = s.approx();
        return j;
    }

    auto to_json(const VertexSet & s) -> Json
    {
        return s.to_vector();
    }

    auto to_json(const CommunityCertificate & c) -> Json
    {
        Json j;
        j["size"] = c.members.size();
        j["core"] = to_json(c.core);
        j["target_size"] = c.target.size();
        j["delta"] = c.delta;
        j["s"] = c.s;
        j["bound"] = to_json(c.bound);
        j["direction"] = direction_name(c.direction);
        j["bad_count"] = c.bad_count;
        j["subsets"] = to_json(c.subsets);
        j["exact"] = c.exact;
        j["ok"] = c.ok;
        return j;
    }

    auto to_json(const DrcResult & r) -> Json
    {
        Json j;
        j["draws"] = r.draws;
        j["K"] = to_json(r.K);
        j["M_size"] = r.M.size();
        j["target_size"] = r.target.size();
        j["bad_count"] = r.bad_count;
        j["exact"] = r.exact;
        j["retries_used"] = r.retries_used;
        j["size_bound"] = to_json(r.size_bound);
        j["bad_bound"] = to_json(r.bad_bound);
        j["observed_density"] = to_json(r.observed_density);
        return j;
    }

    auto to_json(const StructureSchedule & s) -> Json
    {
        Json j;
        j["c_m"] = to_json(s.constants.c_m);
        j["c_b"] = to_json(s.constants.c_b);
        j["c_a"] = to_json(s.constants.c_a);
        j["c_top"] = to_json(s.constants.c_top);
        j["k_outer"] = s.constants.k_outer;
        j["k_inner"] = s.constants.k_inner;
        j["family_delta"] = to_json(s.constants.family_delta);
        j["m"] = zs(s.m);
        j["b"] = zs(s.b);
        j["a"] = zs(s.a);
        j["host_size"] = to_json(s.host_size);
        return j;
    }

    auto to_json(const EmbeddingStructure & es) -> Json
    {
        Json j;
        j["delta"] = es.delta;
        j["w"] = es.w;
        j["h"] = es.h;
        j["s"] = es.s;
        j["strength"] = to_json(es.strength);
        j["schedule"] = to_json(es.schedule);
        j["offsets"] = es.offsets;
        j["interval_choice"] = es.interval_choice;
        Json b = Json::array();
        for (auto & x : es.B)
            b.push_back(x.size());
        j["B_sizes"] = b;
        Json certs = Json::array();
        for (auto & c : es.certificates)
            certs.push_back(to_json(c));
        j["certificates"] = certs;
        Json drc = Json::array();
        for (auto & d : es.drc)
            drc.push_back(drc_summary_json(d));
        j["drc"] = drc;
        return j;
    }

    auto to_json(const GradedParams & p) -> Json
    {
        Json j;
        j["delta_out"] = p.delta_out;
        j["delta_in"] = p.delta_in;
        j["delta_in_layer"] = p.delta_in_layer;
        j["layer_sizes"] = p.layer_sizes;
        j["eps"] = to_json(p.eps);
        j["ell"] = p.ell;
        j["c_s"] = to_json(p.c_s);
        j["c_b"] = to_json(p.c_b);
        j["c_a"] = to_json(p.c_a);
        Json n = Json::array();
        for (auto & q : p.n)
            n.push_back(to_json(q));
        j["n"] = n;
        j["a"] = zs(p.a);
        j["b"] = zs(p.b);
        j["s"] = zs(p.s);
        j["host_size"] = to_json(p.host_size);
        return j;
    }

    auto to_json(const AuditReport & a) -> Json
    {
        Json j;
        j["ok"] = a.ok;
        j["failures"] = a.failures;
        j["certificates_exact"] = a.certificates_exact;
        j["certificates_sampled"] = a.certificates_sampled;
        return j;
    }

    auto to_json(const PipelineResult & r) -> Json
    {
        Json j;
        j["map"] = r.embedding.map;
        j["verified"] = r.embedding.verified;
        Json layers = Json::array();
        for (auto & l : r.layers) {
            Json x;
            x["layer"] = l.layer;
            x["attempts"] = l.attempts;
            x["resamples"] = l.resamples;
            x["lll_preconditions"] = l.lll_preconditions;
            x["condition3"] = l.condition3;
            x["greedy"] = l.greedy;
            layers.push_back(x);
        }
        j["layers"] = layers;
        return j;
    }

    auto to_json(const Property1Report & r) -> Json
    {
        Json j;
        j["mode"] = check_mode_name(r.mode);
        j["threshold"] = to_json(r.threshold);
        j["minimum"] = r.minimum;
        j["verdict"] = r.pass ? (r.mode == CheckMode::Sampled ? "not-falsified" : "pass") : "fail";
        j["examined"] = r.examined;
        j["label_x"] = r.label_x;
        j["label_y"] = r.label_y;
        return j;
    }

    auto to_json(const Property2Report & r) -> Json
    {
        Json j;
        j["mode"] = check_mode_name(r.mode);
        j["threshold"] = r.threshold;
        j["verdict"] = r.pass ? (r.mode == CheckMode::Sampled ? "not-falsified" : "pass") : "fail";
        j["examined"] = r.examined;
        j["witness_x"] = r.witness_x;
        j["witness_y"] = r.witness_y;
        return j;
    }

    auto to_json(const HostCheckReport & r) -> Json
    {
        Json j;
        j["k"] = r.k;
        j["x"] = to_json(r.x);
        j["mode"] = check_mode_name(r.mode);
        j["pairs"] = r.pairs;
        j["reduction_pass"] = r.reduction_pass;
        j["worst_w"] = to_json(r.worst_w);
        j["limit"] = to_json(mpq_class(mpq_class(51, 100) * r.x * r.x));
        j["verdict"] = r.mode == CheckMode::Vacuous ? "vacuous-pass"
                       : r.pass                     ? (r.mode == CheckMode::Sampled ? "not-falsified" : "pass")
                                                    : "fail";
        j["worst_t"] = r.worst_t;
        j["worst_s"] = r.worst_s;
        j["i0"] = r.i0;
        j["j0"] = r.j0;
        j["f_i0"] = to_json(r.f_i0);
        j["g_j0"] = to_json(r.g_j0);
        j["reduction_t"] = r.reduction_t;
        j["reduction_s"] = r.reduction_s;
        return j;
    }

    auto to_json(const LowerBoundProvenance & p) -> Json
    {
        Json j;
        j["branch"] = p.branch == LowerBranch::Small ? "small" : "large";
        j["n"] = p.n;
        j["delta"] = p.delta;
        j["c0"] = to_json(p.c0);
        j["c1"] = to_json(p.c1);
        j["seed"] = p.seed;
        j["host_size"] = p.host_size;
        j["k"] = p.k;
        j["part_size"] = p.part_size;
        j["host_overridden"] = p.host_overridden;
        j["m"] = p.rounding.m;
        j["d"] = p.rounding.d;
        j["removed_per_side"] = p.rounding.removed;
        j["degenerate"] = p.rounding.degenerate;
        return j;
    }

    auto to_json(const FrontIndexTable & t) -> Json
    {
        Json j;
        Json rows = Json::array();
        for (std::size_t i = 1; i < t.f.size(); ++i) {
            Json row;
            row["layer"] = i;
            row["defined"] = bool(t.defined[i]);
            row["j"] = t.j[i];
            Json f = Json::array();
            for (std::size_t k = 1; k < t.f[i].size(); ++k)
                f.push_back(to_json(t.f[i][k]));
            row["f"] = f;
            rows.push_back(row);
        }
        j["layers"] = rows;
        j["monotonicity_violations"] = t.monotonicity_violations;
        j["jump_violations"] = t.jump_violations;
        j["embedding_valid"] = t.embedding_valid;
        return j;
    }
}
