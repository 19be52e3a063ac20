#pragma once

#include <rlab/bignum.hpp>
#include <rlab/communities.hpp>
#include <rlab/embed.hpp>
#include <rlab/lowerbound.hpp>
#include <rlab/structure.hpp>
#include <rlab/tournament.hpp>

#include <json.hpp>

#include <string>

namespace rlab
{
    inline constexpr const char * report_schema = "RLAB-REPORT 1";
    inline constexpr const char * library_version = "1.0.0";

    using Json = nlohmann::ordered_json;

    struct Report
    {
        std::string command;
        Json config = Json::object();
        Json result = Json::object();
        bool verified = false;                   // false writes the "unverified" marker
        bool timestamp = true;
    };

    // Key order is fixed, so equal reports render to equal bytes apart from the timestamp line.
    auto render_report(const Report & report) -> std::string;

    auto to_json(const mpz_class & z) -> Json;
    auto to_json(const mpq_class & q) -> Json;
    auto to_json(const Sqrt2Scaled & s) -> Json;
    auto to_json(const VertexSet & s) -> Json;
    auto to_json(const CommunityCertificate & c) -> Json;
    auto to_json(const DrcResult & r) -> Json;
    auto to_json(const StructureSchedule & s) -> Json;
    auto to_json(const EmbeddingStructure & es) -> Json;
    auto to_json(const GradedParams & p) -> Json;
    auto to_json(const AuditReport & a) -> Json;
    auto to_json(const PipelineResult & r) -> Json;
    auto to_json(const Property1Report & r) -> Json;
    auto to_json(const Property2Report & r) -> Json;
    auto to_json(const HostCheckReport & r) -> Json;
    auto to_json(const LowerBoundProvenance & p) -> Json;
    auto to_json(const FrontIndexTable & t) -> Json;
}
