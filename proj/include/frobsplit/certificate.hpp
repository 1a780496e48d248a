#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "frobsplit/finitefield.hpp"
#include "frobsplit/rational.hpp"

namespace frobsplit {

inline constexpr const char* kToolName = "frobsplit";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

using Json = nlohmann::json;

Json rat_json(const Rat& r);
Json fq_json(const FqElem& a);
Json ctx_json(const FqContext& ctx);

std::string iso8601_utc_now();

/// One statement in a proof certificate: either COMPUTED (replayable by
/// this tool from the recorded inputs) or CITED (an external theorem,
/// always with a reference).
struct CertNode {
    enum class Kind { Computed, Cited };
    std::string id;
    Kind kind = Kind::Computed;
    std::string statement;
    Json data = Json::object();
    std::vector<std::string> depends_on;
    std::string paper_ref;
};

/// A DAG of certificate nodes plus run metadata.  Nodes may only depend
/// on earlier nodes, so the dependency graph is acyclic by construction.
class Certificate {
public:
    Certificate(std::string command, std::uint64_t p, Json parameters);

    void add_computed(const std::string& id, const std::string& statement, Json data,
                      std::vector<std::string> depends_on = {});
    void add_cited(const std::string& id, const std::string& statement, const std::string& paper_ref,
                   std::vector<std::string> depends_on = {}, Json data = Json::object());

    const std::vector<CertNode>& nodes() const { return nodes_; }
    const std::string& command() const { return command_; }
    std::uint64_t p() const { return p_; }
    const Json& parameters() const { return parameters_; }

    /// Full document, timestamped.
    Json to_json() const;
    /// The deterministic part: identical runs produce identical bodies.
    Json body_json() const;

private:
    void add_node(CertNode node);
    std::string command_;
    std::uint64_t p_;
    Json parameters_;
    std::string timestamp_;
    std::vector<CertNode> nodes_;
};

/// Structural validation mirroring schema/certificate.schema.json; empty
/// result means valid.
std::vector<std::string> validate_certificate_json(const Json& doc);

/// Strips the volatile timestamp, leaving the replay-comparable body.
Json certificate_body(const Json& doc);

} // namespace frobsplit
