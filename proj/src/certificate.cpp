#include "frobsplit/certificate.hpp"

#include <chrono>
#include <ctime>

namespace frobsplit {

Json rat_json(const Rat& r) { return rat_str(r); }

Json fq_json(const FqElem& a) {
    Json coeffs = Json::array();
    for (std::uint64_t c : a.coeffs()) coeffs.push_back(c);
    return coeffs;
}

Json ctx_json(const FqContext& ctx) {
    Json out = Json::object();
    out["p"] = ctx.p();
    out["m"] = ctx.degree();
    out["modulus"] = ctx.modulus();
    return out;
}

std::string iso8601_utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Certificate::Certificate(std::string command, std::uint64_t p, Json parameters)
    : command_(std::move(command)), p_(p), parameters_(std::move(parameters)),
      timestamp_(iso8601_utc_now()) {}

void Certificate::add_node(CertNode node) {
    if (node.id.empty()) throw DomainError("certificate node needs an id");
    for (const CertNode& existing : nodes_)
        if (existing.id == node.id) throw DomainError("duplicate certificate node id: " + node.id);
    for (const std::string& dep : node.depends_on) {
        bool found = false;
        for (const CertNode& existing : nodes_)
            if (existing.id == dep) { found = true; break; }
        if (!found) throw DomainError("certificate node " + node.id + " depends on unknown node " + dep);
    }
    if (node.kind == CertNode::Kind::Cited && node.paper_ref.empty())
        throw DomainError("cited node " + node.id + " needs a reference");
    nodes_.push_back(std::move(node));
}

void Certificate::add_computed(const std::string& id, const std::string& statement, Json data,
                               std::vector<std::string> depends_on) {
    CertNode n;
    n.id = id;
    n.kind = CertNode::Kind::Computed;
    n.statement = statement;
    n.data = std::move(data);
    n.depends_on = std::move(depends_on);
    add_node(std::move(n));
}

void Certificate::add_cited(const std::string& id, const std::string& statement,
                            const std::string& paper_ref, std::vector<std::string> depends_on,
                            Json data) {
    CertNode n;
    n.id = id;
    n.kind = CertNode::Kind::Cited;
    n.statement = statement;
    n.paper_ref = paper_ref;
    n.data = std::move(data);
    n.depends_on = std::move(depends_on);
    add_node(std::move(n));
}

Json Certificate::to_json() const {
    Json doc = body_json();
    doc["meta"]["timestamp"] = timestamp_;
    return doc;
}

Json Certificate::body_json() const {
    Json doc = Json::object();
    doc["schema_version"] = kSchemaVersion;
    Json meta = Json::object();
    meta["tool"] = kToolName;
    meta["version"] = kToolVersion;
    meta["command"] = command_;
    meta["p"] = p_;
    meta["parameters"] = parameters_;
    doc["meta"] = meta;
    Json nodes = Json::array();
    for (const CertNode& n : nodes_) {
        Json node = Json::object();
        node["id"] = n.id;
        node["kind"] = n.kind == CertNode::Kind::Computed ? "COMPUTED" : "CITED";
        node["statement"] = n.statement;
        node["data"] = n.data;
        node["depends_on"] = n.depends_on;
        node["paper_ref"] = n.paper_ref;
        nodes.push_back(node);
    }
    doc["nodes"] = nodes;
    return doc;
}

Json certificate_body(const Json& doc) {
    Json body = doc;
    if (body.contains("meta") && body["meta"].is_object()) body["meta"].erase("timestamp");
    return body;
}

std::vector<std::string> validate_certificate_json(const Json& doc) {
    std::vector<std::string> problems;
    auto complain = [&problems](const std::string& msg) { problems.push_back(msg); };

    if (!doc.is_object()) return {"certificate must be a JSON object"};
    if (!doc.contains("schema_version") || !doc["schema_version"].is_string())
        complain("schema_version must be a string");
    if (!doc.contains("meta") || !doc["meta"].is_object()) {
        complain("meta must be an object");
    } else {
        const Json& meta = doc["meta"];
        for (const char* key : {"tool", "version", "command"})
            if (!meta.contains(key) || !meta[key].is_string())
                complain(std::string("meta.") + key + " must be a string");
        if (!meta.contains("p") || !meta["p"].is_number_unsigned())
            complain("meta.p must be an unsigned integer");
        if (!meta.contains("parameters") || !meta["parameters"].is_object())
            complain("meta.parameters must be an object");
    }
    if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
        complain("nodes must be an array");
        return problems;
    }
    std::vector<std::string> seen;
    for (const Json& node : doc["nodes"]) {
        if (!node.is_object()) {
            complain("every node must be an object");
            continue;
        }
        std::string id = node.value("id", "");
        if (id.empty() || !node.contains("id") || !node["id"].is_string())
            complain("node id must be a nonempty string");
        for (const std::string& other : seen)
            if (other == id) complain("duplicate node id: " + id);
        std::string kind = node.value("kind", "");
        if (kind != "COMPUTED" && kind != "CITED")
            complain("node " + id + ": kind must be COMPUTED or CITED");
        if (!node.contains("statement") || !node["statement"].is_string() ||
            node["statement"].get<std::string>().empty())
            complain("node " + id + ": statement must be a nonempty string");
        if (!node.contains("data") || !node["data"].is_object())
            complain("node " + id + ": data must be an object");
        if (!node.contains("paper_ref") || !node["paper_ref"].is_string())
            complain("node " + id + ": paper_ref must be a string");
        else if (kind == "CITED" && node["paper_ref"].get<std::string>().empty())
            complain("node " + id + ": cited nodes need a nonempty paper_ref");
        if (!node.contains("depends_on") || !node["depends_on"].is_array()) {
            complain("node " + id + ": depends_on must be an array");
        } else {
            for (const Json& dep : node["depends_on"]) {
                if (!dep.is_string()) {
                    complain("node " + id + ": depends_on entries must be strings");
                    continue;
                }
                bool found = false;
                for (const std::string& other : seen)
                    if (other == dep.get<std::string>()) { found = true; break; }
                if (!found)
                    complain("node " + id + ": dependency " + dep.get<std::string>() +
                             " does not name an earlier node");
            }
        }
        seen.push_back(id);
    }
    return problems;
}

} // namespace frobsplit
