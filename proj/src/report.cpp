#include "pso/report.hpp"

#include <iomanip>
#include <sstream>

namespace pso {

nlohmann::json json_indices(const SubsetMask& mask) {
    nlohmann::json out = nlohmann::json::array();
    for (int i : mask.members()) out.push_back(i + 1);
    return out;
}

nlohmann::json json_indices(const std::vector<int>& zero_based) {
    nlohmann::json out = nlohmann::json::array();
    for (int i : zero_based) out.push_back(i + 1);
    return out;
}

nlohmann::json json_certificate(const StructuralViolation& v) {
    nlohmann::json out;
    out["kind"] = "structural_violation";
    out["multiset"] = json_indices(v.multiset.indices());
    out["coordinate"] = v.coordinate + 1;
    return out;
}

nlohmann::json json_certificate(const SupportOverlap& o) {
    nlohmann::json out;
    out["kind"] = "support_overlap";
    out["set_a"] = json_indices(o.set_a);
    out["set_b"] = json_indices(o.set_b);
    out["coordinate"] = o.coordinate + 1;
    return out;
}

const char* reason_name(SurjectivityReason reason) {
    switch (reason) {
        case SurjectivityReason::kNoVertexPermutation: return "NoVertexPermutation";
        case SurjectivityReason::kStructuralPass: return "StructuralPass";
        case SurjectivityReason::kStructuralFail: return "StructuralFail";
    }
    return "unknown";
}

nlohmann::json report_to_json(const AnalysisReport& r) {
    nlohmann::json j;
    j["command"] = r.command;
    j["operator"] = {{"m", r.m}, {"l", r.l}, {"digest", r.digest}};
    nlohmann::json verdicts = nlohmann::json::object();
    if (r.is_op) verdicts["is_op"] = *r.is_op;
    if (r.surjective) verdicts["surjective"] = *r.surjective;
    if (r.surjectivity_reason) verdicts["reason"] = *r.surjectivity_reason;
    if (r.vertex_permutation) verdicts["vertex_permutation"] = *r.vertex_permutation;
    if (r.absorbing) verdicts["absorbing_sets"] = *r.absorbing;
    j["verdicts"] = std::move(verdicts);
    j["certificates"] = r.certificates;
    if (r.oracle) j["oracle"] = *r.oracle;
    if (r.payload) j["payload"] = *r.payload;
    if (r.seed) j["seed"] = *r.seed;
    if (r.timings) j["timings"] = *r.timings;
    return j;
}

AnalysisReport report_from_json(const nlohmann::json& j) {
    AnalysisReport r;
    r.command = j.at("command").get<std::string>();
    r.m = j.at("operator").at("m").get<int>();
    r.l = j.at("operator").at("l").get<int>();
    r.digest = j.at("operator").at("digest").get<std::string>();
    const nlohmann::json& v = j.at("verdicts");
    if (v.contains("is_op")) r.is_op = v["is_op"].get<bool>();
    if (v.contains("surjective")) r.surjective = v["surjective"].get<bool>();
    if (v.contains("reason")) r.surjectivity_reason = v["reason"].get<std::string>();
    if (v.contains("vertex_permutation")) r.vertex_permutation = v["vertex_permutation"].get<std::vector<int>>();
    if (v.contains("absorbing_sets")) r.absorbing = v["absorbing_sets"].get<std::vector<std::vector<int>>>();
    r.certificates = j.at("certificates");
    if (j.contains("oracle")) r.oracle = j["oracle"];
    if (j.contains("payload")) r.payload = j["payload"];
    if (j.contains("seed")) r.seed = j["seed"].get<uint64_t>();
    if (j.contains("timings")) r.timings = j["timings"];
    return r;
}

bool operator==(const AnalysisReport& a, const AnalysisReport& b) {
    return report_to_json(a) == report_to_json(b);
}

namespace {

void line(std::ostringstream& out, const std::string& key, const std::string& value) {
    out << std::left << std::setw(22) << key << value << '\n';
}

std::string list_text(const nlohmann::json& arr) {
    std::ostringstream out;
    out << '{';
    for (size_t i = 0; i < arr.size(); ++i) {
        if (i > 0) out << ',';
        out << arr[i].get<int>();
    }
    out << '}';
    return out.str();
}

std::string certificate_text(const nlohmann::json& c) {
    const std::string kind = c.value("kind", "");
    std::ostringstream out;
    if (kind == "structural_violation") {
        out << "row " << list_text(c["multiset"]) << " puts mass on coordinate "
            << c["coordinate"].get<int>();
    } else if (kind == "support_overlap") {
        out << "images of " << list_text(c["set_a"]) << " and " << list_text(c["set_b"])
            << " share coordinate " << c["coordinate"].get<int>();
    } else if (kind == "non_vertex_image") {
        out << "vertex " << c["vertex"].get<int>() << " has a non-vertex or duplicated image";
    } else {
        out << c.dump();
    }
    return out.str();
}

}  // namespace

std::string render_text(const AnalysisReport& r) {
    std::ostringstream out;
    line(out, "command", r.command);
    {
        std::ostringstream op;
        op << "m=" << r.m << " l=" << r.l << " digest=" << r.digest;
        line(out, "operator", op.str());
    }
    if (r.seed) line(out, "seed", std::to_string(*r.seed));
    if (r.is_op) line(out, "orthogonal-preserving", *r.is_op ? "true" : "false");
    if (r.surjective) line(out, "surjective", *r.surjective ? "true" : "false");
    if (r.surjectivity_reason) line(out, "reason", *r.surjectivity_reason);
    if (r.vertex_permutation) {
        std::ostringstream p;
        for (size_t i = 0; i < r.vertex_permutation->size(); ++i) {
            if (i > 0) p << ' ';
            p << i + 1 << "->" << (*r.vertex_permutation)[i];
        }
        line(out, "vertex permutation", p.str());
    }
    if (r.absorbing) {
        std::ostringstream a;
        for (size_t i = 0; i < r.absorbing->size(); ++i) {
            if (i > 0) a << ' ';
            a << '{';
            for (size_t t = 0; t < (*r.absorbing)[i].size(); ++t) {
                if (t > 0) a << ',';
                a << (*r.absorbing)[i][t];
            }
            a << '}';
        }
        line(out, "absorbing sets", a.str());
    }
    for (const auto& c : r.certificates) {
        line(out, "certificate", certificate_text(c));
    }
    if (r.oracle) {
        for (const auto& [key, value] : r.oracle->items()) {
            line(out, "oracle." + key, value.dump());
        }
    }
    if (r.payload) {
        for (const auto& [key, value] : r.payload->items()) {
            line(out, key, value.dump());
        }
    }
    if (r.timings) {
        for (const auto& [key, value] : r.timings->items()) {
            line(out, "time." + key, value.dump() + " ms");
        }
    }
    return out.str();
}

}  // namespace pso
