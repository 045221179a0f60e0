#ifndef PSO_REPORT_HPP
#define PSO_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pso/analysis.hpp"

namespace pso {

// Machine-checkable analysis result. Serializes to JSON losslessly; every
// negative verdict carries a certificate that can be replayed against the
// operator. All indices are 1-based in serialized form.
struct AnalysisReport {
    std::string command;
    int m = 0;
    int l = 0;
    std::string digest;

    std::optional<bool> is_op;
    std::optional<bool> surjective;
    std::optional<std::string> surjectivity_reason;
    std::optional<std::vector<int>> vertex_permutation;        // 1-based images
    std::optional<std::vector<std::vector<int>>> absorbing;    // 1-based sets
    nlohmann::json certificates = nlohmann::json::array();
    std::optional<nlohmann::json> oracle;
    std::optional<nlohmann::json> payload;  // command-specific data
    std::optional<uint64_t> seed;
    std::optional<nlohmann::json> timings;
};

nlohmann::json report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::json& j);
bool operator==(const AnalysisReport& a, const AnalysisReport& b);

// Aligned human-readable rendering.
std::string render_text(const AnalysisReport& r);

// 1-based JSON forms of library values.
nlohmann::json json_indices(const SubsetMask& mask);
nlohmann::json json_indices(const std::vector<int>& zero_based);
nlohmann::json json_certificate(const StructuralViolation& v);
nlohmann::json json_certificate(const SupportOverlap& o);
const char* reason_name(SurjectivityReason reason);

}  // namespace pso

#endif
