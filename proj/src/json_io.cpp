#include "pso/json_io.hpp"

#include <cctype>
#include <cstring>
#include <istream>

namespace pso {

namespace {

std::vector<int> parse_key(const std::string& key, int l) {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(l));
    size_t pos = 0;
    while (pos <= key.size()) {
        const size_t comma = key.find(',', pos);
        const std::string token = key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (token.empty()) throw ValidationError("malformed entry key '" + key + "'");
        for (char c : token) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw ValidationError("malformed entry key '" + key + "'");
            }
        }
        const long v = std::strtol(token.c_str(), nullptr, 10);
        if (v < 1) throw ValidationError("entry key '" + key + "' uses index < 1 (indices are 1-based)");
        out.push_back(static_cast<int>(v - 1));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (static_cast<int>(out.size()) != l) {
        throw ValidationError("entry key '" + key + "' has " + std::to_string(out.size()) +
                              " indices, expected l = " + std::to_string(l));
    }
    return out;
}

int require_int(const nlohmann::json& doc, const char* field) {
    if (!doc.contains(field) || !doc[field].is_number_integer()) {
        throw ValidationError(std::string("hypermatrix document needs integer field \"") + field + "\"");
    }
    return doc[field].get<int>();
}

}  // namespace

StochasticHypermatrix hypermatrix_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ValidationError("hypermatrix document must be a JSON object");
    const int m = require_int(doc, "m");
    const int l = require_int(doc, "l");
    if (m < 1 || m > 32) throw ValidationError("m must be in [1, 32]");
    if (l < 1 || l > 12) throw ValidationError("l must be in [1, 12]");
    if (!doc.contains("entries") || !doc["entries"].is_object()) {
        throw ValidationError("hypermatrix document needs object field \"entries\"");
    }
    std::vector<std::pair<std::vector<int>, std::vector<double>>> entries;
    entries.reserve(doc["entries"].size());
    for (const auto& [key, value] : doc["entries"].items()) {
        std::vector<int> tuple = parse_key(key, l);
        if (!value.is_array()) throw BadRowError("row '" + key + "' must be an array of numbers");
        std::vector<double> row;
        row.reserve(value.size());
        for (const auto& v : value) {
            if (!v.is_number()) throw BadRowError("row '" + key + "' must contain only numbers");
            row.push_back(v.get<double>());
        }
        entries.emplace_back(std::move(tuple), std::move(row));
    }
    return StochasticHypermatrix::from_entries(m, l, entries);
}

StochasticHypermatrix hypermatrix_from_stream(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("JSON parse error: ") + e.what());
    }
    return hypermatrix_from_json(doc);
}

std::string multiset_key(const IndexMultiset& ms) {
    return to_one_based_string(ms.indices());
}

nlohmann::json hypermatrix_to_json(const StochasticHypermatrix& h) {
    nlohmann::json entries = nlohmann::json::object();
    for (int r = 0; r < h.row_count(); ++r) {
        entries[multiset_key(h.indexer().at(r))] = h.row(r).coords();
    }
    nlohmann::json doc;
    doc["m"] = h.dim();
    doc["l"] = h.order();
    doc["entries"] = std::move(entries);
    return doc;
}

std::string content_digest(const StochasticHypermatrix& h) {
    uint64_t hash = 1469598103934665603ull;
    const auto absorb = [&hash](const void* data, size_t n) {
        const unsigned char* bytes = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < n; ++i) {
            hash ^= bytes[i];
            hash *= 1099511628211ull;
        }
    };
    const uint32_t m = static_cast<uint32_t>(h.dim());
    const uint32_t l = static_cast<uint32_t>(h.order());
    absorb(&m, sizeof m);
    absorb(&l, sizeof l);
    for (int r = 0; r < h.row_count(); ++r) {
        for (double v : h.row(r).coords()) {
            uint64_t bits;
            std::memcpy(&bits, &v, sizeof bits);
            absorb(&bits, sizeof bits);
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf);
}

}  // namespace pso
