#ifndef PSO_JSON_IO_HPP
#define PSO_JSON_IO_HPP

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "pso/hypermatrix.hpp"

namespace pso {

// Hypermatrix document format:
//   { "m": int, "l": int,
//     "entries": { "<i1,i2,...,il>": [p_1, ..., p_m], ... } }
// Keys are comma-separated ascending 1-based indices; every canonical
// multiset must be covered. Permuted spellings of the same tuple are
// accepted and merged under the symmetry tolerance.
StochasticHypermatrix hypermatrix_from_json(const nlohmann::json& doc);
StochasticHypermatrix hypermatrix_from_stream(std::istream& in);

nlohmann::json hypermatrix_to_json(const StochasticHypermatrix& h);

// Canonical key for a multiset: "1,2,3".
std::string multiset_key(const IndexMultiset& ms);

// FNV-1a over (m, l, row bit patterns); identifies operator content in
// reports.
std::string content_digest(const StochasticHypermatrix& h);

}  // namespace pso

#endif
