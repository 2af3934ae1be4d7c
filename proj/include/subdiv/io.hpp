#ifndef SUBDIV_IO_HPP
#define SUBDIV_IO_HPP

#include <filesystem>
#include <string>

#include "json.hpp"

#include "subdiv/complex.hpp"
#include "subdiv/decomposition.hpp"
#include "subdiv/invariants.hpp"
#include "subdiv/subdivision.hpp"

// JSON reading and writing.  Exact rationals are "p/q" strings throughout.
// Malformed input raises Error(Parse).
namespace subdiv::io {

using json = nlohmann::ordered_json;

json to_json(const Rational& q);
/// Accepts "p/q", "p" or a JSON integer.
Rational rational_from_json(const json& j);

json to_json(const RationalMatrix& m);   // array of rows
RationalMatrix matrix_from_json(const json& j);
json to_json(const std::vector<Rational>& v);
json to_json(const Polynomial& p);       // ascending coefficients

/// {"maximal_simplices": [[v, ...], ...]}
json to_json(const SimplicialComplex& K);
SimplicialComplex complex_from_json(const json& j);

/// {"coarse": <complex>, "fine": <complex>, "vertex_carrier": {"v": [...]}}
json to_json(const SubdivisionMap& map);
SubdivisionMap subdivision_from_json(const json& j);

json to_json(const ValidationReport& report);
json to_json(const std::vector<Party>& parties);
json to_json(const ChainBasis& basis);
json to_json(const GramMetric& g);
json to_json(const LowerBound& bound);
json to_json(const RealRoot& root);
/// Both the raw-row value and, when present, the definitional one.
json to_json(const InvariantReport& report, bool include_definitional = true);
json to_json(const stellar::ClosedForm& cf);

/// Throws Error(Parse) when the file cannot be read or is not valid JSON.
json read_file(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
std::string dump(const json& j);

}   // namespace subdiv::io

#endif
