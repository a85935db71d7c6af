#pragma once

// JSON forms of the exact data types. Rationals are "p/q" strings (q = 1 for
// integers on output; a bare "p" is accepted on input),
// big integers decimal strings; nothing is ever written as a JSON number
// except counts and indices. Schemas are described in docs/schemas.md.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "natspec/closure.hpp"
#include "natspec/dpoly.hpp"
#include "natspec/graph.hpp"
#include "natspec/idempotent.hpp"
#include "natspec/matrix.hpp"
#include "natspec/specpipe.hpp"
#include "natspec/spectrum.hpp"

namespace natspec {

using Json = nlohmann::ordered_json;

// "natspec <version>"
std::string version_string();

// Throws ParseError on malformed input in every *_from_json.
std::string rational_to_string(const Rational& q);
Rational rational_from_string(std::string_view s);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const Json& j);

Json subspace_to_json(const SubspaceBasis& s);
SubspaceBasis subspace_from_json(const Json& j);

Json merge_plan_to_json(const MergePlan& p);
MergePlan merge_plan_from_json(const Json& j);

// A node table shared by many polynomials: {"nodes": [...], "roots": [...]}.
// Each node is {"op": ..., "args": [node indices], "coeff": "p/q"}; args
// always point to earlier nodes.
Json dpoly_dag_to_json(const std::vector<DPoly>& roots);
std::vector<DPoly> dpoly_dag_from_json(const Json& j);

// Entry polynomials go into one shared node table; values are per-member
// lists of 0/1 row strings.
Json idempotent_basis_to_json(const IdempotentBasis& b);
IdempotentBasis idempotent_basis_from_json(const Json& j);

// SHA-256 (hex) of the sorted graph6 strings joined by newlines.
std::string family_fingerprint(const std::vector<Graph>& family);

struct DSBundle {
  std::size_t n = 0;
  std::vector<std::string> family;  // graph6, sorted
  std::string fingerprint;
  DSPipeline pipeline;
};

DSBundle make_bundle(const std::vector<Graph>& family, DSPipeline pipeline);
// p as grammar text, D and the basis through node tables.
Json bundle_to_json(const DSBundle& b);
DSBundle bundle_from_json(const Json& j);

}  // namespace natspec
