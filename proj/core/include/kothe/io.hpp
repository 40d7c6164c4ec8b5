#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "kothe/certificates.hpp"
#include "kothe/operators.hpp"
#include "kothe/oracle.hpp"

namespace kothe::io {

using json = nlohmann::json;

// Doubles round-trip bit-exactly (shortest representation); infinities are
// encoded as the string "inf" since JSON has no literal for them.
json encode_double(double v);
double decode_double(const json& j);

json to_json(const EllNorm& ell);
EllNorm ell_from_json(const json& j);

/// Space definition file:
/// { "label", "n_max", "k_max",
///   "source": {"kind": "explicit", "grid": [[...]]}
///          |  {"kind": "power_series", "type": "finite"|"infinite",
///              "alpha": {"rule": "linear"|"log"|"list", ...}} }
/// An optional "ell" field carries the Banach norm (default l1).
json to_json(const KotheMatrix& a);
KotheMatrix matrix_from_json(const json& j);
json to_json(const Space& s);
Space space_from_json(const json& j);

/// Operator definition file:
/// { "kind": "grid", "entries": [[...]] }
/// or { "kind": "rank_one", "u": [...], "x": [...] }
/// plus optional "domain"/"codomain" space-file labels.
using AnyOperator = std::variant<MatrixOperator, RankOneOperator>;
json to_json(const MatrixOperator& t);
json to_json(const RankOneOperator& t);
AnyOperator operator_from_json(const json& j);

json to_json(const SearchBudget& b);
SearchBudget budget_from_json(const json& j);

json to_json(const GrowthThresholds& t);
GrowthThresholds thresholds_from_json(const json& j);

json to_json(const GrowthClass& g);
GrowthClass growth_from_json(const json& j);

json to_json(const Witness& w);
Witness witness_from_json(const json& j);

json to_json(const Counterexample& c);
Counterexample counterexample_from_json(const json& j);

json to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);

json to_json(const NuclearityReport& r);
NuclearityReport nuclearity_from_json(const json& j);

json load_file(const std::string& path);
void save_file(const std::string& path, const json& j);

}  // namespace kothe::io
