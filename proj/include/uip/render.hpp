#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "uip/derivation.hpp"
#include "uip/formula.hpp"
#include "uip/kripke.hpp"
#include "uip/sequent.hpp"

namespace uip {

using Json = nlohmann::ordered_json;

enum class Format { Text, Json, Latex };

// Text uses the parser's grammar with minimal parentheses, so
// parse_formula(render_text(f), L2) == f.
std::string render_text(const Formula& f);
std::string render_text(const FormulaMultiset& ms);
std::string render_text(const Sequent& s);
/// `Σ || Γ => Δ`. Display only; the parser does not read stores.
std::string render_text(const TSequent& s);
/// One node per line, premises indented below their conclusion.
std::string render_text(const Derivation& d);
std::string render_text(const KripkeModel& m);

std::string render_latex(const Formula& f);
std::string render_latex(const Sequent& s);
/// bussproofs `prooftree` environment.
std::string render_latex(const Derivation& d);
std::string render_latex(const KripkeModel& m);

/// Variables become bare strings, everything else {"op": ...}.
Json to_json(const Formula& f);
/// Inverse of to_json(Formula). Throws std::invalid_argument.
Formula formula_from_json(const Json& j);
Json to_json(const Sequent& s);
/// Node object without the schema wrapper.
Json to_json(const Derivation& d);
Json to_json(const KripkeModel& m);

/// {"schema":"derivation/1","logic":...,"derivation":node}
Json derivation_document(Logic logic, const Derivation& d);
/// {"schema":"model/1",...}
Json model_document(Logic logic, const KripkeModel& m);

/// Structural schema checks; empty result means valid.
std::vector<std::string> validate_derivation_document(const Json& j);
std::vector<std::string> validate_model_document(const Json& j);

std::string render(const Formula& f, Format format);
std::string render(Logic logic, const Derivation& d, Format format);
std::string render(Logic logic, const KripkeModel& m, Format format);

}  // namespace uip
