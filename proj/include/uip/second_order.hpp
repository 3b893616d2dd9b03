#pragma once

#include <string>
#include <vector>

#include "uip/derivation.hpp"
#include "uip/formula.hpp"

namespace uip {

/// One quantifier elimination step: `before` is the quantified subformula
/// with its body already translated, `after` its replacement.
struct TraceStep {
  std::string variable;
  Formula before;
  Formula after;
};

using TranslationTrace = std::vector<TraceStep>;

struct Elimination {
  Formula result;
  TranslationTrace trace;
};

/// The (.)* translation: homomorphic on connectives and boxes,
/// (forall p. B)* = A_p(B*) with the logic's table, innermost first.
/// Throws CaptureError when a quantifier rebinds a variable that is already
/// bound by an enclosing quantifier.
Elimination eliminate_quantifiers(Logic logic, const Formula& f);

/// Rebuilds the output of eliminate_quantifiers from `input` by rewriting
/// each traced subformula in order (bottom-up). Throws std::invalid_argument
/// if a step does not apply.
Formula replay(const Formula& input, const TranslationTrace& trace);

}  // namespace uip
