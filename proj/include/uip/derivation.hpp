#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uip/sequent.hpp"

namespace uip {

enum class Logic { K, KD, KT };

std::string_view to_string(Logic logic);
/// Accepts "k", "kd", "kt" in any case.
std::optional<Logic> parse_logic(std::string_view text);

enum class Rule {
  Init,
  InitBot,
  RAnd,
  LAnd,
  ROr,
  LOr,
  RImp,
  LImp,
  RNeg,
  LNeg,
  BoxK,
  BoxD,
  BoxT,
  BoxKPlus,
  BoxTPlus,
};

std::string_view to_string(Rule rule);
std::optional<Rule> parse_rule(std::string_view text);

enum class Side { Store, Antecedent, Succedent };

/// Position of a principal formula: index into the side's expanded() list.
struct Principal {
  Side side;
  std::size_t index;

  friend bool operator==(const Principal&, const Principal&) = default;
};

/// Rule-labelled proof tree. `store` is present exactly on T-sequent nodes.
struct Derivation {
  Sequent sequent;
  std::optional<FormulaMultiset> store;
  Rule rule = Rule::Init;
  std::vector<Principal> principal;
  std::vector<Derivation> premises;

  [[nodiscard]] bool is_tsequent() const noexcept { return store.has_value(); }
  [[nodiscard]] TSequent tsequent() const;
  [[nodiscard]] std::size_t height() const;
  [[nodiscard]] std::size_t node_count() const;
};

struct CheckResult {
  bool ok = true;
  std::vector<std::string> violations;

  explicit operator bool() const noexcept { return ok; }
};

/// Validates every node against its rule schema for the given logic,
/// including the context side conditions of the modal rules.
CheckResult check_derivation(Logic logic, const Derivation& d);

/// Counts parent-to-child edges that fail to decrease the applicable
/// well-order (weight for plain sequents, <box_count, weight> for T-sequents).
struct MeasureAudit {
  std::size_t edges = 0;
  std::size_t violations = 0;
};
MeasureAudit audit_measure(const Derivation& d);

}  // namespace uip
