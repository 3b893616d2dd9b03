#pragma once

#include <cstddef>
#include <optional>

#include "uip/derivation.hpp"
#include "uip/sequent.hpp"

namespace uip {

struct SearchStats {
  std::size_t nodes_expanded = 0;
  std::size_t max_depth = 0;
  /// Parent-to-child edges whose measure was checked during the search.
  std::size_t edges_audited = 0;
  /// Edges where the premise was not strictly below its conclusion.
  std::size_t measure_violations = 0;
};

struct SearchOptions {
  bool build_derivation = true;
  bool audit_measure = true;
};

/// Either a derivation or a certified "not derivable" verdict.
class ProofResult {
 public:
  static ProofResult derivable(Derivation d, SearchStats stats);
  static ProofResult not_derivable(SearchStats stats);
  /// Verdict only, for searches run without derivation construction.
  static ProofResult derivable_without_tree(SearchStats stats);

  [[nodiscard]] bool is_derivable() const noexcept { return derivable_; }
  explicit operator bool() const noexcept { return derivable_; }
  /// Present when derivable and the search built a tree.
  [[nodiscard]] const std::optional<Derivation>& derivation() const noexcept { return derivation_; }
  [[nodiscard]] const SearchStats& stats() const noexcept { return stats_; }

 private:
  bool derivable_ = false;
  std::optional<Derivation> derivation_;
  SearchStats stats_;
};

/// Backward proof search. K and KD search the plain calculus directly; KT is
/// decided by the T-sequent calculus on the empty store. Throws
/// NotFirstOrder on quantified input.
ProofResult prove(Logic logic, const Sequent& s, const SearchOptions& options = {});

/// Search in the T-sequent calculus. The store must hold only outermost-boxed
/// formulas (std::invalid_argument otherwise).
ProofResult prove_tplus(const TSequent& s, const SearchOptions& options = {});

/// Verdict-only shorthand.
bool derivable(Logic logic, const Sequent& s);

enum class BoundedVerdict { DerivableWithin, Unknown };

/// Exhaustive search in the looping KT calculus (with the reflexivity rule
/// that keeps its principal box), bounded by derivation height. One-sided:
/// Unknown does not mean underivable.
BoundedVerdict naive_kt_prove(const Sequent& s, std::size_t depth_bound);

}  // namespace uip
