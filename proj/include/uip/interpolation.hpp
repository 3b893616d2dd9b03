#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "uip/derivation.hpp"
#include "uip/formula.hpp"
#include "uip/sequent.hpp"

namespace uip {

/// Counters filled by the interpolant tables. Every recursive call is
/// checked against the table's well-order; a failure throws std::logic_error,
/// so `edges_audited` doubles as the number of successful checks.
struct TableStats {
  std::size_t calls = 0;
  std::size_t memo_hits = 0;
  std::size_t edges_audited = 0;
};

/// The K/KD table A_p(Gamma; Delta). Throws NotFirstOrder on quantifiers.
Formula forget_kkd(const std::string& p, const FormulaMultiset& gamma, const FormulaMultiset& delta,
                   TableStats* stats = nullptr);

/// The KT table A_p(Sigma | Gamma; Delta). The store must be outermost-boxed
/// (std::invalid_argument otherwise).
Formula forget_t(const std::string& p, const FormulaMultiset& store, const FormulaMultiset& gamma,
                 const FormulaMultiset& delta, TableStats* stats = nullptr);

/// A_p(Gamma; Delta) with the table for `logic` (empty store for KT).
Formula forget_sequent(Logic logic, const std::string& p, const Sequent& s, TableStats* stats = nullptr);

/// A_p(B) = A_p(empty; B).
Formula forget(Logic logic, const std::string& p, const Formula& b, TableStats* stats = nullptr);

/// E_p(B) = ~A_p(empty; ~B).
Formula exists_forget(Logic logic, const std::string& p, const Formula& b, TableStats* stats = nullptr);

/// E_{p1}(E_{p2}(... E_{pm}(A))). The forget list must be duplicate-free.
Formula post_interpolant(Logic logic, const Formula& a, const std::vector<std::string>& forget,
                         TableStats* stats = nullptr);

/// A_{r1}(A_{r2}(... A_{rm}(B))).
Formula pre_interpolant(Logic logic, const Formula& b, const std::vector<std::string>& forget,
                        TableStats* stats = nullptr);

enum class InterpolantSide { Pre, Post };

struct InterpolationProblem {
  Logic logic = Logic::K;
  std::vector<std::string> forget;
  Formula subject;
  InterpolantSide side = InterpolantSide::Post;
};

Formula interpolant(const InterpolationProblem& problem, TableStats* stats = nullptr);

struct InterpolantReport {
  Formula interpolant;
  bool vocab_ok = false;
  bool implication_ok = false;
  /// Largest weight w such that every candidate of weight <= w was checked.
  std::size_t extremality_checked_up_to = 0;
  bool extremality_ok = false;
  std::size_t candidates = 0;
  /// Partner formulas that passed the subject test and were then checked
  /// against the interpolant.
  std::size_t partners = 0;
  std::optional<Formula> counterexample;

  [[nodiscard]] bool all_ok() const noexcept { return vocab_ok && implication_ok && extremality_ok; }
};

struct VerifyOptions {
  /// Stop enumerating before a weight level that would exceed this many
  /// candidates in total.
  std::size_t candidate_budget = 250000;
  /// Use the OpenMP scan (identical results, see parallel.hpp).
  bool parallel = true;
};

/// Checks the interpolant's vocabulary, its implication with the subject,
/// and extremality against every candidate partner formula over the allowed
/// vocabulary up to `weight_bound`. Throws std::invalid_argument when
/// weight_bound is 0 or the forget list has duplicates.
InterpolantReport verify_uniform(const InterpolationProblem& problem, std::size_t weight_bound,
                                 const VerifyOptions& options = {});

/// All formulas over `vars`, false, ~, &, |, -> and [i] for the given
/// agents with weight <= bound, one per canonical class (& and | operands
/// sorted), ordered by weight and then by generation order. Returns fewer
/// levels when the budget would be exceeded; `complete_up_to` receives the
/// last full weight level.
std::vector<Formula> enumerate_candidates(const std::vector<std::string>& vars,
                                          const std::vector<AgentId>& agents, std::size_t bound,
                                          std::size_t budget, std::size_t* complete_up_to = nullptr);

}  // namespace uip
