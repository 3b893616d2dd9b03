#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "uip/formula.hpp"

namespace uip {

/// Counted multiset of formulas. Entries are kept in the structural order
/// of uip::compare, so iteration is deterministic.
class FormulaMultiset {
 public:
  using Entry = std::pair<Formula, std::size_t>;

  FormulaMultiset() = default;
  FormulaMultiset(std::initializer_list<Formula> items);
  explicit FormulaMultiset(const std::vector<Formula>& items);

  void add(const Formula& f, std::size_t times = 1);
  /// Removes one occurrence; returns false if f is absent.
  bool remove_one(const Formula& f);
  /// Removes every occurrence of f; returns how many were removed.
  std::size_t remove_all(const Formula& f);

  [[nodiscard]] std::size_t count(const Formula& f) const;
  [[nodiscard]] bool contains(const Formula& f) const { return count(f) > 0; }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  /// Total number of occurrences.
  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
  /// Occurrences, duplicates repeated, in order.
  [[nodiscard]] std::vector<Formula> expanded() const;
  /// Formula at a position of expanded().
  [[nodiscard]] const Formula& at(std::size_t position) const;
  /// First position of f in expanded(), or size() if absent.
  [[nodiscard]] std::size_t position_of(const Formula& f) const;

  /// Sum of weights of all occurrences.
  [[nodiscard]] std::size_t weight() const;
  [[nodiscard]] std::size_t hash() const noexcept;

  FormulaMultiset& operator+=(const FormulaMultiset& other);
  friend FormulaMultiset operator+(FormulaMultiset a, const FormulaMultiset& b) {
    a += b;
    return a;
  }

  friend bool operator==(const FormulaMultiset&, const FormulaMultiset&) = default;
  friend std::strong_ordering operator<=>(const FormulaMultiset& a, const FormulaMultiset& b);

  [[nodiscard]] auto begin() const noexcept { return entries_.begin(); }
  [[nodiscard]] auto end() const noexcept { return entries_.end(); }

 private:
  std::vector<Entry> entries_;
  std::size_t size_ = 0;
};

/// Gamma => Delta.
struct Sequent {
  FormulaMultiset antecedent;
  FormulaMultiset succedent;

  friend bool operator==(const Sequent&, const Sequent&) = default;
  friend auto operator<=>(const Sequent&, const Sequent&) = default;
};

/// Store | Gamma => Delta, the store holding outermost-boxed formulas.
struct TSequent {
  FormulaMultiset store;
  FormulaMultiset antecedent;
  FormulaMultiset succedent;

  TSequent() = default;
  TSequent(FormulaMultiset s, FormulaMultiset a, FormulaMultiset d);
  explicit TSequent(const Sequent& s) : antecedent(s.antecedent), succedent(s.succedent) {}

  [[nodiscard]] Sequent plain() const { return {antecedent, succedent}; }

  friend bool operator==(const TSequent&, const TSequent&) = default;
  friend auto operator<=>(const TSequent&, const TSequent&) = default;
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const noexcept;
  std::size_t operator()(const TSequent& s) const noexcept;
};

/// Lexicographic well-order <box_count, weight> on T-sequents.
struct Measure {
  std::size_t box_component = 0;
  std::size_t weight_component = 0;

  friend auto operator<=>(const Measure&, const Measure&) = default;
};

/// Bodies of the agent's boxes, multiplicities kept.
FormulaMultiset flats(const FormulaMultiset& ms, AgentId agent);

/// Every member on both sides is a variable, bottom or outermost-boxed.
bool is_critical(const Sequent& s);

bool is_first_order(const FormulaMultiset& ms);
bool is_first_order(const Sequent& s);

/// wt(Gamma, Delta).
std::size_t sequent_weight(const Sequent& s);
/// <b(store, Gamma, Delta), wt(Gamma, Delta)>.
Measure measure(const TSequent& s);

std::size_t box_count(const FormulaMultiset& ms);

}  // namespace uip
