#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace uip {

/// Agent index for the multi-agent box operators. Agents are numbered from 1.
class AgentId {
 public:
  constexpr AgentId() = default;
  explicit AgentId(int id);

  [[nodiscard]] constexpr int value() const noexcept { return id_; }

  friend constexpr auto operator<=>(AgentId, AgentId) = default;

 private:
  int id_ = 1;
};

enum class Op : std::uint8_t { Var, Bot, And, Or, Imp, Not, Box, Forall };

/// Raised when an operation that only makes sense for quantifier-free
/// formulas meets a propositional quantifier.
class NotFirstOrder : public std::invalid_argument {
 public:
  explicit NotFirstOrder(const std::string& what)
      : std::invalid_argument("not-first-order: " + what) {}
};

/// Raised by substitution when the substituted formula would be captured
/// by a quantifier.
class CaptureError : public std::invalid_argument {
 public:
  explicit CaptureError(const std::string& what)
      : std::invalid_argument("variable capture: " + what) {}
};

/// Immutable formula tree with shared subterms.
///
/// Diamond, top and the existential quantifier are notations only: the
/// builders below expand them into the primitive connectives, so a stored
/// tree never contains them. Weight, modal depth and a structural hash are
/// cached per node.
class Formula {
 public:
  Formula();  // bottom

  static Formula var(std::string name);
  static Formula bot();
  static Formula top();  // ~false
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  static Formula iff(const Formula& l, const Formula& r);
  static Formula neg(Formula sub);
  static Formula box(AgentId agent, Formula sub);
  static Formula diamond(AgentId agent, Formula sub);  // ~[i]~sub
  static Formula forall(std::string name, Formula sub);
  static Formula exists(std::string name, Formula sub);  // ~forall ~sub

  /// Left-nested disjunction; the empty disjunction is bottom.
  static Formula disj_all(const std::vector<Formula>& parts);
  /// Left-nested conjunction; the empty conjunction is top.
  static Formula conj_all(const std::vector<Formula>& parts);

  [[nodiscard]] Op op() const noexcept;
  [[nodiscard]] bool is(Op o) const noexcept { return op() == o; }
  [[nodiscard]] bool is_atomic() const noexcept { return is(Op::Var) || is(Op::Bot); }
  /// Var, Bot or an outermost box.
  [[nodiscard]] bool is_critical_member() const noexcept {
    return is_atomic() || is(Op::Box);
  }
  [[nodiscard]] bool is_boxed(AgentId agent) const noexcept {
    return is(Op::Box) && this->agent() == agent;
  }

  /// Variable name (Var) or bound variable (Forall).
  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] AgentId agent() const;
  /// Left operand of a binary connective.
  [[nodiscard]] const Formula& lhs() const;
  /// Right operand of a binary connective.
  [[nodiscard]] const Formula& rhs() const;
  /// Operand of Not, Box and Forall.
  [[nodiscard]] const Formula& sub() const;

  /// Weight including quantifier nodes; see uip::weight for the checked version.
  [[nodiscard]] std::size_t raw_weight() const noexcept;
  [[nodiscard]] std::size_t modal_depth() const noexcept;
  [[nodiscard]] bool has_quantifier() const noexcept;
  [[nodiscard]] std::size_t hash() const noexcept;

  [[nodiscard]] bool same_node(const Formula& other) const noexcept {
    return node_ == other.node_;
  }

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, AgentId agent, std::string name, const Formula* a,
                      const Formula* b);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

/// Structural total order: constructor tag, then agent, then operands,
/// then variable name.
std::strong_ordering compare(const Formula& a, const Formula& b) noexcept;

/// wt(p) = wt(false) = 1, unary +1, binary +1. Throws NotFirstOrder on quantifiers.
std::size_t weight(const Formula& f);

/// Free propositional variables.
std::set<std::string> free_vars(const Formula& f);
void collect_free_vars(const Formula& f, std::set<std::string>& out);

/// All variables, free or bound.
std::set<std::string> all_vars(const Formula& f);

/// Agents that index some box in f.
std::set<AgentId> agents_of(const Formula& f);

/// f[p/b]. Quantified occurrences of p are left alone; throws CaptureError
/// if a free variable of b would be bound.
Formula substitute(const Formula& f, const std::string& p, const Formula& b);

/// Distinct boxed subformulas of f, in structural order.
std::vector<Formula> boxed_subformulas(const Formula& f);
void collect_boxed_subformulas(const Formula& f, std::set<Formula>& out);

/// Number of distinct boxed subformulas across all members of the range.
std::size_t box_count(const std::vector<Formula>& formulas);

/// Distinct subformulas, children before parents.
std::vector<Formula> subformulas(const Formula& f);

}  // namespace uip
