#include "uip/derivation.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace uip {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 15> kRuleNames{{
    {Rule::Init, "Init"},
    {Rule::InitBot, "InitBot"},
    {Rule::RAnd, "RAnd"},
    {Rule::LAnd, "LAnd"},
    {Rule::ROr, "ROr"},
    {Rule::LOr, "LOr"},
    {Rule::RImp, "RImp"},
    {Rule::LImp, "LImp"},
    {Rule::RNeg, "RNeg"},
    {Rule::LNeg, "LNeg"},
    {Rule::BoxK, "BoxK"},
    {Rule::BoxD, "BoxD"},
    {Rule::BoxT, "BoxT"},
    {Rule::BoxKPlus, "BoxKPlus"},
    {Rule::BoxTPlus, "BoxTPlus"},
}};

}  // namespace

std::string_view to_string(Logic logic) {
  switch (logic) {
    case Logic::K:
      return "k";
    case Logic::KD:
      return "kd";
    case Logic::KT:
      return "kt";
  }
  return "?";
}

std::optional<Logic> parse_logic(std::string_view text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "k") return Logic::K;
  if (lower == "kd") return Logic::KD;
  if (lower == "kt") return Logic::KT;
  return std::nullopt;
}

std::string_view to_string(Rule rule) {
  for (const auto& [r, name] : kRuleNames)
    if (r == rule) return name;
  return "?";
}

std::optional<Rule> parse_rule(std::string_view text) {
  for (const auto& [r, name] : kRuleNames)
    if (name == text) return r;
  return std::nullopt;
}

TSequent Derivation::tsequent() const {
  return TSequent(store.value_or(FormulaMultiset{}), sequent.antecedent, sequent.succedent);
}

std::size_t Derivation::height() const {
  std::size_t h = 0;
  for (const auto& p : premises) h = std::max(h, p.height() + 1);
  return h;
}

std::size_t Derivation::node_count() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.node_count();
  return n;
}

namespace {

class Checker {
 public:
  explicit Checker(Logic logic) : logic_(logic) {}

  void check(const Derivation& d, const std::string& path) {
    check_node(d, path);
    for (std::size_t k = 0; k < d.premises.size(); ++k) {
      if (d.premises[k].is_tsequent() != d.is_tsequent())
        fail(path, "premise " + std::to_string(k) + " mixes plain and T-sequents");
      check(d.premises[k], path + "." + std::to_string(k));
    }
  }

  CheckResult result() && {
    CheckResult r;
    r.ok = violations_.empty();
    r.violations = std::move(violations_);
    return r;
  }

 private:
  struct Resolved {
    Side side;
    Formula formula;
  };

  void fail(const std::string& path, const std::string& msg) {
    violations_.push_back(path + ": " + msg);
  }

  bool rule_allowed(const Derivation& d, const std::string& path) {
    const Rule r = d.rule;
    if (d.is_tsequent()) {
      if (logic_ != Logic::KT) {
        fail(path, "T-sequents only occur in KT derivations");
        return false;
      }
      if (r == Rule::BoxK || r == Rule::BoxD || r == Rule::BoxT) {
        fail(path, std::string(to_string(r)) + " is not a rule of the T-sequent calculus");
        return false;
      }
      return true;
    }
    if (r == Rule::BoxKPlus || r == Rule::BoxTPlus) {
      fail(path, std::string(to_string(r)) + " requires a T-sequent");
      return false;
    }
    if (r == Rule::BoxD && logic_ != Logic::KD) {
      fail(path, "BoxD is only a rule of KD");
      return false;
    }
    if (r == Rule::BoxT && logic_ != Logic::KT) {
      fail(path, "BoxT is only a rule of KT");
      return false;
    }
    return true;
  }

  // Resolves principal positions and strips them from copies of the sides.
  bool resolve(const Derivation& d, const std::string& path, std::vector<Resolved>& out,
               FormulaMultiset& store, FormulaMultiset& ant, FormulaMultiset& suc) {
    store = d.store.value_or(FormulaMultiset{});
    ant = d.sequent.antecedent;
    suc = d.sequent.succedent;
    for (std::size_t i = 0; i < d.principal.size(); ++i)
      for (std::size_t j = i + 1; j < d.principal.size(); ++j)
        if (d.principal[i] == d.principal[j]) {
          fail(path, "principal position listed twice");
          return false;
        }
    for (const auto& p : d.principal) {
      const FormulaMultiset* side = nullptr;
      FormulaMultiset* rest = nullptr;
      switch (p.side) {
        case Side::Store:
          if (!d.is_tsequent()) {
            fail(path, "store position on a plain sequent");
            return false;
          }
          side = &*d.store;
          rest = &store;
          break;
        case Side::Antecedent:
          side = &d.sequent.antecedent;
          rest = &ant;
          break;
        case Side::Succedent:
          side = &d.sequent.succedent;
          rest = &suc;
          break;
      }
      if (p.index >= side->size()) {
        fail(path, "principal position out of range");
        return false;
      }
      const Formula& f = side->at(p.index);
      rest->remove_one(f);
      out.push_back({p.side, f});
    }
    return true;
  }

  void expect_premises(const Derivation& d, const std::string& path,
                       const std::vector<TSequent>& expected) {
    if (d.premises.size() != expected.size()) {
      fail(path, std::string(to_string(d.rule)) + " expects " + std::to_string(expected.size()) +
                     " premise(s), found " + std::to_string(d.premises.size()));
      return;
    }
    for (std::size_t k = 0; k < expected.size(); ++k) {
      TSequent got = d.premises[k].tsequent();
      if (!(got == expected[k]))
        fail(path, std::string(to_string(d.rule)) + ": premise " + std::to_string(k) +
                       " does not match the rule schema");
    }
  }

  // Context checks shared by the modal rules.
  void check_left_context(const FormulaMultiset& ctx, AgentId agent, bool boxes_only,
                          const std::string& path) {
    for (const auto& [f, n] : ctx) {
      if (f.is_boxed(agent)) {
        fail(path, "Σ contains □" + std::to_string(agent.value()) +
                       " (every such box must be principal)");
      } else if (boxes_only ? !f.is(Op::Box) : !f.is_critical_member()) {
        fail(path, boxes_only ? "store context may only contain outermost-boxed formulas"
                              : "Σ may only contain variables, ⊥ or outermost-boxed formulas");
      }
    }
  }

  void check_right_context(const FormulaMultiset& ctx, const std::string& path) {
    for (const auto& [f, n] : ctx)
      if (!f.is_critical_member())
        fail(path, "Ω may only contain variables, ⊥ or outermost-boxed formulas");
  }

  void check_node(const Derivation& d, const std::string& path) {
    if (!rule_allowed(d, path)) return;
    if (d.is_tsequent())
      for (const auto& [f, n] : *d.store)
        if (!f.is(Op::Box)) fail(path, "store holds a formula that is not outermost-boxed");

    std::vector<Resolved> pr;
    FormulaMultiset store, ant, suc;
    if (!resolve(d, path, pr, store, ant, suc)) return;

    auto ts = [&](FormulaMultiset s, FormulaMultiset a, FormulaMultiset c) {
      return TSequent(std::move(s), std::move(a), std::move(c));
    };
    auto single = [&](Side side, Op op) -> const Formula* {
      if (pr.size() != 1 || pr[0].side != side || !pr[0].formula.is(op)) {
        fail(path, std::string(to_string(d.rule)) + " needs exactly one principal formula of the right shape");
        return nullptr;
      }
      return &pr[0].formula;
    };

    switch (d.rule) {
      case Rule::Init: {
        if (pr.size() != 2 || pr[0].side != Side::Antecedent || pr[1].side != Side::Succedent ||
            !pr[0].formula.is(Op::Var) || !(pr[0].formula == pr[1].formula)) {
          fail(path, "Init needs the same variable on both sides");
          return;
        }
        expect_premises(d, path, {});
        return;
      }
      case Rule::InitBot: {
        if (single(Side::Antecedent, Op::Bot)) expect_premises(d, path, {});
        return;
      }
      case Rule::LAnd: {
        if (const Formula* f = single(Side::Antecedent, Op::And)) {
          FormulaMultiset a = ant;
          a.add(f->lhs());
          a.add(f->rhs());
          expect_premises(d, path, {ts(store, a, suc)});
        }
        return;
      }
      case Rule::RAnd: {
        if (const Formula* f = single(Side::Succedent, Op::And)) {
          FormulaMultiset s1 = suc, s2 = suc;
          s1.add(f->lhs());
          s2.add(f->rhs());
          expect_premises(d, path, {ts(store, ant, s1), ts(store, ant, s2)});
        }
        return;
      }
      case Rule::LOr: {
        if (const Formula* f = single(Side::Antecedent, Op::Or)) {
          FormulaMultiset a1 = ant, a2 = ant;
          a1.add(f->lhs());
          a2.add(f->rhs());
          expect_premises(d, path, {ts(store, a1, suc), ts(store, a2, suc)});
        }
        return;
      }
      case Rule::ROr: {
        if (const Formula* f = single(Side::Succedent, Op::Or)) {
          FormulaMultiset s = suc;
          s.add(f->lhs());
          s.add(f->rhs());
          expect_premises(d, path, {ts(store, ant, s)});
        }
        return;
      }
      case Rule::LImp: {
        if (const Formula* f = single(Side::Antecedent, Op::Imp)) {
          FormulaMultiset s = suc, a = ant;
          s.add(f->lhs());
          a.add(f->rhs());
          expect_premises(d, path, {ts(store, ant, s), ts(store, a, suc)});
        }
        return;
      }
      case Rule::RImp: {
        if (const Formula* f = single(Side::Succedent, Op::Imp)) {
          FormulaMultiset a = ant, s = suc;
          a.add(f->lhs());
          s.add(f->rhs());
          expect_premises(d, path, {ts(store, a, s)});
        }
        return;
      }
      case Rule::LNeg: {
        if (const Formula* f = single(Side::Antecedent, Op::Not)) {
          FormulaMultiset s = suc;
          s.add(f->sub());
          expect_premises(d, path, {ts(store, ant, s)});
        }
        return;
      }
      case Rule::RNeg: {
        if (const Formula* f = single(Side::Succedent, Op::Not)) {
          FormulaMultiset a = ant;
          a.add(f->sub());
          expect_premises(d, path, {ts(store, a, suc)});
        }
        return;
      }
      case Rule::BoxT: {
        if (const Formula* f = single(Side::Antecedent, Op::Box)) {
          FormulaMultiset a = d.sequent.antecedent;
          a.add(f->sub());
          expect_premises(d, path, {ts({}, a, suc)});
        }
        return;
      }
      case Rule::BoxTPlus: {
        if (const Formula* f = single(Side::Antecedent, Op::Box)) {
          FormulaMultiset s = store, a = ant;
          s.add(*f);
          a.add(f->sub());
          expect_premises(d, path, {ts(s, a, suc)});
        }
        return;
      }
      case Rule::BoxK:
      case Rule::BoxKPlus: {
        const Side left_side = d.rule == Rule::BoxK ? Side::Antecedent : Side::Store;
        const Formula* right = nullptr;
        for (const auto& r : pr) {
          if (r.side == Side::Succedent) {
            if (right) {
              fail(path, "modal rule with two right principal formulas");
              return;
            }
            right = &r.formula;
          }
        }
        if (!right || !right->is(Op::Box)) {
          fail(path, std::string(to_string(d.rule)) + " needs a boxed right principal formula");
          return;
        }
        const AgentId agent = right->agent();
        FormulaMultiset body;
        for (const auto& r : pr) {
          if (r.side == Side::Succedent) continue;
          if (r.side != left_side || !r.formula.is_boxed(agent)) {
            fail(path, "left principal formulas must be □" + std::to_string(agent.value()) +
                           "-boxed members of the " +
                           (left_side == Side::Store ? "store" : "antecedent"));
            return;
          }
          body.add(r.formula.sub());
        }
        if (d.rule == Rule::BoxK) {
          check_left_context(ant, agent, false, path);
        } else {
          check_left_context(store, agent, true, path);
          for (const auto& [f, n] : ant)
            if (!f.is_atomic()) fail(path, "Π may only contain variables and ⊥");
        }
        check_right_context(suc, path);
        FormulaMultiset goal;
        goal.add(right->sub());
        expect_premises(d, path, {ts({}, body, goal)});
        return;
      }
      case Rule::BoxD: {
        if (pr.empty()) {
          fail(path, "BoxD needs Γ ≠ ∅ (no principal boxed formulas)");
          return;
        }
        const Formula& first = pr.front().formula;
        if (!first.is(Op::Box)) {
          fail(path, "BoxD principal formulas must be boxed");
          return;
        }
        const AgentId agent = first.agent();
        FormulaMultiset body;
        for (const auto& r : pr) {
          if (r.side != Side::Antecedent || !r.formula.is_boxed(agent)) {
            fail(path, "BoxD principal formulas must be □" + std::to_string(agent.value()) +
                           "-boxed antecedent members");
            return;
          }
          body.add(r.formula.sub());
        }
        check_left_context(ant, agent, false, path);
        check_right_context(suc, path);
        expect_premises(d, path, {ts({}, body, {})});
        if (!d.premises.empty() && d.premises[0].sequent.antecedent.empty())
          fail(path, "BoxD premise violates Γ ≠ ∅");
        return;
      }
    }
  }

  Logic logic_;
  std::vector<std::string> violations_;
};

void audit(const Derivation& d, MeasureAudit& out) {
  for (const auto& p : d.premises) {
    if (d.rule != Rule::BoxT) {
      ++out.edges;
      bool ok;
      if (d.is_tsequent())
        ok = measure(p.tsequent()) < measure(d.tsequent());
      else
        ok = sequent_weight(p.sequent) < sequent_weight(d.sequent);
      if (!ok) ++out.violations;
    }
    audit(p, out);
  }
}

}  // namespace

CheckResult check_derivation(Logic logic, const Derivation& d) {
  Checker checker(logic);
  checker.check(d, "root");
  return std::move(checker).result();
}

MeasureAudit audit_measure(const Derivation& d) {
  MeasureAudit out;
  audit(d, out);
  return out;
}

}  // namespace uip
