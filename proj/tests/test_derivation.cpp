#include <doctest.h>

#include <algorithm>

#include "uip/derivation.hpp"
#include "uip/parser.hpp"

using namespace uip;

namespace {

Derivation node(const char* sequent, Rule rule, std::vector<Principal> principal,
                std::vector<Derivation> premises = {}) {
  Derivation d;
  d.sequent = parse_sequent(sequent);
  d.rule = rule;
  d.principal = std::move(principal);
  d.premises = std::move(premises);
  return d;
}

Derivation axiom(const char* sequent, std::size_t ant = 0, std::size_t suc = 0) {
  return node(sequent, Rule::Init, {{Side::Antecedent, ant}, {Side::Succedent, suc}});
}

bool mentions(const CheckResult& r, const std::string& needle) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("names of logics and rules") {
  CHECK(parse_logic("KD") == Logic::KD);
  CHECK(parse_logic("kt") == Logic::KT);
  CHECK_FALSE(parse_logic("S5"));
  CHECK(to_string(Logic::K) == "k");
  CHECK(parse_rule("BoxTPlus") == Rule::BoxTPlus);
  CHECK_FALSE(parse_rule("Cut"));
}

TEST_CASE("a hand-built K derivation checks") {
  const Derivation d = node("[1]p => [1]p", Rule::BoxK, {{Side::Antecedent, 0}, {Side::Succedent, 0}},
                            {axiom("p => p")});
  for (Logic logic : {Logic::K, Logic::KD}) {
    const CheckResult r = check_derivation(logic, d);
    CAPTURE(r.violations);
    CHECK(r.ok);
  }
  CHECK(d.height() == 1);
  CHECK(d.node_count() == 2);
  const MeasureAudit audit = audit_measure(d);
  CHECK(audit.edges == 1);
  CHECK(audit.violations == 0);
}

TEST_CASE("the modal rule must take every box of its agent") {
  // [1]q stays in the context, which is forbidden.
  const Derivation d = node("[1]p, [1]q => [1]p", Rule::BoxK, {{Side::Antecedent, 0}, {Side::Succedent, 0}},
                            {axiom("p => p")});
  const CheckResult r = check_derivation(Logic::K, d);
  CHECK_FALSE(r.ok);
  CHECK(mentions(r, "Σ contains □1"));
}

TEST_CASE("boxes of other agents may stay in the context") {
  const Derivation d = node("[1]p, [2]q => [1]p", Rule::BoxK, {{Side::Antecedent, 0}, {Side::Succedent, 0}},
                            {axiom("p => p")});
  CHECK(check_derivation(Logic::K, d));
}

TEST_CASE("the modal context must be critical") {
  const Derivation d = node("[1]p, q & r => [1]p", Rule::BoxK, {{Side::Antecedent, 1}, {Side::Succedent, 0}},
                            {axiom("p => p")});
  const CheckResult r = check_derivation(Logic::K, d);
  CHECK_FALSE(r.ok);
  CHECK(mentions(r, "Σ may only contain"));
}

TEST_CASE("BoxD needs a principal box") {
  const Derivation empty = node("=> p", Rule::BoxD, {}, {node("=>", Rule::Init, {})});
  const CheckResult r = check_derivation(Logic::KD, empty);
  CHECK_FALSE(r.ok);
  CHECK(mentions(r, "BoxD needs Γ ≠ ∅"));

  const Derivation good = node("[1]false =>", Rule::BoxD, {{Side::Antecedent, 0}},
                               {node("false =>", Rule::InitBot, {{Side::Antecedent, 0}})});
  CHECK(check_derivation(Logic::KD, good));
  CHECK_FALSE(check_derivation(Logic::K, good));
  CHECK(mentions(check_derivation(Logic::K, good), "BoxD is only a rule of KD"));
}

TEST_CASE("rules belong to their logics") {
  const Derivation t = node("[1]p => p", Rule::BoxT, {{Side::Antecedent, 0}}, {axiom("[1]p, p => p")});
  CHECK(check_derivation(Logic::KT, t));
  CHECK(mentions(check_derivation(Logic::KD, t), "BoxT is only a rule of KT"));
  // BoxT keeps its principal, so the weight does not drop along that edge;
  // the audit leaves such edges out.
  CHECK(audit_measure(t).edges == 0);

  Derivation plus = node("[1]p => p", Rule::BoxKPlus, {{Side::Antecedent, 0}, {Side::Succedent, 0}});
  CHECK(mentions(check_derivation(Logic::KT, plus), "requires a T-sequent"));
}

TEST_CASE("T-sequent nodes") {
  Derivation leaf = axiom("p => p");
  leaf.store = FormulaMultiset{parse_formula("[1]p")};
  Derivation root = node("[1]p => p", Rule::BoxTPlus, {{Side::Antecedent, 0}}, {leaf});
  root.store = FormulaMultiset{};
  CHECK(check_derivation(Logic::KT, root));
  CHECK(mentions(check_derivation(Logic::K, root), "T-sequents only occur in KT derivations"));
  const MeasureAudit audit = audit_measure(root);
  CHECK(audit.edges == 1);
  CHECK(audit.violations == 0);

  Derivation bad_store = leaf;
  bad_store.store = FormulaMultiset{parse_formula("p")};
  CHECK(mentions(check_derivation(Logic::KT, bad_store), "not outermost-boxed"));
}

TEST_CASE("premises must match the schema") {
  const Derivation wrong = node("p & q => p", Rule::LAnd, {{Side::Antecedent, 0}}, {axiom("p => p")});
  const CheckResult r = check_derivation(Logic::K, wrong);
  CHECK_FALSE(r.ok);
  CHECK(mentions(r, "does not match the rule schema"));

  const Derivation missing = node("p & q => p", Rule::LAnd, {{Side::Antecedent, 0}});
  CHECK(mentions(check_derivation(Logic::K, missing), "expects 1 premise(s), found 0"));

  const Derivation shape = node("p | q => p", Rule::LAnd, {{Side::Antecedent, 0}}, {axiom("p => p")});
  CHECK(mentions(check_derivation(Logic::K, shape), "right shape"));

  const Derivation range = node("p => p", Rule::Init, {{Side::Antecedent, 3}, {Side::Succedent, 0}});
  CHECK(mentions(check_derivation(Logic::K, range), "out of range"));

  const Derivation mismatch = node("p => q", Rule::Init, {{Side::Antecedent, 0}, {Side::Succedent, 0}});
  CHECK(mentions(check_derivation(Logic::K, mismatch), "same variable"));
}

TEST_CASE("violations carry the path of the failing node") {
  const Derivation inner = node("p & q => p", Rule::LAnd, {{Side::Antecedent, 0}}, {axiom("q => q")});
  const Derivation root = node("=> p & q -> p", Rule::RImp, {{Side::Succedent, 0}}, {inner});
  const CheckResult r = check_derivation(Logic::K, root);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations.front().find("LAnd") != std::string::npos);
  CHECK(r.violations.front().rfind("root.0: ", 0) == 0);
}

TEST_CASE("the audit counts weight increases") {
  // Not a valid derivation; only the audit is exercised.
  const Derivation up = node("p => p", Rule::LAnd, {}, {axiom("p, p & q => p")});
  const MeasureAudit audit = audit_measure(up);
  CHECK(audit.edges == 1);
  CHECK(audit.violations == 1);
}
