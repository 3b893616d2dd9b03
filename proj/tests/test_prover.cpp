#include <doctest.h>

#include "support/random.hpp"
#include "uip/parser.hpp"
#include "uip/prover.hpp"

using namespace uip;

namespace {

Sequent S(const char* text) { return parse_sequent(text); }

constexpr Logic kLogics[] = {Logic::K, Logic::KD, Logic::KT};

void check_result(Logic logic, const Sequent& s) {
  const ProofResult r = prove(logic, s);
  CHECK(r.stats().measure_violations == 0);
  if (r) {
    REQUIRE(r.derivation());
    const CheckResult c = check_derivation(logic, *r.derivation());
    CAPTURE(c.violations);
    CHECK(c.ok);
    CHECK(audit_measure(*r.derivation()).violations == 0);
  }
  CHECK(r.is_derivable() == derivable(logic, s));
}

std::vector<Rule> spine(const Derivation& d) {
  std::vector<Rule> out{d.rule};
  if (!d.premises.empty()) {
    auto rest = spine(d.premises.front());
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

}  // namespace

TEST_CASE("axiom K is derivable in every logic") {
  for (Logic logic : kLogics) CHECK(prove(logic, S("=> [1](p -> q) -> ([1]p -> [1]q)")));
}

TEST_CASE("seriality separates K from KD") {
  CHECK_FALSE(prove(Logic::K, S("=> ~[1]false")));
  CHECK(prove(Logic::KD, S("=> ~[1]false")));
  CHECK(prove(Logic::KT, S("=> ~[1]false")));
}

TEST_CASE("reflexivity separates KT") {
  CHECK(prove(Logic::KT, S("=> [1]p -> p")));
  CHECK_FALSE(prove(Logic::K, S("=> [1]p -> p")));
  CHECK_FALSE(prove(Logic::KD, S("=> [1]p -> p")));
}

TEST_CASE("the looping KT example terminates as not derivable") {
  const ProofResult r = prove(Logic::KT, S("p => <1>(p & q)"));
  CHECK_FALSE(r);
  CHECK(r.stats().nodes_expanded < 20);
  CHECK(r.stats().measure_violations == 0);
  // The branch the search cannot close.
  const Formula stored = parse_formula("[1]~(p & q)");
  CHECK_FALSE(prove_tplus(TSequent({stored}, {Formula::var("p")}, {Formula::var("q")})));
}

TEST_CASE("T-sequent search") {
  const ProofResult r = prove_tplus(TSequent(S("[1]p => [1]p")));
  REQUIRE(r);
  // Read from the root: reflexivity first, then the box rule, then the axiom.
  CHECK(spine(*r.derivation()) == std::vector<Rule>{Rule::BoxTPlus, Rule::BoxKPlus, Rule::Init});
  CHECK(check_derivation(Logic::KT, *r.derivation()));
  CHECK_FALSE(prove_tplus(TSequent(S("=>"))));
  CHECK_THROWS_AS(prove_tplus(TSequent({Formula::var("p")}, {}, {})), std::invalid_argument);
}

TEST_CASE("quantified input is rejected") {
  const Sequent s{{parse_formula("forall p. p", Level::L2)}, {}};
  CHECK_THROWS_AS(prove(Logic::K, s), NotFirstOrder);
  CHECK_THROWS_AS(prove(Logic::KT, s), NotFirstOrder);
}

TEST_CASE("verdict-only search agrees with tree search") {
  testing::Random rng(31);
  for (int k = 0; k < 300; ++k) {
    const Sequent s = rng.sequent(12);
    for (Logic logic : kLogics) {
      const ProofResult full = prove(logic, s);
      const ProofResult fast = prove(logic, s, {.build_derivation = false, .audit_measure = true});
      CHECK(full.is_derivable() == fast.is_derivable());
      CHECK_FALSE(fast.derivation().has_value());
      CHECK(fast.stats().measure_violations == 0);
    }
  }
}

TEST_CASE("every derivation the prover returns passes the checker") {
  testing::Random rng(32);
  for (int k = 0; k < 400; ++k) {
    const Sequent s = rng.sequent(12);
    CAPTURE(s.antecedent.size());
    for (Logic logic : kLogics) check_result(logic, s);
  }
}

TEST_CASE("identity sequents are derivable") {
  testing::Random rng(33);
  for (int k = 0; k < 500; ++k) {
    const Formula a = rng.formula(12);
    for (Logic logic : kLogics) CHECK(derivable(logic, Sequent{{a}, {a}}));
  }
}

TEST_CASE("logic inclusions: K below KD below KT") {
  testing::Random rng(34);
  for (int k = 0; k < 300; ++k) {
    const Sequent s = rng.sequent(12);
    const bool k_ok = derivable(Logic::K, s), kd_ok = derivable(Logic::KD, s), kt_ok = derivable(Logic::KT, s);
    if (k_ok) CHECK(kd_ok);
    if (kd_ok) CHECK(kt_ok);
  }
}

TEST_CASE("naive KT search") {
  CHECK(naive_kt_prove(S("=> [1]p -> p"), 10) == BoundedVerdict::DerivableWithin);
  CHECK(naive_kt_prove(S("p => <1>(p & q)"), 10) == BoundedVerdict::Unknown);
  CHECK(naive_kt_prove(S("p => <1>(p & q)"), 12) == BoundedVerdict::Unknown);
  CHECK(naive_kt_prove(S("p => p"), 1) == BoundedVerdict::DerivableWithin);
  // Height counts edges: p & q => p needs one rule above the axiom.
  CHECK(naive_kt_prove(S("p & q => p"), 1) == BoundedVerdict::DerivableWithin);
  CHECK(naive_kt_prove(S("(p & q) & r => p"), 1) == BoundedVerdict::Unknown);
  CHECK_THROWS_AS(naive_kt_prove(S("=>"), 0), std::invalid_argument);
}

TEST_CASE("naive KT search never claims more than the terminating search") {
  testing::Random rng(35);
  std::size_t within = 0;
  for (int k = 0; k < 300; ++k) {
    const Sequent s = rng.sequent(10);
    if (naive_kt_prove(s, 8) == BoundedVerdict::DerivableWithin) {
      ++within;
      CHECK(derivable(Logic::KT, s));
    }
  }
  CHECK(within > 30);
}

TEST_CASE("heights of naive and terminating derivations") {
  // A derivation from the terminating search translates into one for the
  // looping calculus, so a generous bound finds every derivable instance.
  testing::Random rng(36);
  for (int k = 0; k < 150; ++k) {
    const Sequent s = rng.sequent(8);
    const ProofResult r = prove(Logic::KT, s);
    if (!r) continue;
    const std::size_t h = r.derivation()->height();
    CHECK(naive_kt_prove(s, std::max<std::size_t>(1, h)) == BoundedVerdict::DerivableWithin);
  }
}

TEST_CASE("weakening, contraction and substitution preserve derivability") {
  testing::Random rng(37);
  std::size_t checked = 0;
  while (checked < 150) {
    const Sequent s = rng.sequent(10);
    const Logic logic = kLogics[checked % 3];
    if (!derivable(logic, s)) continue;
    ++checked;
    Sequent w = s;
    w.antecedent.add(rng.formula(5));
    w.succedent.add(rng.formula(5));
    CHECK(derivable(logic, w));
    Sequent sub;
    const Formula b = rng.formula(4);
    for (const auto& [f, n] : s.antecedent) sub.antecedent.add(substitute(f, "q", b), n);
    for (const auto& [f, n] : s.succedent) sub.succedent.add(substitute(f, "q", b), n);
    CHECK(derivable(logic, sub));
  }
  CHECK(derivable(Logic::K, S("p => q, q")) == derivable(Logic::K, S("p => q")));
}

TEST_CASE("replacement of equivalents outside and inside boxes") {
  // Outside a box an equivalence can be used directly.
  for (Logic logic : kLogics) CHECK(derivable(logic, S("(p -> q) & (q -> p), r & q => r & p")));
  // Inside a box it cannot: p <-> true does not give [1]true -> [1]p.
  for (Logic logic : kLogics) {
    const Sequent s{{Formula::iff(Formula::var("p"), Formula::top()), parse_formula("[1]true")},
                    {parse_formula("[1]p")}};
    CHECK_FALSE(derivable(logic, s));
  }
  // The necessitated equivalence is enough.
  for (Logic logic : kLogics) CHECK(derivable(logic, S("[1](p -> q), [1](q -> p), [1]q => [1]p")));
}
