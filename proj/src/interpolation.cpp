#include "uip/interpolation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "deep_stack.hpp"
#include "uip/parallel.hpp"
#include "uip/prover.hpp"

namespace uip {

namespace {

bool is_compound(const Formula& f) {
  return f.is(Op::And) || f.is(Op::Or) || f.is(Op::Imp) || f.is(Op::Not);
}

std::set<std::string> vars_of(std::initializer_list<const FormulaMultiset*> sides) {
  std::set<std::string> out;
  for (const auto* side : sides)
    for (const auto& [f, n] : *side) collect_free_vars(f, out);
  return out;
}

void require_first_order(std::initializer_list<const FormulaMultiset*> sides) {
  for (const auto* side : sides)
    if (!is_first_order(*side)) throw NotFirstOrder("interpolant tables need quantifier-free input");
}

// V(result) must lie inside V(inputs) minus p.
void assert_vocabulary(const Formula& result, const std::string& p,
                       std::initializer_list<const FormulaMultiset*> sides) {
  const auto allowed = vars_of(sides);
  for (const auto& v : free_vars(result))
    if (v == p || !allowed.contains(v))
      throw std::logic_error("interpolant table produced variable '" + v + "' outside its vocabulary");
}

/// Disjuncts of the critical line shared by both tables: succedent variables
/// and falsum, then negated antecedent variables. Occurrences of p are
/// skipped and duplicates kept.
void literal_disjuncts(const std::string& p, const FormulaMultiset& gamma, const FormulaMultiset& delta,
                       std::vector<Formula>& out) {
  for (const auto& [f, n] : delta) {
    if (f.is(Op::Box) || (f.is(Op::Var) && f.name() == p)) continue;
    for (std::size_t k = 0; k < n; ++k) out.push_back(f);
  }
  for (const auto& [f, n] : gamma) {
    if (!f.is(Op::Var) || f.name() == p) continue;
    for (std::size_t k = 0; k < n; ++k) out.push_back(Formula::neg(f));
  }
}

/// Propositional lines shared by both tables. Returns the recursive calls'
/// arguments (antecedent, succedent) and whether the results are conjoined.
struct Decomposition {
  std::vector<std::pair<FormulaMultiset, FormulaMultiset>> parts;
};

std::optional<Decomposition> decompose(const FormulaMultiset& gamma, const FormulaMultiset& delta) {
  for (const auto& [f, n] : gamma) {
    if (!is_compound(f)) continue;
    FormulaMultiset g = gamma;
    g.remove_one(f);
    Decomposition d;
    switch (f.op()) {
      case Op::And: {
        FormulaMultiset g1 = g;
        g1.add(f.lhs());
        g1.add(f.rhs());
        d.parts.emplace_back(std::move(g1), delta);
        break;
      }
      case Op::Or: {
        FormulaMultiset g1 = g, g2 = g;
        g1.add(f.lhs());
        g2.add(f.rhs());
        d.parts.emplace_back(std::move(g1), delta);
        d.parts.emplace_back(std::move(g2), delta);
        break;
      }
      case Op::Imp: {
        FormulaMultiset d1 = delta, g2 = g;
        d1.add(f.lhs());
        g2.add(f.rhs());
        d.parts.emplace_back(g, std::move(d1));
        d.parts.emplace_back(std::move(g2), delta);
        break;
      }
      default: {  // Not
        FormulaMultiset d1 = delta;
        d1.add(f.sub());
        d.parts.emplace_back(std::move(g), std::move(d1));
        break;
      }
    }
    return d;
  }
  for (const auto& [f, n] : delta) {
    if (!is_compound(f)) continue;
    FormulaMultiset e = delta;
    e.remove_one(f);
    Decomposition d;
    switch (f.op()) {
      case Op::And: {
        FormulaMultiset e1 = e, e2 = e;
        e1.add(f.lhs());
        e2.add(f.rhs());
        d.parts.emplace_back(gamma, std::move(e1));
        d.parts.emplace_back(gamma, std::move(e2));
        break;
      }
      case Op::Or: {
        e.add(f.lhs());
        e.add(f.rhs());
        d.parts.emplace_back(gamma, std::move(e));
        break;
      }
      case Op::Imp: {
        FormulaMultiset g1 = gamma;
        g1.add(f.lhs());
        e.add(f.rhs());
        d.parts.emplace_back(std::move(g1), std::move(e));
        break;
      }
      default: {  // Not
        FormulaMultiset g1 = gamma;
        g1.add(f.sub());
        d.parts.emplace_back(std::move(g1), std::move(e));
        break;
      }
    }
    return d;
  }
  return std::nullopt;
}

class KkdTable {
 public:
  KkdTable(std::string p, TableStats* stats) : p_(std::move(p)), stats_(stats) {}

  Formula run(const FormulaMultiset& gamma, const FormulaMultiset& delta) {
    if (stats_) ++stats_->calls;
    Sequent key{gamma, delta};
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (stats_) ++stats_->memo_hits;
      return it->second;
    }
    Formula result = compute(gamma, delta);
    assert_vocabulary(result, p_, {&gamma, &delta});
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  Formula call(const FormulaMultiset& g, const FormulaMultiset& d, std::size_t parent_weight) {
    if (stats_) ++stats_->edges_audited;
    if (!(g.weight() + d.weight() < parent_weight))
      throw std::logic_error("K/KD table recursion does not decrease the weight");
    return run(g, d);
  }

  Formula compute(const FormulaMultiset& gamma, const FormulaMultiset& delta) {
    const Formula p = Formula::var(p_);
    if (gamma.contains(p) && delta.contains(p)) return Formula::top();
    if (gamma.contains(Formula::bot())) return Formula::top();
    const std::size_t w = gamma.weight() + delta.weight();

    if (auto d = decompose(gamma, delta)) {
      std::vector<Formula> parts;
      for (const auto& [g, e] : d->parts) parts.push_back(call(g, e, w));
      return parts.size() == 1 ? parts[0] : Formula::conj(parts[0], parts[1]);
    }

    std::vector<Formula> x;
    literal_disjuncts(p_, gamma, delta, x);
    for (const auto& [f, n] : gamma) {
      if (!f.is(Op::Box)) continue;
      const Formula body = call(flats(gamma, f.agent()), {}, w);
      for (std::size_t k = 0; k < n; ++k) x.push_back(Formula::diamond(f.agent(), body));
    }
    for (const auto& [f, n] : delta) {
      if (!f.is(Op::Box)) continue;
      const Formula body = call(flats(gamma, f.agent()), FormulaMultiset{f.sub()}, w);
      for (std::size_t k = 0; k < n; ++k) x.push_back(Formula::box(f.agent(), body));
    }
    return Formula::disj_all(x);
  }

  std::string p_;
  TableStats* stats_;
  std::unordered_map<Sequent, Formula, SequentHash> memo_;
};

class TTable {
 public:
  TTable(std::string p, TableStats* stats) : p_(std::move(p)), stats_(stats) {}

  Formula run(const TSequent& s) {
    if (stats_) ++stats_->calls;
    if (auto it = memo_.find(s); it != memo_.end()) {
      if (stats_) ++stats_->memo_hits;
      return it->second;
    }
    Formula result = compute(s);
    assert_vocabulary(result, p_, {&s.store, &s.antecedent, &s.succedent});
    memo_.emplace(s, result);
    return result;
  }

 private:
  Formula call(const TSequent& next, const Measure& parent) {
    if (stats_) ++stats_->edges_audited;
    if (!(measure(next) < parent))
      throw std::logic_error("KT table recursion does not decrease <box_count, weight>");
    return run(next);
  }

  Formula compute(const TSequent& s) {
    const Formula p = Formula::var(p_);
    if (s.antecedent.contains(p) && s.succedent.contains(p)) return Formula::top();
    if (s.antecedent.contains(Formula::bot())) return Formula::top();
    const Measure m = measure(s);

    if (auto d = decompose(s.antecedent, s.succedent)) {
      std::vector<Formula> parts;
      for (const auto& [g, e] : d->parts) parts.push_back(call(TSequent(s.store, g, e), m));
      return parts.size() == 1 ? parts[0] : Formula::conj(parts[0], parts[1]);
    }

    // Reflexivity line: the first antecedent box moves into the store.
    for (const auto& [f, n] : s.antecedent) {
      if (!f.is(Op::Box)) continue;
      TSequent next = s;
      next.antecedent.remove_one(f);
      next.antecedent.add(f.sub());
      next.store.add(f);
      return call(next, m);
    }

    std::vector<Formula> x;
    literal_disjuncts(p_, s.antecedent, s.succedent, x);
    for (const auto& [f, n] : s.store) {
      const Formula body = call(TSequent({}, flats(s.store, f.agent()), {}), m);
      for (std::size_t k = 0; k < n; ++k) x.push_back(Formula::diamond(f.agent(), body));
    }
    for (const auto& [f, n] : s.succedent) {
      if (!f.is(Op::Box)) continue;
      const Formula body = call(TSequent({}, flats(s.store, f.agent()), FormulaMultiset{f.sub()}), m);
      for (std::size_t k = 0; k < n; ++k) x.push_back(Formula::box(f.agent(), body));
    }
    return Formula::disj_all(x);
  }

  std::string p_;
  TableStats* stats_;
  std::unordered_map<TSequent, Formula, SequentHash> memo_;
};

void require_distinct(const std::vector<std::string>& forget) {
  std::set<std::string> seen;
  for (const auto& v : forget)
    if (!seen.insert(v).second) throw std::invalid_argument("variable '" + v + "' is forgotten twice");
}

}  // namespace

Formula forget_kkd(const std::string& p, const FormulaMultiset& gamma, const FormulaMultiset& delta,
                   TableStats* stats) {
  require_first_order({&gamma, &delta});
  return detail::on_deep_stack(sequent_weight(Sequent{gamma, delta}), [&] {
    KkdTable table(p, stats);
    return table.run(gamma, delta);
  });
}

Formula forget_t(const std::string& p, const FormulaMultiset& store, const FormulaMultiset& gamma,
                 const FormulaMultiset& delta, TableStats* stats) {
  for (const auto& [f, n] : store)
    if (!f.is(Op::Box)) throw std::invalid_argument("store holds a formula that is not outermost-boxed");
  require_first_order({&store, &gamma, &delta});
  return detail::on_deep_stack(sequent_weight(Sequent{store + gamma, delta}), [&] {
    TTable table(p, stats);
    return table.run(TSequent(store, gamma, delta));
  });
}

Formula forget_sequent(Logic logic, const std::string& p, const Sequent& s, TableStats* stats) {
  if (logic == Logic::KT) return forget_t(p, {}, s.antecedent, s.succedent, stats);
  return forget_kkd(p, s.antecedent, s.succedent, stats);
}

Formula forget(Logic logic, const std::string& p, const Formula& b, TableStats* stats) {
  return forget_sequent(logic, p, Sequent{{}, {b}}, stats);
}

Formula exists_forget(Logic logic, const std::string& p, const Formula& b, TableStats* stats) {
  return Formula::neg(forget(logic, p, Formula::neg(b), stats));
}

Formula post_interpolant(Logic logic, const Formula& a, const std::vector<std::string>& forget_vars,
                         TableStats* stats) {
  require_distinct(forget_vars);
  Formula out = a;
  for (auto it = forget_vars.rbegin(); it != forget_vars.rend(); ++it) out = exists_forget(logic, *it, out, stats);
  return out;
}

Formula pre_interpolant(Logic logic, const Formula& b, const std::vector<std::string>& forget_vars,
                        TableStats* stats) {
  require_distinct(forget_vars);
  Formula out = b;
  for (auto it = forget_vars.rbegin(); it != forget_vars.rend(); ++it) out = forget(logic, *it, out, stats);
  return out;
}

Formula interpolant(const InterpolationProblem& problem, TableStats* stats) {
  return problem.side == InterpolantSide::Post ? post_interpolant(problem.logic, problem.subject, problem.forget, stats)
                                               : pre_interpolant(problem.logic, problem.subject, problem.forget, stats);
}

std::vector<Formula> enumerate_candidates(const std::vector<std::string>& vars, const std::vector<AgentId>& agents,
                                          std::size_t bound, std::size_t budget, std::size_t* complete_up_to) {
  std::vector<std::vector<Formula>> level(bound + 1);
  std::size_t total = 0, done = 0;
  for (std::size_t w = 1; w <= bound; ++w) {
    std::vector<Formula>& cur = level[w];
    if (w == 1) {
      for (const auto& v : vars) cur.push_back(Formula::var(v));
      cur.push_back(Formula::bot());
    } else {
      for (const auto& x : level[w - 1]) {
        cur.push_back(Formula::neg(x));
        for (AgentId a : agents) cur.push_back(Formula::box(a, x));
      }
      for (std::size_t wl = 1; wl + 1 < w; ++wl) {
        const std::size_t wr = w - 1 - wl;
        for (const auto& x : level[wl])
          for (const auto& y : level[wr]) {
            // One operand order per commutative pair keeps the set canonical.
            if (compare(x, y) <= 0) {
              cur.push_back(Formula::conj(x, y));
              cur.push_back(Formula::disj(x, y));
            }
            cur.push_back(Formula::imp(x, y));
          }
      }
    }
    if (total + cur.size() > budget) {
      cur.clear();
      break;
    }
    total += cur.size();
    done = w;
  }
  if (complete_up_to) *complete_up_to = done;
  std::vector<Formula> out;
  out.reserve(total);
  for (std::size_t w = 1; w <= done; ++w) out.insert(out.end(), level[w].begin(), level[w].end());
  return out;
}

InterpolantReport verify_uniform(const InterpolationProblem& problem, std::size_t weight_bound,
                                 const VerifyOptions& options) {
  if (weight_bound == 0) throw std::invalid_argument("verify_uniform needs weight_bound >= 1");
  require_distinct(problem.forget);
  const bool post = problem.side == InterpolantSide::Post;

  InterpolantReport report;
  report.interpolant = interpolant(problem);

  const std::set<std::string> forgotten(problem.forget.begin(), problem.forget.end());
  report.vocab_ok = true;
  for (const auto& v : free_vars(report.interpolant))
    if (forgotten.contains(v)) report.vocab_ok = false;

  const Sequent link = post ? Sequent{{problem.subject}, {report.interpolant}}
                            : Sequent{{report.interpolant}, {problem.subject}};
  report.implication_ok = derivable(problem.logic, link);

  std::vector<std::string> vars;
  for (const auto& v : free_vars(problem.subject))
    if (!forgotten.contains(v)) vars.push_back(v);
  std::vector<AgentId> agents;
  for (AgentId a : agents_of(problem.subject)) agents.push_back(a);
  if (agents.empty()) agents.push_back(AgentId(1));

  const auto candidates =
      enumerate_candidates(vars, agents, weight_bound, options.candidate_budget, &report.extremality_checked_up_to);
  report.candidates = candidates.size();
  const ExtremalityScan scan =
      options.parallel ? extremality_scan(problem.logic, problem.subject, report.interpolant, post, candidates)
                       : extremality_scan_serial(problem.logic, problem.subject, report.interpolant, post, candidates);
  report.partners = scan.partners;
  if (scan.first_failure) report.counterexample = candidates[*scan.first_failure];
  report.extremality_ok = !scan.first_failure && report.extremality_checked_up_to == weight_bound;
  return report;
}

}  // namespace uip
