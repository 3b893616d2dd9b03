#include "uip/prover.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "deep_stack.hpp"

namespace uip {

ProofResult ProofResult::derivable(Derivation d, SearchStats stats) {
  ProofResult r;
  r.derivable_ = true;
  r.derivation_ = std::move(d);
  r.stats_ = stats;
  return r;
}

ProofResult ProofResult::not_derivable(SearchStats stats) {
  ProofResult r;
  r.stats_ = stats;
  return r;
}

ProofResult ProofResult::derivable_without_tree(SearchStats stats) {
  ProofResult r;
  r.derivable_ = true;
  r.stats_ = stats;
  return r;
}

namespace {

bool is_compound(const Formula& f) {
  return f.is(Op::And) || f.is(Op::Or) || f.is(Op::Imp) || f.is(Op::Not);
}

std::vector<std::size_t> positions_boxed(const FormulaMultiset& ms, AgentId agent) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  for (const auto& [f, n] : ms) {
    if (f.is_boxed(agent))
      for (std::size_t k = 0; k < n; ++k) out.push_back(pos + k);
    pos += n;
  }
  return out;
}

std::set<AgentId> box_agents(const FormulaMultiset& ms) {
  std::set<AgentId> out;
  for (const auto& [f, n] : ms)
    if (f.is(Op::Box)) out.insert(f.agent());
  return out;
}

/// One backward application of a propositional rule.
struct Step {
  Rule rule;
  Principal principal;
  std::vector<std::pair<FormulaMultiset, FormulaMultiset>> premises;  // (ant, suc)
};

Step decompose(const FormulaMultiset& ant, const FormulaMultiset& suc, Side side,
               const Formula& f) {
  const FormulaMultiset& host = side == Side::Antecedent ? ant : suc;
  Step step{Rule::Init, Principal{side, host.position_of(f)}, {}};
  FormulaMultiset a = ant, s = suc;
  if (side == Side::Antecedent)
    a.remove_one(f);
  else
    s.remove_one(f);
  auto with = [](FormulaMultiset ms, std::initializer_list<Formula> extra) {
    for (const auto& g : extra) ms.add(g);
    return ms;
  };
  if (side == Side::Antecedent) {
    switch (f.op()) {
      case Op::And:
        step.rule = Rule::LAnd;
        step.premises.emplace_back(with(a, {f.lhs(), f.rhs()}), s);
        break;
      case Op::Or:
        step.rule = Rule::LOr;
        step.premises.emplace_back(with(a, {f.lhs()}), s);
        step.premises.emplace_back(with(a, {f.rhs()}), s);
        break;
      case Op::Imp:
        step.rule = Rule::LImp;
        step.premises.emplace_back(a, with(s, {f.lhs()}));
        step.premises.emplace_back(with(a, {f.rhs()}), s);
        break;
      case Op::Not:
        step.rule = Rule::LNeg;
        step.premises.emplace_back(a, with(s, {f.sub()}));
        break;
      default:
        throw std::logic_error("decompose on a non-compound formula");
    }
  } else {
    switch (f.op()) {
      case Op::And:
        step.rule = Rule::RAnd;
        step.premises.emplace_back(a, with(s, {f.lhs()}));
        step.premises.emplace_back(a, with(s, {f.rhs()}));
        break;
      case Op::Or:
        step.rule = Rule::ROr;
        step.premises.emplace_back(a, with(s, {f.lhs(), f.rhs()}));
        break;
      case Op::Imp:
        step.rule = Rule::RImp;
        step.premises.emplace_back(with(a, {f.lhs()}), with(s, {f.rhs()}));
        break;
      case Op::Not:
        step.rule = Rule::RNeg;
        step.premises.emplace_back(with(a, {f.sub()}), s);
        break;
      default:
        throw std::logic_error("decompose on a non-compound formula");
    }
  }
  return step;
}

/// Leftmost compound formula, antecedent first.
std::optional<std::pair<Side, Formula>> first_compound(const FormulaMultiset& ant,
                                                       const FormulaMultiset& suc) {
  for (const auto& [f, n] : ant)
    if (is_compound(f)) return std::pair{Side::Antecedent, f};
  for (const auto& [f, n] : suc)
    if (is_compound(f)) return std::pair{Side::Succedent, f};
  return std::nullopt;
}

/// Init or InitBot principal positions, if the sequent is initial.
std::optional<std::pair<Rule, std::vector<Principal>>> initial(const FormulaMultiset& ant,
                                                               const FormulaMultiset& suc) {
  std::size_t pos = 0;
  for (const auto& [f, n] : ant) {
    if (f.is(Op::Var) && suc.contains(f))
      return std::pair{Rule::Init, std::vector<Principal>{{Side::Antecedent, pos},
                                                          {Side::Succedent, suc.position_of(f)}}};
    pos += n;
  }
  const Formula bot = Formula::bot();
  if (ant.contains(bot))
    return std::pair{Rule::InitBot,
                     std::vector<Principal>{{Side::Antecedent, ant.position_of(bot)}}};
  return std::nullopt;
}

void require_first_order(const FormulaMultiset& ms) {
  if (!is_first_order(ms)) throw NotFirstOrder("proof search needs quantifier-free sequents");
}

class PlainSearch {
 public:
  PlainSearch(Logic logic, const SearchOptions& options) : logic_(logic), options_(options) {}

  bool run(const Sequent& s, std::size_t depth, Derivation* out) {
    ++stats_.nodes_expanded;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (auto init = initial(s.antecedent, s.succedent)) {
      if (out) *out = Derivation{s, std::nullopt, init->first, init->second, {}};
      return true;
    }
    if (failed_.contains(s)) return false;
    if (!out && proved_.contains(s)) return true;

    const bool ok = expand(s, depth, out);
    if (ok) {
      if (!out) proved_.insert(s);
    } else {
      failed_.insert(s);
    }
    return ok;
  }

  const SearchStats& stats() const { return stats_; }

 private:
  void audit(const Sequent& premise, const Sequent& conclusion) {
    if (!options_.audit_measure) return;
    ++stats_.edges_audited;
    if (!(sequent_weight(premise) < sequent_weight(conclusion))) ++stats_.measure_violations;
  }

  bool expand(const Sequent& s, std::size_t depth, Derivation* out) {
    if (auto target = first_compound(s.antecedent, s.succedent)) {
      Step step = decompose(s.antecedent, s.succedent, target->first, target->second);
      std::vector<Derivation> premises(out ? step.premises.size() : 0);
      for (std::size_t k = 0; k < step.premises.size(); ++k) {
        Sequent p{std::move(step.premises[k].first), std::move(step.premises[k].second)};
        audit(p, s);
        if (!run(p, depth + 1, out ? &premises[k] : nullptr)) return false;
      }
      if (out) *out = Derivation{s, std::nullopt, step.rule, {step.principal}, std::move(premises)};
      return true;
    }

    // Critical sequent: the modal rules take every box of their agent.
    std::size_t pos = 0;
    for (const auto& [f, n] : s.succedent) {
      if (f.is(Op::Box)) {
        const AgentId agent = f.agent();
        FormulaMultiset goal;
        goal.add(f.sub());
        Sequent p{flats(s.antecedent, agent), goal};
        audit(p, s);
        Derivation sub;
        if (run(p, depth + 1, out ? &sub : nullptr)) {
          if (out) {
            std::vector<Principal> pr{{Side::Succedent, pos}};
            for (auto i : positions_boxed(s.antecedent, agent)) pr.push_back({Side::Antecedent, i});
            std::vector<Derivation> premises;
            premises.push_back(std::move(sub));
            *out = Derivation{s, std::nullopt, Rule::BoxK, std::move(pr), std::move(premises)};
          }
          return true;
        }
      }
      pos += n;
    }
    if (logic_ == Logic::KD) {
      for (AgentId agent : box_agents(s.antecedent)) {
        Sequent p{flats(s.antecedent, agent), {}};
        audit(p, s);
        Derivation sub;
        if (run(p, depth + 1, out ? &sub : nullptr)) {
          if (out) {
            std::vector<Principal> pr;
            for (auto i : positions_boxed(s.antecedent, agent)) pr.push_back({Side::Antecedent, i});
            std::vector<Derivation> premises;
            premises.push_back(std::move(sub));
            *out = Derivation{s, std::nullopt, Rule::BoxD, std::move(pr), std::move(premises)};
          }
          return true;
        }
      }
    }
    return false;
  }

  Logic logic_;
  SearchOptions options_;
  SearchStats stats_;
  std::unordered_set<Sequent, SequentHash> failed_;
  std::unordered_set<Sequent, SequentHash> proved_;
};

class TSearch {
 public:
  explicit TSearch(const SearchOptions& options) : options_(options) {}

  bool run(const TSequent& s, std::size_t depth, Derivation* out) {
    ++stats_.nodes_expanded;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (auto init = initial(s.antecedent, s.succedent)) {
      if (out) *out = node(s, init->first, init->second, {});
      return true;
    }
    if (failed_.contains(s)) return false;
    if (!out && proved_.contains(s)) return true;
    const bool ok = expand(s, depth, out);
    if (ok) {
      if (!out) proved_.insert(s);
    } else {
      failed_.insert(s);
    }
    return ok;
  }

  const SearchStats& stats() const { return stats_; }

 private:
  static Derivation node(const TSequent& s, Rule rule, std::vector<Principal> pr,
                         std::vector<Derivation> premises) {
    return Derivation{s.plain(), s.store, rule, std::move(pr), std::move(premises)};
  }

  void audit(const TSequent& premise, const TSequent& conclusion) {
    if (!options_.audit_measure) return;
    ++stats_.edges_audited;
    if (!(measure(premise) < measure(conclusion))) ++stats_.measure_violations;
  }

  bool expand(const TSequent& s, std::size_t depth, Derivation* out) {
    if (auto target = first_compound(s.antecedent, s.succedent)) {
      Step step = decompose(s.antecedent, s.succedent, target->first, target->second);
      std::vector<Derivation> premises(out ? step.premises.size() : 0);
      for (std::size_t k = 0; k < step.premises.size(); ++k) {
        TSequent p(s.store, std::move(step.premises[k].first), std::move(step.premises[k].second));
        audit(p, s);
        if (!run(p, depth + 1, out ? &premises[k] : nullptr)) return false;
      }
      if (out) *out = node(s, step.rule, {step.principal}, std::move(premises));
      return true;
    }

    // Reflexivity: move the first boxed antecedent formula into the store.
    std::size_t pos = 0;
    for (const auto& [f, n] : s.antecedent) {
      if (f.is(Op::Box)) {
        TSequent p = s;
        p.antecedent.remove_one(f);
        p.antecedent.add(f.sub());
        p.store.add(f);
        audit(p, s);
        Derivation sub;
        if (!run(p, depth + 1, out ? &sub : nullptr)) return false;
        if (out) {
          std::vector<Derivation> premises;
          premises.push_back(std::move(sub));
          *out = node(s, Rule::BoxTPlus, {{Side::Antecedent, pos}}, std::move(premises));
        }
        return true;
      }
      pos += n;
    }

    // Antecedent is atomic now; branch over the right boxes.
    pos = 0;
    for (const auto& [f, n] : s.succedent) {
      if (f.is(Op::Box)) {
        const AgentId agent = f.agent();
        FormulaMultiset goal;
        goal.add(f.sub());
        TSequent p({}, flats(s.store, agent), goal);
        audit(p, s);
        Derivation sub;
        if (run(p, depth + 1, out ? &sub : nullptr)) {
          if (out) {
            std::vector<Principal> pr{{Side::Succedent, pos}};
            for (auto i : positions_boxed(s.store, agent)) pr.push_back({Side::Store, i});
            std::vector<Derivation> premises;
            premises.push_back(std::move(sub));
            *out = node(s, Rule::BoxKPlus, std::move(pr), std::move(premises));
          }
          return true;
        }
      }
      pos += n;
    }
    return false;
  }

  SearchOptions options_;
  SearchStats stats_;
  std::unordered_set<TSequent, SequentHash> failed_;
  std::unordered_set<TSequent, SequentHash> proved_;
};

}  // namespace

ProofResult prove(Logic logic, const Sequent& s, const SearchOptions& options) {
  require_first_order(s.antecedent);
  require_first_order(s.succedent);
  if (logic == Logic::KT) return prove_tplus(TSequent(s), options);
  return detail::on_deep_stack(sequent_weight(s), [&] {
    PlainSearch search(logic, options);
    Derivation d;
    const bool ok = search.run(s, 0, options.build_derivation ? &d : nullptr);
    if (!ok) return ProofResult::not_derivable(search.stats());
    if (!options.build_derivation) return ProofResult::derivable_without_tree(search.stats());
    return ProofResult::derivable(std::move(d), search.stats());
  });
}

ProofResult prove_tplus(const TSequent& s, const SearchOptions& options) {
  for (const auto& [f, n] : s.store)
    if (!f.is(Op::Box))
      throw std::invalid_argument("T-sequent store holds a formula that is not outermost-boxed");
  require_first_order(s.store);
  require_first_order(s.antecedent);
  require_first_order(s.succedent);
  const std::size_t store_weight = sequent_weight(Sequent{s.store, {}});
  return detail::on_deep_stack(sequent_weight(s.plain()) + store_weight, [&] {
    TSearch search(options);
    Derivation d;
    const bool ok = search.run(s, 0, options.build_derivation ? &d : nullptr);
    if (!ok) return ProofResult::not_derivable(search.stats());
    if (!options.build_derivation) return ProofResult::derivable_without_tree(search.stats());
    return ProofResult::derivable(std::move(d), search.stats());
  });
}

bool derivable(Logic logic, const Sequent& s) {
  return prove(logic, s, SearchOptions{.build_derivation = false, .audit_measure = false})
      .is_derivable();
}

namespace {

class NaiveKt {
 public:
  bool run(const Sequent& s, std::size_t budget) {
    if (initial(s.antecedent, s.succedent)) return true;
    if (budget == 0) return false;
    auto& entry = memo_[s];
    if (entry.proved_at && *entry.proved_at <= budget) return true;
    if (entry.failed_at && *entry.failed_at >= budget) return false;

    const bool ok = try_rules(s, budget);
    auto& e = memo_[s];  // try_rules may rehash
    if (ok) {
      e.proved_at = std::min(e.proved_at.value_or(budget), budget);
    } else {
      e.failed_at = std::max(e.failed_at.value_or(0), budget);
    }
    return ok;
  }

 private:
  struct Memo {
    std::optional<std::size_t> proved_at;
    std::optional<std::size_t> failed_at;
  };

  bool all(const std::vector<Sequent>& premises, std::size_t budget) {
    return std::all_of(premises.begin(), premises.end(),
                       [&](const Sequent& p) { return run(p, budget); });
  }

  bool try_rules(const Sequent& s, std::size_t budget) {
    const std::size_t next = budget - 1;
    for (const auto* side : {&s.antecedent, &s.succedent}) {
      const Side which = side == &s.antecedent ? Side::Antecedent : Side::Succedent;
      for (const auto& [f, n] : *side) {
        if (!is_compound(f)) continue;
        Step step = decompose(s.antecedent, s.succedent, which, f);
        std::vector<Sequent> premises;
        for (auto& [a, c] : step.premises) premises.push_back({std::move(a), std::move(c)});
        if (all(premises, next)) return true;
      }
    }
    // Reflexivity keeps its principal box. A second copy of the body never
    // helps (contraction is height-preserving), so skip that instance.
    for (const auto& [f, n] : s.antecedent) {
      if (!f.is(Op::Box) || s.antecedent.contains(f.sub())) continue;
      Sequent p = s;
      p.antecedent.add(f.sub());
      if (run(p, next)) return true;
    }
    if (is_critical(s)) {
      for (const auto& [f, n] : s.succedent) {
        if (!f.is(Op::Box)) continue;
        FormulaMultiset goal;
        goal.add(f.sub());
        if (run({flats(s.antecedent, f.agent()), goal}, next)) return true;
      }
    }
    return false;
  }

  std::unordered_map<Sequent, Memo, SequentHash> memo_;
};

}  // namespace

BoundedVerdict naive_kt_prove(const Sequent& s, std::size_t depth_bound) {
  if (depth_bound < 1) throw std::invalid_argument("naive_kt_prove needs depth_bound >= 1");
  require_first_order(s.antecedent);
  require_first_order(s.succedent);
  NaiveKt search;
  return search.run(s, depth_bound) ? BoundedVerdict::DerivableWithin : BoundedVerdict::Unknown;
}

}  // namespace uip
