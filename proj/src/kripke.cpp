#include "uip/kripke.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace uip {

std::vector<KripkeModel::World> KripkeModel::successors(AgentId agent, World w) const {
  std::vector<World> out;
  auto it = relations.find(agent);
  if (it == relations.end()) return out;
  for (auto e = it->second.lower_bound({w, 0}); e != it->second.end() && e->first == w; ++e)
    out.push_back(e->second);
  return out;
}

bool eval(const KripkeModel& m, KripkeModel::World w, const Formula& f) {
  if (w >= m.world_count) throw std::out_of_range("world outside the model");
  switch (f.op()) {
    case Op::Var:
      return m.valuation.at(w).contains(f.name());
    case Op::Bot:
      return false;
    case Op::And:
      return eval(m, w, f.lhs()) && eval(m, w, f.rhs());
    case Op::Or:
      return eval(m, w, f.lhs()) || eval(m, w, f.rhs());
    case Op::Imp:
      return !eval(m, w, f.lhs()) || eval(m, w, f.rhs());
    case Op::Not:
      return !eval(m, w, f.sub());
    case Op::Box:
      for (auto v : m.successors(f.agent(), w))
        if (!eval(m, v, f.sub())) return false;
      return true;
    case Op::Forall:
      throw NotFirstOrder("eval needs a quantifier-free formula");
  }
  return false;
}

bool refutes(const KripkeModel& m, KripkeModel::World w, const Sequent& s) {
  for (const auto& [f, n] : s.antecedent)
    if (!eval(m, w, f)) return false;
  for (const auto& [f, n] : s.succedent)
    if (eval(m, w, f)) return false;
  return true;
}

bool is_serial(const KripkeModel& m) {
  for (const auto& [agent, edges] : m.relations)
    for (KripkeModel::World w = 0; w < m.world_count; ++w)
      if (m.successors(agent, w).empty()) return false;
  return true;
}

bool is_reflexive(const KripkeModel& m) {
  for (const auto& [agent, edges] : m.relations)
    for (KripkeModel::World w = 0; w < m.world_count; ++w)
      if (!edges.contains({w, w})) return false;
  return true;
}

std::size_t modal_depth(const Sequent& s) {
  std::size_t d = 0;
  for (const auto* side : {&s.antecedent, &s.succedent})
    for (const auto& [f, n] : *side) d = std::max(d, f.modal_depth());
  return d;
}

namespace {

using Mask = std::uint64_t;
constexpr std::size_t kSink = static_cast<std::size_t>(-1);

// A world type: the truth values of the closure at a world, plus one way of
// realising it (valuation and, per agent, the child types used).
struct Profile {
  std::vector<bool> truth;
  Mask valuation = 0;
  std::vector<std::vector<std::size_t>> children;  // per agent index
};

struct VectorHash {
  std::size_t operator()(const std::vector<bool>& v) const noexcept { return std::hash<std::vector<bool>>{}(v); }
};

class ProfileSearch {
 public:
  ProfileSearch(Logic logic, const Sequent& s) : logic_(logic), sequent_(s) {
    std::set<Formula> seen;
    for (const auto* side : {&s.antecedent, &s.succedent})
      for (const auto& [f, n] : *side)
        for (const auto& g : subformulas(f))
          if (seen.insert(g).second) closure_.push_back(g);
    for (std::size_t k = 0; k < closure_.size(); ++k) {
      index_.emplace(closure_[k], k);
      const Formula& g = closure_[k];
      if (g.is(Op::Var)) {
        var_bit_.emplace(k, vars_.size());
        vars_.push_back(g.name());
      } else if (g.is(Op::Box)) {
        if (!agent_index_.contains(g.agent())) {
          agent_index_.emplace(g.agent(), agents_.size());
          agents_.push_back(g.agent());
        }
        box_bit_.emplace(k, boxes_.size());
        boxes_.push_back(k);
      }
    }
    // Agents in ascending order keep the enumeration deterministic.
    std::sort(agents_.begin(), agents_.end());
    for (std::size_t i = 0; i < agents_.size(); ++i) agent_index_[agents_[i]] = i;
    if (boxes_.size() > 64) throw std::length_error("countermodel search supports at most 64 boxed subformulas");
    if (vars_.size() > 20) throw std::length_error("countermodel search supports at most 20 variables");
  }

  std::optional<KripkeModel> run(std::size_t depth) {
    if (logic_ == Logic::KD) sink_ = make_truth(0, std::vector<Mask>(agents_.size(), 0), true);

    std::size_t checked = 0;
    for (std::size_t level = 0; level <= depth; ++level) {
      const std::size_t before = profiles_.size();
      grow(level);
      for (; checked < profiles_.size(); ++checked)
        if (satisfies_root(profiles_[checked].truth)) return build(checked);
      // Nothing new means every deeper level repeats this one.
      if (level > 0 && profiles_.size() == before) break;
    }
    return std::nullopt;
  }

 private:
  std::vector<bool> make_truth(Mask valuation, const std::vector<Mask>& refuted, bool sink) const {
    std::vector<bool> t(closure_.size());
    for (std::size_t k = 0; k < closure_.size(); ++k) {
      const Formula& g = closure_[k];
      switch (g.op()) {
        case Op::Var:
          t[k] = (valuation >> var_bit_.at(k)) & 1U;
          break;
        case Op::Bot:
          t[k] = false;
          break;
        case Op::And:
          t[k] = t[index_.at(g.lhs())] && t[index_.at(g.rhs())];
          break;
        case Op::Or:
          t[k] = t[index_.at(g.lhs())] || t[index_.at(g.rhs())];
          break;
        case Op::Imp:
          t[k] = !t[index_.at(g.lhs())] || t[index_.at(g.rhs())];
          break;
        case Op::Not:
          t[k] = !t[index_.at(g.sub())];
          break;
        case Op::Box: {
          const bool body = t[index_.at(g.sub())];
          const Mask bit = Mask{1} << box_bit_.at(k);
          if (sink) {
            t[k] = body;  // the sink's only successor is itself
          } else {
            t[k] = !(refuted[agent_index_.at(g.agent())] & bit);
            if (logic_ == Logic::KT) t[k] = t[k] && body;
          }
          break;
        }
        case Op::Forall:
          throw NotFirstOrder("countermodel needs a quantifier-free sequent");
      }
    }
    return t;
  }

  // Agent-i boxes whose body fails at a world with this truth vector.
  Mask refuted_bodies(const std::vector<bool>& t, std::size_t agent) const {
    Mask m = 0;
    for (std::size_t b = 0; b < boxes_.size(); ++b) {
      const Formula& g = closure_[boxes_[b]];
      if (agent_index_.at(g.agent()) == agent && !t[index_.at(g.sub())]) m |= Mask{1} << b;
    }
    return m;
  }

  struct Union {
    Mask mask;
    std::vector<std::size_t> witnesses;
  };

  // Every union of R_i over a set of existing profiles, in generation order.
  std::vector<Union> unions(std::size_t agent, std::size_t pool) const {
    std::vector<Union> out;
    std::unordered_map<Mask, std::size_t> seen;
    const bool allow_empty = logic_ != Logic::KD;
    if (allow_empty) {
      out.push_back({0, {}});
      seen.emplace(0, 0);
    }
    for (std::size_t c = 0; c < pool; ++c) {
      const Mask r = refuted_bodies(profiles_[c].truth, agent);
      const std::size_t existing = out.size();
      auto add = [&](Mask m, std::vector<std::size_t> w) {
        if (seen.emplace(m, out.size()).second) out.push_back({m, std::move(w)});
      };
      add(r, {c});
      for (std::size_t u = 0; u < existing; ++u) {
        if (out[u].witnesses.empty()) continue;
        std::vector<std::size_t> w = out[u].witnesses;
        w.push_back(c);
        add(out[u].mask | r, std::move(w));
      }
    }
    return out;
  }

  void grow(std::size_t level) {
    const std::size_t pool = profiles_.size();
    std::vector<std::vector<Union>> choices(agents_.size());
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      if (level == 0) {
        if (logic_ == Logic::KD)
          choices[i].push_back({refuted_bodies(*sink_, i), {kSink}});
        else
          choices[i].push_back({0, {}});
      } else {
        choices[i] = unions(i, pool);
      }
    }
    const Mask valuations = Mask{1} << vars_.size();
    std::vector<std::size_t> pick(agents_.size(), 0);
    std::vector<Mask> refuted(agents_.size());
    for (Mask v = 0; v < valuations; ++v) {
      std::fill(pick.begin(), pick.end(), 0);
      while (true) {
        for (std::size_t i = 0; i < agents_.size(); ++i) refuted[i] = choices[i][pick[i]].mask;
        auto truth = make_truth(v, refuted, false);
        if (!known_.contains(truth)) {
          Profile p{truth, v, {}};
          for (std::size_t i = 0; i < agents_.size(); ++i) p.children.push_back(choices[i][pick[i]].witnesses);
          known_.emplace(truth, profiles_.size());
          profiles_.push_back(std::move(p));
        }
        bool done = true;
        for (std::size_t i = agents_.size(); i-- > 0;) {
          if (++pick[i] < choices[i].size()) {
            done = false;
            break;
          }
          pick[i] = 0;
        }
        if (done) break;
      }
    }
  }

  bool satisfies_root(const std::vector<bool>& t) const {
    for (const auto& [f, n] : sequent_.antecedent)
      if (!t[index_.at(f)]) return false;
    for (const auto& [f, n] : sequent_.succedent)
      if (t[index_.at(f)]) return false;
    return true;
  }

  KripkeModel::World add_world(KripkeModel& m, Mask valuation) const {
    std::set<std::string> val;
    for (std::size_t b = 0; b < vars_.size(); ++b)
      if ((valuation >> b) & 1U) val.insert(vars_[b]);
    m.valuation.push_back(std::move(val));
    return m.world_count++;
  }

  KripkeModel::World expand(KripkeModel& m, std::size_t id, std::optional<KripkeModel::World>& sink) const {
    const Profile& p = profiles_[id];
    const KripkeModel::World w = add_world(m, p.valuation);
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      for (std::size_t c : p.children[i]) {
        KripkeModel::World v;
        if (c == kSink) {
          if (!sink) {
            sink = add_world(m, 0);
            for (AgentId a : agents_) m.relations[a].insert({*sink, *sink});
          }
          v = *sink;
        } else {
          v = expand(m, c, sink);
        }
        m.relations[agents_[i]].insert({w, v});
      }
    }
    return w;
  }

  KripkeModel build(std::size_t id) const {
    KripkeModel m;
    for (AgentId a : agents_) m.relations[a];
    std::optional<KripkeModel::World> sink;
    m.root = expand(m, id, sink);
    if (logic_ == Logic::KT)
      for (AgentId a : agents_)
        for (KripkeModel::World w = 0; w < m.world_count; ++w) m.relations[a].insert({w, w});
    if (!refutes(m, m.root, sequent_))
      throw std::logic_error("countermodel construction disagrees with its profile");
    return m;
  }

  Logic logic_;
  Sequent sequent_;
  std::vector<Formula> closure_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
  std::unordered_map<std::size_t, std::size_t> var_bit_, box_bit_;
  std::vector<std::string> vars_;
  std::vector<std::size_t> boxes_;
  std::vector<AgentId> agents_;
  std::map<AgentId, std::size_t> agent_index_;
  std::optional<std::vector<bool>> sink_;
  std::vector<Profile> profiles_;
  std::unordered_map<std::vector<bool>, std::size_t, VectorHash> known_;
};

}  // namespace

std::optional<KripkeModel> countermodel(Logic logic, const Sequent& s, std::optional<std::size_t> depth) {
  if (!is_first_order(s)) throw NotFirstOrder("countermodel needs a quantifier-free sequent");
  ProfileSearch search(logic, s);
  return search.run(depth.value_or(modal_depth(s)));
}

}  // namespace uip
