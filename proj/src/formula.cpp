#include "uip/formula.hpp"

#include <algorithm>
#include <functional>

namespace uip {

AgentId::AgentId(int id) : id_(id) {
  if (id < 1) throw std::invalid_argument("agent ids start at 1, got " + std::to_string(id));
}

struct Formula::Node {
  Op op = Op::Bot;
  AgentId agent;
  std::string name;
  Formula a{std::shared_ptr<const Node>()};
  Formula b{std::shared_ptr<const Node>()};
  std::size_t weight = 1;
  std::size_t depth = 0;
  bool quantified = false;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula::Formula() : Formula(bot()) {}

Formula Formula::make(Op op, AgentId agent, std::string name, const Formula* a,
                      const Formula* b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->agent = agent;
  n->name = std::move(name);
  std::size_t h = mix(static_cast<std::size_t>(op) + 1, static_cast<std::size_t>(agent.value()));
  h = mix(h, std::hash<std::string>{}(n->name));
  n->weight = 1;
  if (a) {
    n->a = *a;
    n->weight += a->raw_weight();
    n->depth = a->modal_depth();
    n->quantified = a->has_quantifier();
    h = mix(h, a->hash());
  }
  if (b) {
    n->b = *b;
    n->weight += b->raw_weight();
    n->depth = std::max(n->depth, b->modal_depth());
    n->quantified = n->quantified || b->has_quantifier();
    h = mix(h, b->hash());
  }
  if (op == Op::Box) n->depth += 1;
  if (op == Op::Forall) n->quantified = true;
  n->hash = h;
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula Formula::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return make(Op::Var, AgentId(), std::move(name), nullptr, nullptr);
}

Formula Formula::bot() {
  static const Formula instance = make(Op::Bot, AgentId(), {}, nullptr, nullptr);
  return instance;
}

Formula Formula::top() { return neg(bot()); }

Formula Formula::conj(Formula l, Formula r) { return make(Op::And, AgentId(), {}, &l, &r); }
Formula Formula::disj(Formula l, Formula r) { return make(Op::Or, AgentId(), {}, &l, &r); }
Formula Formula::imp(Formula l, Formula r) { return make(Op::Imp, AgentId(), {}, &l, &r); }

Formula Formula::iff(const Formula& l, const Formula& r) {
  return conj(imp(l, r), imp(r, l));
}

Formula Formula::neg(Formula sub) { return make(Op::Not, AgentId(), {}, &sub, nullptr); }

Formula Formula::box(AgentId agent, Formula sub) {
  return make(Op::Box, agent, {}, &sub, nullptr);
}

Formula Formula::diamond(AgentId agent, Formula sub) {
  return neg(box(agent, neg(std::move(sub))));
}

Formula Formula::forall(std::string name, Formula sub) {
  if (name.empty()) throw std::invalid_argument("empty bound variable");
  return make(Op::Forall, AgentId(), std::move(name), &sub, nullptr);
}

Formula Formula::exists(std::string name, Formula sub) {
  return neg(forall(std::move(name), neg(std::move(sub))));
}

Formula Formula::disj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return bot();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

Formula Formula::conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Op Formula::op() const noexcept { return node_->op; }

const std::string& Formula::name() const {
  if (!is(Op::Var) && !is(Op::Forall)) throw std::logic_error("name() on a non-variable node");
  return node_->name;
}

AgentId Formula::agent() const {
  if (!is(Op::Box)) throw std::logic_error("agent() on a non-box node");
  return node_->agent;
}

const Formula& Formula::lhs() const {
  if (!is(Op::And) && !is(Op::Or) && !is(Op::Imp))
    throw std::logic_error("lhs() on a non-binary node");
  return node_->a;
}

const Formula& Formula::rhs() const {
  if (!is(Op::And) && !is(Op::Or) && !is(Op::Imp))
    throw std::logic_error("rhs() on a non-binary node");
  return node_->b;
}

const Formula& Formula::sub() const {
  if (!is(Op::Not) && !is(Op::Box) && !is(Op::Forall))
    throw std::logic_error("sub() on a node without a single operand");
  return node_->a;
}

std::size_t Formula::raw_weight() const noexcept { return node_->weight; }
std::size_t Formula::modal_depth() const noexcept { return node_->depth; }
bool Formula::has_quantifier() const noexcept { return node_->quantified; }
std::size_t Formula::hash() const noexcept { return node_->hash; }

std::strong_ordering compare(const Formula& a, const Formula& b) noexcept {
  if (a.same_node(b)) return std::strong_ordering::equal;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  switch (a.op()) {
    case Op::Bot:
      return std::strong_ordering::equal;
    case Op::Var:
      return a.name() <=> b.name();
    case Op::And:
    case Op::Or:
    case Op::Imp:
      if (auto c = compare(a.lhs(), b.lhs()); c != 0) return c;
      return compare(a.rhs(), b.rhs());
    case Op::Not:
      return compare(a.sub(), b.sub());
    case Op::Box:
      if (auto c = a.agent() <=> b.agent(); c != 0) return c;
      return compare(a.sub(), b.sub());
    case Op::Forall:
      if (auto c = compare(a.sub(), b.sub()); c != 0) return c;
      return a.name() <=> b.name();
  }
  return std::strong_ordering::equal;
}

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.same_node(b)) return true;
  if (a.hash() != b.hash() || a.raw_weight() != b.raw_weight()) return false;
  return compare(a, b) == 0;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  return compare(a, b);
}

std::size_t weight(const Formula& f) {
  if (f.has_quantifier()) throw NotFirstOrder("weight is defined on quantifier-free formulas");
  return f.raw_weight();
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.op()) {
    case Op::Var:
      if (!bound.contains(f.name())) out.insert(f.name());
      return;
    case Op::Bot:
      return;
    case Op::And:
    case Op::Or:
    case Op::Imp:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      return;
    case Op::Not:
    case Op::Box:
      collect_free(f.sub(), bound, out);
      return;
    case Op::Forall: {
      const bool fresh = bound.insert(f.name()).second;
      collect_free(f.sub(), bound, out);
      if (fresh) bound.erase(f.name());
      return;
    }
  }
}

template <typename Visit>
void walk(const Formula& f, Visit&& visit) {
  visit(f);
  switch (f.op()) {
    case Op::Var:
    case Op::Bot:
      return;
    case Op::And:
    case Op::Or:
    case Op::Imp:
      walk(f.lhs(), visit);
      walk(f.rhs(), visit);
      return;
    case Op::Not:
    case Op::Box:
    case Op::Forall:
      walk(f.sub(), visit);
      return;
  }
}

}  // namespace

void collect_free_vars(const Formula& f, std::set<std::string>& out) {
  std::set<std::string> bound;
  collect_free(f, bound, out);
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  collect_free_vars(f, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (g.is(Op::Var) || g.is(Op::Forall)) out.insert(g.name());
  });
  return out;
}

std::set<AgentId> agents_of(const Formula& f) {
  std::set<AgentId> out;
  walk(f, [&](const Formula& g) {
    if (g.is(Op::Box)) out.insert(g.agent());
  });
  return out;
}

Formula substitute(const Formula& f, const std::string& p, const Formula& b) {
  switch (f.op()) {
    case Op::Var:
      return f.name() == p ? b : f;
    case Op::Bot:
      return f;
    case Op::And:
      return Formula::conj(substitute(f.lhs(), p, b), substitute(f.rhs(), p, b));
    case Op::Or:
      return Formula::disj(substitute(f.lhs(), p, b), substitute(f.rhs(), p, b));
    case Op::Imp:
      return Formula::imp(substitute(f.lhs(), p, b), substitute(f.rhs(), p, b));
    case Op::Not:
      return Formula::neg(substitute(f.sub(), p, b));
    case Op::Box:
      return Formula::box(f.agent(), substitute(f.sub(), p, b));
    case Op::Forall: {
      if (f.name() == p) return f;
      if (!free_vars(f.sub()).contains(p)) return f;
      if (free_vars(b).contains(f.name()))
        throw CaptureError("substituting for " + p + " under forall " + f.name());
      return Formula::forall(f.name(), substitute(f.sub(), p, b));
    }
  }
  return f;
}

void collect_boxed_subformulas(const Formula& f, std::set<Formula>& out) {
  walk(f, [&](const Formula& g) {
    if (g.is(Op::Box)) out.insert(g);
  });
}

std::vector<Formula> boxed_subformulas(const Formula& f) {
  std::set<Formula> out;
  collect_boxed_subformulas(f, out);
  return {out.begin(), out.end()};
}

std::size_t box_count(const std::vector<Formula>& formulas) {
  std::set<Formula> out;
  for (const auto& f : formulas) collect_boxed_subformulas(f, out);
  return out.size();
}

std::vector<Formula> subformulas(const Formula& f) {
  std::set<Formula> seen;
  std::vector<Formula> order;
  std::function<void(const Formula&)> visit = [&](const Formula& g) {
    if (seen.contains(g)) return;
    switch (g.op()) {
      case Op::Var:
      case Op::Bot:
        break;
      case Op::And:
      case Op::Or:
      case Op::Imp:
        visit(g.lhs());
        visit(g.rhs());
        break;
      case Op::Not:
      case Op::Box:
      case Op::Forall:
        visit(g.sub());
        break;
    }
    seen.insert(g);
    order.push_back(g);
  };
  visit(f);
  return order;
}

}  // namespace uip
