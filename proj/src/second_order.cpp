#include "uip/second_order.hpp"

#include <functional>
#include <set>
#include <stdexcept>

#include "uip/interpolation.hpp"

namespace uip {

namespace {

Formula rebuild(const Formula& f, const std::function<Formula(const Formula&)>& child) {
  switch (f.op()) {
    case Op::Var:
    case Op::Bot:
      return f;
    case Op::And:
      return Formula::conj(child(f.lhs()), child(f.rhs()));
    case Op::Or:
      return Formula::disj(child(f.lhs()), child(f.rhs()));
    case Op::Imp:
      return Formula::imp(child(f.lhs()), child(f.rhs()));
    case Op::Not:
      return Formula::neg(child(f.sub()));
    case Op::Box:
      return Formula::box(f.agent(), child(f.sub()));
    case Op::Forall:
      break;
  }
  throw std::logic_error("rebuild called on a quantifier");
}

void check_capture(const Formula& f, std::set<std::string>& bound) {
  if (!f.has_quantifier()) return;
  if (f.is(Op::Forall)) {
    if (bound.contains(f.name()))
      throw CaptureError("quantifier over '" + f.name() + "' is nested inside another binding of the same variable");
    bound.insert(f.name());
    check_capture(f.sub(), bound);
    bound.erase(f.name());
    return;
  }
  switch (f.op()) {
    case Op::And:
    case Op::Or:
    case Op::Imp:
      check_capture(f.lhs(), bound);
      check_capture(f.rhs(), bound);
      return;
    case Op::Not:
    case Op::Box:
      check_capture(f.sub(), bound);
      return;
    default:
      return;
  }
}

}  // namespace

Elimination eliminate_quantifiers(Logic logic, const Formula& f) {
  std::set<std::string> bound;
  check_capture(f, bound);
  Elimination out;
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    if (!g.has_quantifier()) return g;
    if (!g.is(Op::Forall)) return rebuild(g, go);
    const Formula body = go(g.sub());
    const Formula before = Formula::forall(g.name(), body);
    Formula after = forget(logic, g.name(), body);
    out.trace.push_back({g.name(), before, after});
    return after;
  };
  out.result = go(f);
  return out;
}

Formula replay(const Formula& input, const TranslationTrace& trace) {
  std::size_t next = 0;
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    if (!g.has_quantifier()) return g;
    if (!g.is(Op::Forall)) return rebuild(g, go);
    const Formula node = Formula::forall(g.name(), go(g.sub()));
    if (next >= trace.size()) throw std::invalid_argument("trace is shorter than the number of quantifiers");
    const TraceStep& step = trace[next++];
    if (step.variable != g.name() || !(step.before == node))
      throw std::invalid_argument("trace step " + std::to_string(next - 1) + " does not match the formula");
    return step.after;
  };
  Formula result = go(input);
  if (next != trace.size()) throw std::invalid_argument("trace has unused steps");
  return result;
}

}  // namespace uip
