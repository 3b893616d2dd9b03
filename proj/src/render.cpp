#include "uip/render.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace uip {

namespace {

// Binding strength used for minimal parenthesisation.
constexpr int kImp = 1, kOr = 2, kAnd = 3, kUnary = 4;

std::string text(const Formula& f, int context) {
  std::string s;
  int level = kUnary;
  switch (f.op()) {
    case Op::Var:
      s = f.name();
      break;
    case Op::Bot:
      s = "false";
      break;
    case Op::Not: {
      const Formula& g = f.sub();
      if (g.is(Op::Bot)) {
        s = "true";
      } else if (g.is(Op::Box) && g.sub().is(Op::Not)) {
        s = "<" + std::to_string(g.agent().value()) + ">" + text(g.sub().sub(), kUnary);
      } else if (g.is(Op::Forall) && g.sub().is(Op::Not)) {
        s = "exists " + g.name() + ". " + text(g.sub().sub(), kUnary);
      } else {
        s = "~" + text(g, kUnary);
      }
      break;
    }
    case Op::Box:
      s = "[" + std::to_string(f.agent().value()) + "]" + text(f.sub(), kUnary);
      break;
    case Op::Forall:
      s = "forall " + f.name() + ". " + text(f.sub(), kUnary);
      break;
    case Op::And:
      level = kAnd;
      s = text(f.lhs(), kAnd) + " & " + text(f.rhs(), kUnary);
      break;
    case Op::Or:
      level = kOr;
      s = text(f.lhs(), kOr) + " | " + text(f.rhs(), kAnd);
      break;
    case Op::Imp:
      level = kImp;
      s = text(f.lhs(), kOr) + " -> " + text(f.rhs(), kImp);
      break;
  }
  return level < context ? "(" + s + ")" : s;
}

std::string latex_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == '_') out += "\\_";
    else out += c;
  }
  return name.size() > 1 ? "\\mathit{" + out + "}" : out;
}

std::string latex(const Formula& f, int context) {
  std::string s;
  int level = kUnary;
  switch (f.op()) {
    case Op::Var:
      s = latex_name(f.name());
      break;
    case Op::Bot:
      s = "\\bot";
      break;
    case Op::Not: {
      const Formula& g = f.sub();
      if (g.is(Op::Bot)) {
        s = "\\top";
      } else if (g.is(Op::Box) && g.sub().is(Op::Not)) {
        s = "\\Diamond_{" + std::to_string(g.agent().value()) + "} " + latex(g.sub().sub(), kUnary);
      } else if (g.is(Op::Forall) && g.sub().is(Op::Not)) {
        s = "\\exists " + latex_name(g.name()) + ".\\, " + latex(g.sub().sub(), kUnary);
      } else {
        s = "\\neg " + latex(g, kUnary);
      }
      break;
    }
    case Op::Box:
      s = "\\Box_{" + std::to_string(f.agent().value()) + "} " + latex(f.sub(), kUnary);
      break;
    case Op::Forall:
      s = "\\forall " + latex_name(f.name()) + ".\\, " + latex(f.sub(), kUnary);
      break;
    case Op::And:
      level = kAnd;
      s = latex(f.lhs(), kAnd) + " \\land " + latex(f.rhs(), kUnary);
      break;
    case Op::Or:
      level = kOr;
      s = latex(f.lhs(), kOr) + " \\lor " + latex(f.rhs(), kAnd);
      break;
    case Op::Imp:
      level = kImp;
      s = latex(f.lhs(), kOr) + " \\to " + latex(f.rhs(), kImp);
      break;
  }
  return level < context ? "(" + s + ")" : s;
}

std::string latex_side(const FormulaMultiset& ms) {
  std::string out;
  for (const auto& f : ms.expanded()) {
    if (!out.empty()) out += ", ";
    out += latex(f, 0);
  }
  return out;
}

std::string latex_node(const Derivation& d) {
  std::string s;
  if (d.store) s += (d.store->empty() ? "\\emptyset" : latex_side(*d.store)) + " \\mid ";
  s += latex_side(d.sequent.antecedent) + " \\Rightarrow " + latex_side(d.sequent.succedent);
  return s;
}

void latex_tree(const Derivation& d, std::ostringstream& out) {
  for (const auto& p : d.premises) latex_tree(p, out);
  if (d.premises.empty()) out << "\\AxiomC{}\n";
  out << "\\RightLabel{\\scriptsize " << to_string(d.rule) << "}\n";
  switch (d.premises.size()) {
    case 0:
    case 1:
      out << "\\UnaryInfC{$" << latex_node(d) << "$}\n";
      break;
    case 2:
      out << "\\BinaryInfC{$" << latex_node(d) << "$}\n";
      break;
    case 3:
      out << "\\TrinaryInfC{$" << latex_node(d) << "$}\n";
      break;
    default:
      throw std::invalid_argument("bussproofs supports at most three premises");
  }
}

void text_tree(const Derivation& d, std::size_t indent, std::ostringstream& out) {
  out << std::string(indent, ' ');
  if (d.store)
    out << render_text(d.tsequent());
  else
    out << render_text(d.sequent);
  out << "   [" << to_string(d.rule) << "]\n";
  for (const auto& p : d.premises) text_tree(p, indent + 2, out);
}

Json side_json(const FormulaMultiset& ms) {
  Json arr = Json::array();
  for (const auto& f : ms.expanded()) arr.push_back(to_json(f));
  return arr;
}

void check_formula(const Json& j, const std::string& path, std::vector<std::string>& errors) {
  try {
    (void)formula_from_json(j);
  } catch (const std::exception& e) {
    errors.push_back(path + ": " + e.what());
  }
}

void check_node(const Json& j, const std::string& path, std::vector<std::string>& errors) {
  if (!j.is_object()) {
    errors.push_back(path + ": node must be an object");
    return;
  }
  for (const char* key : {"sequent", "rule", "premises"})
    if (!j.contains(key)) errors.push_back(path + ": missing \"" + key + "\"");
  if (j.contains("sequent")) {
    const Json& s = j["sequent"];
    if (!s.is_object()) {
      errors.push_back(path + "/sequent: must be an object");
    } else {
      for (const char* key : {"store", "ant", "suc"}) {
        if (!s.contains(key)) {
          if (std::string(key) != "store") errors.push_back(path + "/sequent: missing \"" + key + "\"");
          continue;
        }
        if (!s[key].is_array()) {
          errors.push_back(path + "/sequent/" + key + ": must be an array");
          continue;
        }
        for (std::size_t k = 0; k < s[key].size(); ++k)
          check_formula(s[key][k], path + "/sequent/" + key + "/" + std::to_string(k), errors);
      }
    }
  }
  if (j.contains("rule") && (!j["rule"].is_string() || !parse_rule(j["rule"].get<std::string>())))
    errors.push_back(path + "/rule: unknown rule label");
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) {
      errors.push_back(path + "/premises: must be an array");
    } else {
      for (std::size_t k = 0; k < j["premises"].size(); ++k)
        check_node(j["premises"][k], path + "/premises/" + std::to_string(k), errors);
    }
  }
}

}  // namespace

std::string render_text(const Formula& f) { return text(f, 0); }

std::string render_text(const FormulaMultiset& ms) {
  std::string out;
  for (const auto& f : ms.expanded()) {
    if (!out.empty()) out += ", ";
    out += render_text(f);
  }
  return out;
}

std::string render_text(const Sequent& s) {
  std::string a = render_text(s.antecedent), c = render_text(s.succedent);
  std::string out = a.empty() ? "=>" : a + " =>";
  if (!c.empty()) out += " " + c;
  return out;
}

std::string render_text(const TSequent& s) {
  const std::string store = render_text(s.store);
  return (store.empty() ? "||" : store + " ||") + std::string(" ") + render_text(s.plain());
}

std::string render_text(const Derivation& d) {
  std::ostringstream out;
  text_tree(d, 0, out);
  return out.str();
}

std::string render_text(const KripkeModel& m) {
  std::ostringstream out;
  out << "root: w" << m.root << "\n";
  for (std::size_t w = 0; w < m.world_count; ++w) {
    out << "w" << w << ":";
    if (m.valuation[w].empty()) out << " (no true variables)";
    bool first = true;
    for (const auto& v : m.valuation[w]) {
      out << (first ? " " : ", ") << v;
      first = false;
    }
    out << "\n";
  }
  for (const auto& [agent, edges] : m.relations) {
    out << "R" << agent.value() << ":";
    if (edges.empty()) out << " (empty)";
    bool first = true;
    for (const auto& [u, v] : edges) {
      out << (first ? " " : ", ") << "w" << u << "->w" << v;
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

std::string render_latex(const Formula& f) { return latex(f, 0); }

std::string render_latex(const Sequent& s) {
  return latex_side(s.antecedent) + " \\Rightarrow " + latex_side(s.succedent);
}

std::string render_latex(const Derivation& d) {
  std::ostringstream out;
  out << "\\begin{prooftree}\n";
  latex_tree(d, out);
  out << "\\end{prooftree}\n";
  return out.str();
}

std::string render_latex(const KripkeModel& m) {
  std::ostringstream out;
  out << "\\begin{tabular}{ll}\n";
  for (std::size_t w = 0; w < m.world_count; ++w) {
    out << "$w_{" << w << "}$" << (w == m.root ? " (root)" : "") << " & $";
    bool first = true;
    for (const auto& v : m.valuation[w]) {
      out << (first ? "" : ", ") << latex_name(v);
      first = false;
    }
    out << "$ \\\\\n";
  }
  out << "\\end{tabular}\n";
  for (const auto& [agent, edges] : m.relations) {
    out << "$R_{" << agent.value() << "} = \\{";
    bool first = true;
    for (const auto& [u, v] : edges) {
      out << (first ? "" : ", ") << "(w_{" << u << "}, w_{" << v << "})";
      first = false;
    }
    out << "\\}$\n";
  }
  return out.str();
}

Json to_json(const Formula& f) {
  switch (f.op()) {
    case Op::Var:
      return f.name();
    case Op::Bot:
      return Json{{"op", "bot"}};
    case Op::Not:
      return Json{{"op", "not"}, {"arg", to_json(f.sub())}};
    case Op::And:
      return Json{{"op", "and"}, {"args", Json::array({to_json(f.lhs()), to_json(f.rhs())})}};
    case Op::Or:
      return Json{{"op", "or"}, {"args", Json::array({to_json(f.lhs()), to_json(f.rhs())})}};
    case Op::Imp:
      return Json{{"op", "imp"}, {"args", Json::array({to_json(f.lhs()), to_json(f.rhs())})}};
    case Op::Box:
      return Json{{"op", "box"}, {"agent", f.agent().value()}, {"arg", to_json(f.sub())}};
    case Op::Forall:
      return Json{{"op", "forall"}, {"var", f.name()}, {"arg", to_json(f.sub())}};
  }
  throw std::logic_error("unreachable formula operator");
}

Formula formula_from_json(const Json& j) {
  if (j.is_string()) return Formula::var(j.get<std::string>());
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
    throw std::invalid_argument("formula must be a variable name or an object with \"op\"");
  const std::string op = j["op"].get<std::string>();
  auto arg = [&]() {
    if (!j.contains("arg")) throw std::invalid_argument("\"" + op + "\" needs \"arg\"");
    return formula_from_json(j["arg"]);
  };
  auto args = [&]() {
    if (!j.contains("args") || !j["args"].is_array() || j["args"].size() != 2)
      throw std::invalid_argument("\"" + op + "\" needs two \"args\"");
    return std::pair{formula_from_json(j["args"][0]), formula_from_json(j["args"][1])};
  };
  if (op == "bot") return Formula::bot();
  if (op == "not") return Formula::neg(arg());
  if (op == "and") {
    auto [a, b] = args();
    return Formula::conj(a, b);
  }
  if (op == "or") {
    auto [a, b] = args();
    return Formula::disj(a, b);
  }
  if (op == "imp") {
    auto [a, b] = args();
    return Formula::imp(a, b);
  }
  if (op == "box") {
    if (!j.contains("agent") || !j["agent"].is_number_integer() || j["agent"].get<long long>() < 1 ||
        j["agent"].get<long long>() > std::numeric_limits<int>::max())
      throw std::invalid_argument("\"box\" needs a positive integer \"agent\"");
    return Formula::box(AgentId(j["agent"].get<int>()), arg());
  }
  if (op == "forall") {
    if (!j.contains("var") || !j["var"].is_string()) throw std::invalid_argument("\"forall\" needs \"var\"");
    return Formula::forall(j["var"].get<std::string>(), arg());
  }
  throw std::invalid_argument("unknown formula op \"" + op + "\"");
}

Json to_json(const Sequent& s) {
  return Json{{"ant", side_json(s.antecedent)}, {"suc", side_json(s.succedent)}};
}

Json to_json(const Derivation& d) {
  Json seq = Json::object();
  if (d.store) seq["store"] = side_json(*d.store);
  seq["ant"] = side_json(d.sequent.antecedent);
  seq["suc"] = side_json(d.sequent.succedent);
  Json premises = Json::array();
  for (const auto& p : d.premises) premises.push_back(to_json(p));
  return Json{{"sequent", std::move(seq)}, {"rule", std::string(to_string(d.rule))}, {"premises", std::move(premises)}};
}

Json to_json(const KripkeModel& m) {
  Json worlds = Json::array();
  for (std::size_t w = 0; w < m.world_count; ++w) worlds.push_back(w);
  Json edges = Json::object();
  for (const auto& [agent, rel] : m.relations) {
    Json list = Json::array();
    for (const auto& [u, v] : rel) list.push_back(Json::array({u, v}));
    edges[std::to_string(agent.value())] = std::move(list);
  }
  Json valuation = Json::array();
  for (const auto& vars : m.valuation) valuation.push_back(Json(vars));
  return Json{{"worlds", std::move(worlds)}, {"root", m.root}, {"edges", std::move(edges)},
              {"valuation", std::move(valuation)}};
}

Json derivation_document(Logic logic, const Derivation& d) {
  return Json{{"schema", "derivation/1"}, {"logic", std::string(to_string(logic))}, {"derivation", to_json(d)}};
}

Json model_document(Logic logic, const KripkeModel& m) {
  Json doc{{"schema", "model/1"}, {"logic", std::string(to_string(logic))}};
  const Json body = to_json(m);
  for (const auto& [k, v] : body.items()) doc[k] = v;
  return doc;
}

std::vector<std::string> validate_derivation_document(const Json& j) {
  std::vector<std::string> errors;
  if (!j.is_object()) return {"document must be an object"};
  if (j.value("schema", "") != "derivation/1") errors.emplace_back("schema must be \"derivation/1\"");
  if (!j.contains("logic") || !j["logic"].is_string() || !parse_logic(j["logic"].get<std::string>()))
    errors.emplace_back("logic must be one of k, kd, kt");
  if (!j.contains("derivation"))
    errors.emplace_back("missing \"derivation\"");
  else
    check_node(j["derivation"], "/derivation", errors);
  return errors;
}

std::vector<std::string> validate_model_document(const Json& j) {
  std::vector<std::string> errors;
  if (!j.is_object()) return {"document must be an object"};
  if (j.value("schema", "") != "model/1") errors.emplace_back("schema must be \"model/1\"");
  if (!j.contains("worlds") || !j["worlds"].is_array()) {
    errors.emplace_back("worlds must be an array");
    return errors;
  }
  const std::size_t n = j["worlds"].size();
  for (std::size_t k = 0; k < n; ++k)
    if (j["worlds"][k] != k) errors.push_back("worlds must be 0.." + std::to_string(n - 1));
  if (!j.contains("root") || !j["root"].is_number_unsigned() || j["root"].get<std::size_t>() >= n)
    errors.emplace_back("root must be a world");
  if (!j.contains("edges") || !j["edges"].is_object()) {
    errors.emplace_back("edges must be an object keyed by agent");
  } else {
    for (const auto& [agent, list] : j["edges"].items()) {
      if (agent.empty() || agent.find_first_not_of("0123456789") != std::string::npos || agent == "0")
        errors.push_back("edge key \"" + agent + "\" is not an agent");
      if (!list.is_array()) {
        errors.push_back("edges/" + agent + " must be an array");
        continue;
      }
      for (const auto& e : list)
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned() ||
            e[0].get<std::size_t>() >= n || e[1].get<std::size_t>() >= n)
          errors.push_back("edges/" + agent + " holds a malformed pair");
    }
  }
  if (!j.contains("valuation") || !j["valuation"].is_array() || j["valuation"].size() != n) {
    errors.emplace_back("valuation must list one variable array per world");
  } else {
    for (const auto& vars : j["valuation"]) {
      if (!vars.is_array()) {
        errors.emplace_back("valuation entries must be arrays");
        continue;
      }
      for (const auto& v : vars)
        if (!v.is_string()) errors.emplace_back("valuation entries must be variable names");
    }
  }
  return errors;
}

std::string render(const Formula& f, Format format) {
  switch (format) {
    case Format::Text:
      return render_text(f);
    case Format::Json:
      return to_json(f).dump();
    case Format::Latex:
      return render_latex(f);
  }
  return {};
}

std::string render(Logic logic, const Derivation& d, Format format) {
  switch (format) {
    case Format::Text:
      return render_text(d);
    case Format::Json:
      return derivation_document(logic, d).dump();
    case Format::Latex:
      return render_latex(d);
  }
  return {};
}

std::string render(Logic logic, const KripkeModel& m, Format format) {
  switch (format) {
    case Format::Text:
      return render_text(m);
    case Format::Json:
      return model_document(logic, m).dump();
    case Format::Latex:
      return render_latex(m);
  }
  return {};
}

}  // namespace uip
