#include "uip/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

namespace uip {

ParseError::ParseError(SourceSpan span, const std::string& message, std::vector<std::string> expected)
    : std::runtime_error(message + " at " + std::to_string(span.start) + ".." + std::to_string(span.end)),
      span_(span),
      message_(message),
      expected_(std::move(expected)) {}

std::string ParseError::annotate(std::string_view text) const {
  std::string out = "parse error at " + std::to_string(span_.start) + ".." +
                    std::to_string(span_.end) + ": " + message_;
  if (!expected_.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected_.size(); ++i) {
      if (i) out += ", ";
      out += expected_[i];
    }
    out += ")";
  }
  // Only the line holding the span is shown.
  const std::size_t start = std::min(span_.start, text.size());
  std::size_t line_begin = 0;
  for (std::size_t k = start; k > 0; --k)
    if (text[k - 1] == '\n') {
      line_begin = k;
      break;
    }
  std::size_t line_end = text.find('\n', start);
  if (line_end == std::string_view::npos) line_end = text.size();
  out += "\n  ";
  out += text.substr(line_begin, line_end - line_begin);
  out += "\n  ";
  out += std::string(start - line_begin, ' ');
  const std::size_t width = std::max<std::size_t>(1, std::min(span_.end, line_end) - start);
  out += std::string(width, '^');
  return out;
}

namespace {

enum class Tok {
  Ident,
  Int,
  KwFalse,
  KwTrue,
  KwForall,
  KwExists,
  LParen,
  RParen,
  LBrack,
  RBrack,
  Lt,
  Gt,
  Tilde,
  Amp,
  Pipe,
  Arrow,
  DArrow,
  Comma,
  Dot,
  End,
};

struct Token {
  Tok kind;
  SourceSpan span;
  std::string_view text;
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "agent number";
    case Tok::KwFalse: return "'false'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwForall: return "'forall'";
    case Tok::KwExists: return "'exists'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'=>'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::optional<Tok> keyword(std::string_view word) {
  if (word == "false") return Tok::KwFalse;
  if (word == "true") return Tok::KwTrue;
  if (word == "forall") return Tok::KwForall;
  if (word == "exists") return Tok::KwExists;
  return std::nullopt;
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back({kind, {i, i + len}, text.substr(i, len)});
    i += len;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      const auto word = text.substr(i, j - i);
      push(keyword(word).value_or(Tok::Ident), j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Tok::Int, j - i);
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '[': push(Tok::LBrack, 1); continue;
      case ']': push(Tok::RBrack, 1); continue;
      case '<': push(Tok::Lt, 1); continue;
      case '>': push(Tok::Gt, 1); continue;
      case '~': push(Tok::Tilde, 1); continue;
      case '&': push(Tok::Amp, 1); continue;
      case '|': push(Tok::Pipe, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Tok::Arrow, 2);
          continue;
        }
        break;
      case '=':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Tok::DArrow, 2);
          continue;
        }
        break;
      default:
        break;
    }
    // Report a whole UTF-8 sequence, not a single byte of it.
    std::size_t len = 1;
    while (i + len < text.size() && (static_cast<unsigned char>(text[i + len]) & 0xC0) == 0x80) ++len;
    throw ParseError({i, i + len}, "unexpected character '" + std::string(text.substr(i, len)) + "'");
  }
  out.push_back({Tok::End, {text.size(), text.size()}, {}});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, Level level) : tokens_(lex(text)), level_(level) {}

  Formula formula() { return implication(); }

  Sequent sequent() {
    Sequent s;
    if (!at(Tok::DArrow)) list(s.antecedent, Tok::DArrow);
    expect(Tok::DArrow);
    if (!at(Tok::End)) list(s.succedent, Tok::End);
    return s;
  }

  void finish() { expect(Tok::End); }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok t) const { return peek().kind == t; }
  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    const Token& t = peek();
    const std::string what = t.kind == Tok::End ? "unexpected end of input"
                                                 : "unexpected " + describe(t.kind);
    throw ParseError(t.span, what, std::move(expected));
  }

  const Token& expect(Tok t) {
    if (!at(t)) unexpected({describe(t)});
    return advance();
  }

  void list(FormulaMultiset& side, Tok terminator) {
    side.add(formula());
    while (at(Tok::Comma)) {
      advance();
      side.add(formula());
    }
    if (!at(terminator)) unexpected({"','", describe(terminator)});
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (at(Tok::Arrow)) {
      advance();
      return Formula::imp(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (at(Tok::Pipe)) {
      advance();
      f = Formula::disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (at(Tok::Amp)) {
      advance();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  AgentId agent_number() {
    const Token& t = peek();
    if (!at(Tok::Int)) unexpected({"agent number"});
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{} || value == 0) throw ParseError(t.span, "agents are positive integers", {"agent number"});
    advance();
    return AgentId(value);
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tilde:
        advance();
        return Formula::neg(unary());
      case Tok::LBrack: {
        advance();
        const AgentId a = agent_number();
        expect(Tok::RBrack);
        return Formula::box(a, unary());
      }
      case Tok::Lt: {
        advance();
        const AgentId a = agent_number();
        expect(Tok::Gt);
        return Formula::diamond(a, unary());
      }
      case Tok::KwForall:
      case Tok::KwExists: {
        if (level_ == Level::L1)
          throw ParseError(t.span, "second-order construct '" + std::string(t.text) +
                                       "' is not allowed here");
        const bool universal = t.kind == Tok::KwForall;
        advance();
        const std::string name(expect(Tok::Ident).text);
        expect(Tok::Dot);
        Formula body = unary();
        return universal ? Formula::forall(name, body) : Formula::exists(name, body);
      }
      default:
        return atom();
    }
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        advance();
        return Formula::var(std::string(t.text));
      case Tok::KwFalse:
        advance();
        return Formula::bot();
      case Tok::KwTrue:
        advance();
        return Formula::top();
      case Tok::LParen: {
        advance();
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      }
      default:
        unexpected({"formula"});
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Level level_;
};

}  // namespace

Formula parse_formula(std::string_view text, Level level) {
  Parser p(text, level);
  Formula f = p.formula();
  p.finish();
  return f;
}

Sequent parse_sequent(std::string_view text, Level level) {
  Parser p(text, level);
  return p.sequent();
}

std::vector<std::string> parse_variable_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(start, comma - start);
    const std::size_t offset = start;
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (!is_identifier(item))
      throw ParseError({offset, comma}, "expected a variable name", {"identifier"});
    out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

bool is_identifier(std::string_view name) {
  if (name.empty() || !ident_start(name.front())) return false;
  if (!std::all_of(name.begin(), name.end(), ident_char)) return false;
  return !keyword(name).has_value();
}

}  // namespace uip
