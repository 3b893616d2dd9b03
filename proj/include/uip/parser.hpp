#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uip/formula.hpp"
#include "uip/sequent.hpp"

namespace uip {

/// Byte offsets [start, end) into the parsed text.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, const std::string& message, std::vector<std::string> expected = {});

  [[nodiscard]] const SourceSpan& span() const noexcept { return span_; }
  [[nodiscard]] const std::string& message() const noexcept { return message_; }
  [[nodiscard]] const std::vector<std::string>& expected() const noexcept { return expected_; }

  /// Multi-line diagnostic with the offending span underlined.
  [[nodiscard]] std::string annotate(std::string_view text) const;

 private:
  SourceSpan span_;
  std::string message_;
  std::vector<std::string> expected_;
};

/// L1 is the quantifier-free language, L2 adds `forall x.` and `exists x.`.
enum class Level { L1, L2 };

/// Throws ParseError.
Formula parse_formula(std::string_view text, Level level = Level::L1);

/// `F1, F2 => G1, G2`; either side may be empty. Throws ParseError.
Sequent parse_sequent(std::string_view text, Level level = Level::L1);

/// Comma-separated identifiers, e.g. the value of --forget.
std::vector<std::string> parse_variable_list(std::string_view text);

/// True if `name` lexes as a single identifier and is not a keyword.
bool is_identifier(std::string_view name);

}  // namespace uip
