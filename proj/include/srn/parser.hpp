#ifndef SRN_PARSER_HPP
#define SRN_PARSER_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "srn/model.hpp"

namespace srn {

struct SourceSpan {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, in bytes
  std::size_t length = 0;
};

enum class ParseErrorKind { Syntax, UnknownSpecies, BadRate, SelfLoop };

std::string to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, SourceSpan span, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  ParseErrorKind kind_;
  SourceSpan span_;
  std::string message_;
};

/// A rate as written: a literal rational or the name of a parameter bound later.
struct RateTerm {
  std::optional<Rational> value;
  std::string symbol;
  SourceSpan span;
};

struct ReactionSource {
  Complex reactant;
  Complex product;
  RateTerm rate;
  SourceSpan span;  // the whole reaction line
};

/// Parsed file before rate parameters are bound.
struct NetworkSource {
  std::vector<std::string> species;
  std::vector<ReactionSource> reactions;
  bool species_declared = false;

  /// Parameter names in first-use order.
  std::vector<std::string> parameters() const;
};

/// Grammar, one item per line:
///   species: A, B, C            (optional, fixes species order)
///   2 A + B -> C @ 1/2          (one rate)
///   0 <-> A @ 1, k              (forward, backward; k is a parameter)
///   # comment
/// Throws ParseError with the span of the first offending token.
NetworkSource parse_source(std::string_view text);

/// Substitutes parameter values. Throws ParseError (BadRate) for an unbound
/// or non-positive parameter.
ReactionNetwork bind(const NetworkSource& source, const std::map<std::string, Rational>& parameters = {});

ReactionNetwork parse(std::string_view text, const std::map<std::string, Rational>& parameters = {});

/// Canonical text: one reaction per line, terms in species order, rates as
/// "p/q" or integers. A species header is emitted only when first appearance
/// would not reproduce the species order.
std::string serialize(const ReactionNetwork& network);
/// Same layout with parameter names kept in place of rates.
std::string serialize(const NetworkSource& source);

std::string format_complex(const Complex& complex, const std::vector<std::string>& species);
std::string format_reaction(const Reaction& reaction, const std::vector<std::string>& species);

}  // namespace srn

#endif  // SRN_PARSER_HPP
