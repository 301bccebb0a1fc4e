#include "srn/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace srn {

std::string to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::Syntax:
      return "syntax";
    case ParseErrorKind::UnknownSpecies:
      return "unknown-species-policy";
    case ParseErrorKind::BadRate:
      return "bad-rate";
    case ParseErrorKind::SelfLoop:
      return "self-loop";
  }
  return "syntax";
}

namespace {

std::string describe(const SourceSpan& span, const std::string& message) {
  return std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message;
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, SourceSpan span, const std::string& message)
    : std::runtime_error(describe(span, message)), kind_(kind), span_(span), message_(message) {}

std::vector<std::string> NetworkSource::parameters() const {
  std::vector<std::string> names;
  for (const auto& r : reactions)
    if (!r.rate.symbol.empty() && std::find(names.begin(), names.end(), r.rate.symbol) == names.end())
      names.push_back(r.rate.symbol);
  return names;
}

namespace {

enum class Tok { Int, Number, Ident, Plus, Minus, Arrow, BiArrow, At, Comma, Colon, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t column;  // 1-based
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Token> lex(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const std::size_t col = i + 1;
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == '#') {
      break;
    } else if (digit(c)) {
      std::size_t j = i;
      while (j < line.size() && digit(line[j])) ++j;
      Tok type = Tok::Int;
      if (j + 1 < line.size() && (line[j] == '.' || line[j] == '/') && digit(line[j + 1])) {
        type = Tok::Number;
        ++j;
        while (j < line.size() && digit(line[j])) ++j;
      }
      out.push_back({type, std::string(line.substr(i, j - i)), col});
      i = j;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), col});
      i = j;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", col});
      i += 2;
    } else if (c == '<' && line.substr(i, 3) == "<->") {
      out.push_back({Tok::BiArrow, "<->", col});
      i += 3;
    } else if (c == '-') {
      out.push_back({Tok::Minus, "-", col});
      ++i;
    } else if (c == '+') {
      out.push_back({Tok::Plus, "+", col});
      ++i;
    } else if (c == '@') {
      out.push_back({Tok::At, "@", col});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::Comma, ",", col});
      ++i;
    } else if (c == ':') {
      out.push_back({Tok::Colon, ":", col});
      ++i;
    } else {
      std::size_t len = 1;
      // keep a UTF-8 sequence together in the span
      if (static_cast<unsigned char>(c) >= 0x80)
        while (i + len < line.size() && (static_cast<unsigned char>(line[i + len]) & 0xC0) == 0x80) ++len;
      throw ParseError(ParseErrorKind::Syntax, {line_no, col, len},
                       "unexpected character '" + std::string(line.substr(i, len)) + "'");
    }
  }
  out.push_back({Tok::End, "", line.size() + 1});
  return out;
}

using Terms = std::map<std::size_t, std::int64_t>;  // species index -> multiplicity

struct PendingReaction {
  Terms reactant, product;
  RateTerm rate;
  SourceSpan span;
};

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t line_no, NetworkSource& source)
      : toks_(std::move(tokens)), line_(line_no), src_(source) {}

  bool is_header() const {
    return toks_.size() >= 2 && toks_[0].type == Tok::Ident && toks_[0].text == "species" &&
           toks_[1].type == Tok::Colon;
  }

  void parse_header() {
    pos_ = 2;
    std::set<std::string> seen(src_.species.begin(), src_.species.end());
    while (peek().type != Tok::End) {
      const Token& t = peek();
      if (t.type != Tok::Ident) fail(t, "expected a species name");
      if (!seen.insert(t.text).second) fail(t, "species '" + t.text + "' declared twice");
      src_.species.push_back(t.text);
      ++pos_;
      if (peek().type == Tok::Comma) ++pos_;
    }
    src_.species_declared = true;
  }

  std::vector<PendingReaction> parse_reaction() {
    PendingReaction fwd;
    fwd.reactant = parse_complex();
    const Token arrow = peek();
    if (arrow.type != Tok::Arrow && arrow.type != Tok::BiArrow) fail(arrow, "expected '->' or '<->'");
    ++pos_;
    fwd.product = parse_complex();
    const Token at = peek();
    if (at.type != Tok::At) fail(at, "expected '@' followed by the rate");
    ++pos_;
    std::vector<RateTerm> rates{parse_rate()};
    while (peek().type == Tok::Comma) {
      ++pos_;
      rates.push_back(parse_rate());
    }
    if (peek().type != Tok::End) fail(peek(), "unexpected token '" + peek().text + "'");

    const std::size_t wanted = arrow.type == Tok::Arrow ? 1 : 2;
    if (rates.size() != wanted) {
      const auto& last = rates.back().span;
      throw ParseError(ParseErrorKind::BadRate, last,
                       "'" + arrow.text + "' takes " + std::to_string(wanted) + " rate(s), got " +
                           std::to_string(rates.size()));
    }
    const Token& last_tok = toks_[toks_.size() - 2];
    fwd.span = {line_, toks_.front().column, last_tok.column + last_tok.text.size() - toks_.front().column};
    if (fwd.reactant == fwd.product)
      throw ParseError(ParseErrorKind::SelfLoop, fwd.span, "reactant equals product");
    fwd.rate = rates[0];
    std::vector<PendingReaction> out{fwd};
    if (wanted == 2) {
      PendingReaction back{fwd.product, fwd.reactant, rates[1], fwd.span};
      out.push_back(back);
    }
    return out;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg, ParseErrorKind kind = ParseErrorKind::Syntax) const {
    throw ParseError(kind, {line_, t.column, std::max<std::size_t>(t.text.size(), 1)}, msg);
  }

  std::size_t species_id(const Token& t) {
    auto it = std::find(src_.species.begin(), src_.species.end(), t.text);
    if (it != src_.species.end()) return static_cast<std::size_t>(it - src_.species.begin());
    if (src_.species_declared)
      fail(t, "species '" + t.text + "' is not in the species header", ParseErrorKind::UnknownSpecies);
    src_.species.push_back(t.text);
    return src_.species.size() - 1;
  }

  Terms parse_complex() {
    Terms terms;
    const Token& first = peek();
    if (first.type == Tok::Int && first.text == "0" && pos_ + 1 < toks_.size() &&
        toks_[pos_ + 1].type != Tok::Ident) {
      ++pos_;
      return terms;
    }
    while (true) {
      std::int64_t coeff = 1;
      const Token& t = peek();
      if (t.type == Tok::Int) {
        try {
          coeff = std::stoll(t.text);
        } catch (const std::out_of_range&) {
          fail(t, "coefficient out of range");
        }
        if (coeff == 0) fail(t, "coefficient must be positive; write '0' alone for the empty complex");
        ++pos_;
      } else if (t.type == Tok::Number) {
        fail(t, "coefficient must be an integer");
      }
      const Token& name = peek();
      if (name.type != Tok::Ident) fail(name, "expected a species name");
      terms[species_id(name)] += coeff;
      ++pos_;
      if (peek().type != Tok::Plus) break;
      ++pos_;
    }
    return terms;
  }

  RateTerm parse_rate() {
    RateTerm rate;
    const Token start = peek();
    bool negative = false;
    if (start.type == Tok::Minus) {
      negative = true;
      ++pos_;
    }
    const Token& t = peek();
    if (t.type == Tok::Ident && !negative) {
      rate.symbol = t.text;
      rate.span = {line_, t.column, t.text.size()};
      ++pos_;
      return rate;
    }
    if (t.type != Tok::Int && t.type != Tok::Number) fail(t, "expected a rate", ParseErrorKind::BadRate);
    const std::size_t len = t.column + t.text.size() - start.column;
    rate.span = {line_, start.column, len};
    Rational value = parse_rational(t.text);
    if (negative) value = -value;
    if (value <= 0) throw ParseError(ParseErrorKind::BadRate, rate.span, "rate must be positive");
    rate.value = value;
    ++pos_;
    return rate;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
  NetworkSource& src_;
};

Complex to_vector(const Terms& terms, std::size_t d) {
  Complex c(d, 0);
  for (auto [j, n] : terms) c[j] = n;
  return c;
}

}  // namespace

NetworkSource parse_source(std::string_view text) {
  NetworkSource source;
  std::vector<PendingReaction> pending;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    auto tokens = lex(line, line_no);
    if (tokens.size() > 1) {
      LineParser lp(std::move(tokens), line_no, source);
      if (lp.is_header()) {
        if (source.species_declared || !pending.empty())
          throw ParseError(ParseErrorKind::Syntax, {line_no, 1, 7},
                           "species header must appear once, before any reaction");
        lp.parse_header();
      } else {
        for (auto& r : lp.parse_reaction()) pending.push_back(std::move(r));
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (pending.empty() && source.species.empty())
    throw ParseError(ParseErrorKind::Syntax, {line_no == 0 ? 1 : line_no, 1, 0}, "no reactions");

  const std::size_t d = source.species.size();
  for (auto& p : pending)
    source.reactions.push_back({to_vector(p.reactant, d), to_vector(p.product, d), p.rate, p.span});
  return source;
}

ReactionNetwork bind(const NetworkSource& source, const std::map<std::string, Rational>& parameters) {
  std::vector<Reaction> reactions;
  reactions.reserve(source.reactions.size());
  for (const auto& r : source.reactions) {
    Rational rate;
    if (r.rate.value) {
      rate = *r.rate.value;
    } else {
      auto it = parameters.find(r.rate.symbol);
      if (it == parameters.end())
        throw ParseError(ParseErrorKind::BadRate, r.rate.span, "unbound rate parameter '" + r.rate.symbol + "'");
      if (it->second <= 0)
        throw ParseError(ParseErrorKind::BadRate, r.rate.span,
                         "rate parameter '" + r.rate.symbol + "' must be positive");
      rate = it->second;
    }
    reactions.push_back({r.reactant, r.product, rate});
  }
  return ReactionNetwork(source.species, std::move(reactions));
}

ReactionNetwork parse(std::string_view text, const std::map<std::string, Rational>& parameters) {
  return srn::bind(parse_source(text), parameters);
}

std::string format_complex(const Complex& complex, const std::vector<std::string>& species) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t j = 0; j < complex.size(); ++j) {
    if (complex[j] == 0) continue;
    if (any) os << " + ";
    if (complex[j] != 1) os << complex[j] << ' ';
    os << species[j];
    any = true;
  }
  if (!any) return "0";
  return os.str();
}

std::string format_reaction(const Reaction& reaction, const std::vector<std::string>& species) {
  return format_complex(reaction.reactant, species) + " -> " + format_complex(reaction.product, species) +
         " @ " + to_string(reaction.rate);
}

namespace {

std::string serialize_lines(const std::vector<std::string>& species, const std::vector<Complex>& complexes,
                            const std::vector<std::string>& lines) {
  std::vector<std::size_t> order;
  for (const auto& c : complexes)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] > 0 && std::find(order.begin(), order.end(), j) == order.end()) order.push_back(j);
  bool implicit = order.size() == species.size();
  for (std::size_t k = 0; implicit && k < order.size(); ++k) implicit = order[k] == k;

  std::ostringstream os;
  if (!implicit || lines.empty()) {
    os << "species: ";
    for (std::size_t j = 0; j < species.size(); ++j) os << (j ? ", " : "") << species[j];
    os << '\n';
  }
  for (const auto& line : lines) os << line << '\n';
  return os.str();
}

}  // namespace

std::string serialize(const ReactionNetwork& network) {
  std::vector<Complex> complexes;
  std::vector<std::string> lines;
  for (const auto& r : network.reactions()) {
    complexes.push_back(r.reactant);
    complexes.push_back(r.product);
    lines.push_back(format_reaction(r, network.species()));
  }
  return serialize_lines(network.species(), complexes, lines);
}

std::string serialize(const NetworkSource& source) {
  std::vector<Complex> complexes;
  std::vector<std::string> lines;
  for (const auto& r : source.reactions) {
    complexes.push_back(r.reactant);
    complexes.push_back(r.product);
    lines.push_back(format_complex(r.reactant, source.species) + " -> " + format_complex(r.product, source.species) +
                    " @ " + (r.rate.value ? to_string(*r.rate.value) : r.rate.symbol));
  }
  return serialize_lines(source.species, complexes, lines);
}

}  // namespace srn
