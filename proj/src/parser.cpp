#include <cctype>

#include "fmlim/error.hpp"
#include "fmlim/formula.hpp"

namespace fmlim {

namespace {

enum class Tok { Ident, LParen, RParen, Equal, NotEqual, And, Or, Not, Arrow, Tilde, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t position;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      out.push_back({Tok::Ident, text.substr(start, i - start), start});
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == "!=") {
      out.push_back({Tok::NotEqual, two, i});
      i += 2;
      continue;
    }
    if (two == "->") {
      out.push_back({Tok::Arrow, two, i});
      i += 2;
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '=': kind = Tok::Equal; break;
      case '&': kind = Tok::And; break;
      case '|': kind = Tok::Or; break;
      case '!': kind = Tok::Not; break;
      case '~': kind = Tok::Tilde; break;
      case ',': kind = Tok::Comma; break;
      default: fail(ErrorCode::SyntaxError, "unexpected character '" + std::string(1, c) + "' at position " + std::to_string(i));
    }
    out.push_back({kind, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const Signature& signature) : tokens_(tokenize(text)), signature_(signature) {}

  Formula parse_all() {
    auto phi = formula();
    if (peek().kind != Tok::End) syntax("unexpected '" + peek().text + "'");
    return phi;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void syntax(const std::string& what) const {
    const auto& t = peek();
    fail(ErrorCode::SyntaxError,
         what + (t.kind == Tok::End ? " at end of input" : "") + " (position " + std::to_string(t.position) + ")");
  }
  void expect(Tok kind, const char* what) {
    if (!accept(kind)) syntax(std::string("expected ") + what);
  }
  bool is_keyword(const std::string& s) const {
    return s == "exists" || s == "forall" || s == "true" || s == "false";
  }

  Formula formula() {
    auto lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implication(lhs, formula());
    return lhs;
  }
  Formula disjunction() {
    auto lhs = conjunction();
    while (accept(Tok::Or)) lhs = Formula::disjunction(lhs, conjunction());
    return lhs;
  }
  Formula conjunction() {
    auto lhs = unary();
    while (accept(Tok::And)) lhs = Formula::conjunction(lhs, unary());
    return lhs;
  }
  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    if (accept(Tok::LParen)) {
      auto inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (peek().kind != Tok::Ident) syntax("expected a formula");
    const auto& word = peek().text;
    if (word == "true") {
      ++pos_;
      return Formula::truth();
    }
    if (word == "false") {
      ++pos_;
      return Formula::falsity();
    }
    if (word == "exists" || word == "forall") {
      bool existential = word == "exists";
      ++pos_;
      if (peek().kind != Tok::Ident || is_keyword(peek().text)) syntax("expected a variable after quantifier");
      auto variable = next().text;
      check_variable(variable);
      std::optional<Term> guard;
      if (accept(Tok::Tilde)) guard = term(true);
      auto body = unary();
      return existential ? Formula::exists(variable, body, guard) : Formula::forall(variable, body, guard);
    }
    if (tokens_[pos_ + 1].kind == Tok::LParen && word != signature_.function()) {
      if (!signature_.has_predicate(word)) fail(ErrorCode::UnknownSymbol, "unknown symbol '" + word + "'");
      pos_ += 2;
      auto argument = term();
      if (peek().kind == Tok::Comma) fail(ErrorCode::ArityError, "predicate '" + word + "' is unary");
      expect(Tok::RParen, "')'");
      return Formula::predicate(word, argument);
    }
    auto lhs = term();
    if (accept(Tok::Equal)) return Formula::equal(lhs, term());
    if (accept(Tok::NotEqual)) return Formula::negation(Formula::equal(lhs, term()));
    syntax("expected '=' or '!='");
  }
  // A guard term may be followed directly by a parenthesised body.
  Term term(bool guard = false) {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) syntax("expected a term");
    auto word = next().text;
    if (word == signature_.function()) {
      if (!accept(Tok::LParen)) fail(ErrorCode::ArityError, "function '" + word + "' needs one argument");
      auto inner = term();
      if (peek().kind == Tok::Comma) fail(ErrorCode::ArityError, "function '" + word + "' is unary");
      expect(Tok::RParen, "')'");
      ++inner.iterate;
      return inner;
    }
    if (!guard && peek().kind == Tok::LParen) fail(ErrorCode::UnknownSymbol, "unknown function '" + word + "'");
    check_variable(word);
    return Term{word, 0};
  }
  void check_variable(const std::string& name) const {
    if (signature_.has_predicate(name) || name == signature_.function())
      fail(ErrorCode::ArityError, "symbol '" + name + "' used as a variable");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature& signature_;
};

}  // namespace

Formula parse(const std::string& text, const Signature& signature) { return Parser(text, signature).parse_all(); }

}  // namespace fmlim
