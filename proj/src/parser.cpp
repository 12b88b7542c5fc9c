#include "grouprank/parser.hpp"

#include <cctype>

namespace grouprank {

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseFailure(pos, msg); }

  void skip_ws() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool eat(std::string_view s) {
    skip_ws();
    if (text.substr(pos, s.size()) == s) {
      pos += s.size();
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    if (!eat(c)) fail("expected '" + std::string(1, c) + "' " + what);
  }

  bool peek_ident_char() {
    skip_ws();
    return pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_');
  }

  std::string ident() {
    skip_ws();
    if (!peek_ident_char()) fail("expected an identifier");
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return std::string(text.substr(start, pos - start));
  }

  long long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) fail("expected an integer");
    return std::stoll(std::string(text.substr(start, pos - start)));
  }

  // quantifier keyword: "A" or "E" followed by a variable and "."
  bool at_quantifier() {
    skip_ws();
    if (pos >= text.size() || (text[pos] != 'A' && text[pos] != 'E')) return false;
    size_t after = pos + 1;
    if (after < text.size() &&
        (std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '_'))
      return false;  // part of a longer identifier
    return true;
  }

  FormulaPtr formula() {
    if (at_quantifier()) {
      char q = text[pos];
      ++pos;
      std::string v = ident();
      if (v == "A" || v == "E") fail("'A' and 'E' are reserved quantifier keywords");
      expect('.', "after the quantified variable");
      FormulaPtr body = formula();
      return q == 'E' ? Formula::exists(std::move(v), std::move(body))
                      : Formula::forall(std::move(v), std::move(body));
    }
    return implication();
  }

  FormulaPtr implication() {
    FormulaPtr lhs = disjunction();
    skip_ws();
    if (eat("->")) {
      FormulaPtr rhs = at_quantifier() ? formula() : implication();
      return Formula::implies(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  FormulaPtr disjunction() {
    FormulaPtr f = conjunction();
    while (true) {
      skip_ws();
      if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') break;
      if (eat('|'))
        f = Formula::disj(std::move(f), conjunction());
      else
        break;
    }
    return f;
  }

  FormulaPtr conjunction() {
    FormulaPtr f = negation();
    while (eat('&')) f = Formula::conj(std::move(f), negation());
    return f;
  }

  FormulaPtr negation() {
    if (eat('!')) return Formula::negation(negation());
    skip_ws();
    if (pos < text.size() && text[pos] == '(') {
      // "(" may open a parenthesized formula or a parenthesized term;
      // decide by trying the formula first
      size_t save = pos;
      ++pos;
      try {
        FormulaPtr inner = formula();
        expect(')', "to close the parenthesized formula");
        skip_ws();
        // an equation may still follow if the parenthesized part was a term
        return inner;
      } catch (const ParseFailure&) {
        pos = save;
      }
    }
    return atom();
  }

  FormulaPtr atom() {
    TermPtr lhs = term();
    expect('=', "in an equation");
    TermPtr rhs = term();
    return Formula::eq(std::move(lhs), std::move(rhs));
  }

  TermPtr term() {
    TermPtr t = factor();
    while (eat('*')) t = Term::mul(std::move(t), factor());
    return t;
  }

  TermPtr factor() {
    TermPtr base = term_base();
    skip_ws();
    while (pos < text.size() && text[pos] == '^') {
      ++pos;
      long long k = integer();
      base = Term::power(std::move(base), k);
      skip_ws();
    }
    return base;
  }

  TermPtr term_base() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input in a term");
    char c = text[pos];
    if (c == '1') {
      ++pos;
      return Term::one();
    }
    if (c == '(') {
      ++pos;
      TermPtr t = term();
      expect(')', "to close the parenthesized term");
      return t;
    }
    if (c == '[') {
      ++pos;
      TermPtr a = term();
      expect(',', "between commutator arguments");
      TermPtr b = term();
      expect(']', "to close the commutator");
      return Term::commutator(std::move(a), std::move(b));
    }
    std::string v = ident();
    if (v == "A" || v == "E") fail("'A' and 'E' are reserved quantifier keywords");
    return Term::var(std::move(v));
  }
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  Parser p{text};
  FormulaPtr f = p.formula();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input after the sentence");
  return f;
}

ParsedFile parse_formula_file(std::string_view text) {
  ParsedFile out;
  size_t i = 0;
  while (i < text.size()) {
    size_t line_end = text.find('\n', i);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(i, line_end - i);
    size_t h = line.find_first_not_of(" \t");
    if (h != std::string_view::npos && line[h] == '#') {
      std::string_view body = line.substr(h + 1);
      size_t s = body.find_first_not_of(" \t");
      if (s != std::string_view::npos && body.substr(s).starts_with("schema:")) {
        std::string_view ann = body.substr(s + 7);
        size_t a = ann.find_first_not_of(" \t");
        if (a != std::string_view::npos) {
          size_t b = ann.find_last_not_of(" \t\r");
          out.schema_annotation = std::string(ann.substr(a, b - a + 1));
        }
      }
    }
    i = line_end + 1;
  }
  out.formula = parse_formula(text);
  return out;
}

}  // namespace grouprank
