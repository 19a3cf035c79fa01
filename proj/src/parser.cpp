#include "stokeskit/parser.hpp"

#include <cctype>

#include "stokeskit/errors.hpp"

namespace stokeskit {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
      if (i < s.size() && s[i] == 'i' &&
          !(i + 1 < s.size() && (std::isalnum(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '_')))
        ++i;
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Bindings& bindings) : tokens_(tokenize(text)), bindings_(bindings) {}

  DiffOperator parse() {
    DiffOperator r = expr();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return r;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  DiffOperator expr() {
    DiffOperator acc = term();
    while (true) {
      if (accept(Tok::Plus)) {
        acc += term();
      } else if (accept(Tok::Minus)) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  DiffOperator term() {
    DiffOperator acc = unary();
    while (true) {
      if (accept(Tok::Star)) {
        acc = acc * unary();
      } else if (peek().kind == Tok::Slash) {
        const std::size_t at = next().pos;
        const DiffOperator d = unary();
        acc = acc * DiffOperator(invert(d, at));
      } else {
        return acc;
      }
    }
  }

  DiffOperator unary() {
    if (accept(Tok::Minus)) return -unary();
    if (accept(Tok::Plus)) return unary();
    return power();
  }

  DiffOperator power() {
    const DiffOperator b = base();
    if (peek().kind != Tok::Caret) return b;
    const std::size_t at = next().pos;
    const long e = exponent();
    if (e >= 0) return stokeskit::pow(b, static_cast<unsigned>(e));
    return stokeskit::pow(DiffOperator(invert(b, at)), static_cast<unsigned>(-e));
  }

  long exponent() {
    const bool paren = accept(Tok::LParen);
    const bool negative = accept(Tok::Minus);
    const Token& t = next();
    if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(t.kind == Tok::End ? "unexpected end of input, expected an exponent" : "expected a natural exponent", t.pos);
    if (t.text.size() > 6) throw ParseError("exponent too large", t.pos);
    long e = std::stol(t.text);
    if (paren && !accept(Tok::RParen)) throw ParseError("expected ')'", peek().pos);
    return negative ? -e : e;
  }

  DiffOperator base() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number: return DiffOperator(RationalFunc(number(t)));
      case Tok::Ident:
        if (t.text == "delta") return DiffOperator::delta();
        if (t.text == "z") return DiffOperator::z();
        if (auto it = bindings_.find(t.text); it != bindings_.end()) return DiffOperator(RationalFunc(it->second));
        if (t.text == "i") return DiffOperator(RationalFunc(GaussianRational::i()));
        throw DomainError("unbound parameter '" + t.text + "' at position " + std::to_string(t.pos));
      case Tok::LParen: {
        DiffOperator inner = expr();
        if (!accept(Tok::RParen)) {
          throw ParseError(peek().kind == Tok::End ? "unexpected end of input, expected ')'" : "expected ')'", peek().pos);
        }
        return inner;
      }
      case Tok::End: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  static GaussianRational number(const Token& t) {
    std::string body = t.text;
    const bool imaginary = !body.empty() && body.back() == 'i';
    if (imaginary) body.pop_back();
    Rational v;
    try {
      v = parse_rational(body);
    } catch (const ParseError&) {
      throw ParseError("malformed number '" + t.text + "'", t.pos);
    }
    return imaginary ? GaussianRational(0, v) : GaussianRational(v);
  }

  static RationalFunc invert(const DiffOperator& d, std::size_t at) {
    if (d.degree() > 0) throw DomainError("cannot divide by an operator containing delta (position " + std::to_string(at) + ")");
    if (d.is_zero()) throw DomainError("division by zero rational function (position " + std::to_string(at) + ")");
    return RationalFunc(1) / d.coeff(0);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Bindings& bindings_;
};

}  // namespace

DiffOperator parse_operator(std::string_view text, const Bindings& bindings) {
  return Parser(text, bindings).parse();
}

GaussianRational parse_scalar(std::string_view text, const Bindings& bindings) {
  const DiffOperator op = parse_operator(text, bindings);
  if (op.is_zero()) return GaussianRational(0);
  if (op.degree() > 0 || !op.coeff(0).is_constant())
    throw DomainError("expected a constant, got '" + std::string(text) + "'");
  return op.coeff(0).constant_value();
}

std::vector<GaussianRational> parse_scalar_list(std::string_view text, const Bindings& bindings) {
  std::vector<GaussianRational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (item.find_first_not_of(" \t") == std::string_view::npos) throw DomainError("empty entry in list '" + std::string(text) + "'");
    out.push_back(parse_scalar(item, bindings));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace stokeskit
