#include "stokeskit/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "stokeskit/errors.hpp"

namespace stokeskit {

namespace {

Integer parse_digits(std::string_view s, std::size_t offset) {
  if (s.empty()) throw ParseError("expected digits", offset);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw ParseError("unexpected character", offset + k);
  }
  return Integer(std::string(s), 10);
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  const std::string_view body = text.substr(pos);
  if (body.empty()) throw ParseError("expected a number", pos);

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_digits(body.substr(0, slash), pos);
    const Integer den = parse_digits(body.substr(slash + 1), pos + slash + 1);
    if (den == 0) throw DomainError("division by zero in rational literal");
    value = Rational(num, den);
    value.canonicalize();
  } else {
    std::string_view mantissa = body;
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = body.substr(0, e);
      std::string_view exp_text = body.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
        exp_negative = exp_text[0] == '-';
        exp_text.remove_prefix(1);
      }
      exponent = parse_digits(exp_text, pos + e + 1).get_si();
      if (exp_negative) exponent = -exponent;
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      const std::string_view int_part = mantissa.substr(0, dot);
      const std::string_view frac_part = mantissa.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) throw ParseError("expected digits", pos);
      if (!int_part.empty()) parse_digits(int_part, pos);
      if (!frac_part.empty()) parse_digits(frac_part, pos + dot + 1);
      digits = std::string(int_part) + std::string(frac_part);
      frac_len = static_cast<long>(frac_part.size());
    } else {
      parse_digits(mantissa, pos);
      digits = std::string(mantissa);
    }
    Rational v(Integer(digits.empty() ? std::string("0") : digits, 10));
    const long shift = exponent - frac_len;
    if (shift >= 0) {
      v *= pow10(static_cast<unsigned long>(shift));
    } else {
      v /= pow10(static_cast<unsigned long>(-shift));
    }
    v.canonicalize();
    value = v;
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_str();
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational rationalize(double x, long max_den) {
  // Continued-fraction convergents h/k of x.
  long double h_prev = 1, h = std::floor(static_cast<long double>(x));
  long double k_prev = 0, k = 1;
  long double frac = static_cast<long double>(x) - h;
  while (frac > 1e-18L) {
    const long double inv = 1.0L / frac;
    const long double a = std::floor(inv);
    const long double h_next = a * h + h_prev;
    const long double k_next = a * k + k_prev;
    if (k_next > static_cast<long double>(max_den)) break;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    frac = inv - a;
  }
  Rational r(Integer(static_cast<long>(h)), Integer(static_cast<long>(k)));
  r.canonicalize();
  return r;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  Rational c(r);
  c.canonicalize();
  if (!mpz_perfect_square_p(c.get_num_mpz_t()) || !mpz_perfect_square_p(c.get_den_mpz_t())) return std::nullopt;
  Integer num, den;
  mpz_sqrt(num.get_mpz_t(), c.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), c.get_den_mpz_t());
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace stokeskit
