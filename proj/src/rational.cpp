#include "crl/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "crl/error.hpp"

namespace crl {

namespace {

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

[[noreturn]] void bad(const std::string& text, std::size_t col) {
  throw Error(ErrorKind::ParseError, "cannot parse number '" + text + "' at column " + std::to_string(col + 1));
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::size_t b = 0;
  std::size_t e = raw.size();
  while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
  const std::string text = raw.substr(b, e - b);
  if (text.empty()) bad(raw, b);

  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + raw + "'");
    Rational r = num / den;
    r.canonicalize();
    return r;
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) bad(raw, b + i);
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') bad(raw, b + i);
    const std::string exp = text.substr(i + 1);
    if (exp.empty()) bad(raw, b + i);
    std::size_t used = 0;
    long ev = 0;
    try {
      ev = std::stol(exp, &used);
    } catch (const std::exception&) {
      bad(raw, b + i + 1);
    }
    if (used != exp.size()) bad(raw, b + i + 1 + used);
    scale += ev;
  }
  Rational r(mpz_class(digits, 10));
  r *= pow10(scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

mpz_class binomial_z(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

double binomial_d(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace crl
