#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace crl {

using Rational = mpq_class;

// Exact value of a finite double.
inline Rational to_rational(double x) {
  Rational r(x);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double x) { return x; }

/// Parses "3", "-7/4", "0.125", "1e-3". Decimal literals are converted exactly
/// (0.1 becomes 1/10, not the nearest double).
Rational parse_rational(const std::string& text);

// C(n, k) as an exact integer; zero outside 0 <= k <= n.
mpz_class binomial_z(int n, int k);
double binomial_d(int n, int k);

template <class T>
T binomial(int n, int k);

template <>
inline Rational binomial<Rational>(int n, int k) {
  return Rational(binomial_z(n, k));
}

template <>
inline double binomial<double>(int n, int k) {
  return binomial_d(n, k);
}

}  // namespace crl
