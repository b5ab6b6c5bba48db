#pragma once

// Shared helpers for the unit tests: seeded random forms and a naive
// polynomial type used as an independent differentiation oracle.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "crl/forms.hpp"
#include "crl/rational.hpp"

namespace testing_support {

using crl::BinaryForm;
using crl::Rational;
using crl::RationalForm;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

/// Small rationals p/q with |p| <= 9, 1 <= q <= 4.
// mpq_class(a, b) is not reduced on its own
inline Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline Rational random_rational() {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  Rational r(num(rng()), den(rng()));
  r.canonicalize();
  return r;
}

inline RationalForm random_rational_form(int n) {
  std::vector<Rational> c;
  for (int i = 0; i <= n; ++i) c.push_back(random_rational());
  return RationalForm(std::move(c));
}

inline BinaryForm random_form(int n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<double> c;
  for (int i = 0; i <= n; ++i) c.push_back(g(rng()));
  return BinaryForm(std::move(c));
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

inline int uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng());
}

/// (t x - s y) as a degree-1 form.
inline BinaryForm linear_factor(double s, double t) { return BinaryForm({-s, t}); }

inline BinaryForm power(const BinaryForm& l, int e) {
  BinaryForm out({1.0});
  for (int i = 0; i < e; ++i) out = out * l;
  return out;
}

/// Bivariate polynomial as a map from (x-degree, y-degree) to coefficient.
/// Deliberately independent of the library's form arithmetic.
struct Naive {
  std::map<std::pair<int, int>, Rational> terms;

  static Naive from(const RationalForm& f) {
    Naive p;
    const int n = f.degree();
    for (int i = 0; i <= n; ++i) {
      if (f[i] != 0) p.terms[{i, n - i}] = f[i];
    }
    return p;
  }

  Naive dx() const {
    Naive p;
    for (const auto& [e, c] : terms) {
      if (e.first > 0) p.terms[{e.first - 1, e.second}] += c * e.first;
    }
    return p.clean();
  }
  Naive dy() const {
    Naive p;
    for (const auto& [e, c] : terms) {
      if (e.second > 0) p.terms[{e.first, e.second - 1}] += c * e.second;
    }
    return p.clean();
  }
  Naive times_x() const {
    Naive p;
    for (const auto& [e, c] : terms) p.terms[{e.first + 1, e.second}] = c;
    return p;
  }
  Naive times_y() const {
    Naive p;
    for (const auto& [e, c] : terms) p.terms[{e.first, e.second + 1}] = c;
    return p;
  }
  Naive operator-(const Naive& o) const {
    Naive p = *this;
    for (const auto& [e, c] : o.terms) p.terms[e] -= c;
    return p.clean();
  }
  Naive operator+(const Naive& o) const {
    Naive p = *this;
    for (const auto& [e, c] : o.terms) p.terms[e] += c;
    return p.clean();
  }
  Naive scaled(const Rational& s) const {
    Naive p = *this;
    for (auto& [e, c] : p.terms) c *= s;
    return p.clean();
  }
  Naive clean() const {
    Naive p;
    for (const auto& [e, c] : terms) {
      if (c != 0) p.terms[e] = c;
    }
    return p;
  }

  /// Apply op(d/dx, d/dy) where op = sum o_j u^j v^(m-j), term by term.
  static Naive apply(const RationalForm& op, const Naive& f) {
    const int m = op.degree();
    Naive out;
    for (int j = 0; j <= m; ++j) {
      if (op[j] == 0) continue;
      Naive d = f;
      for (int r = 0; r < j; ++r) d = d.dx();
      for (int r = 0; r < m - j; ++r) d = d.dy();
      out = out + d.scaled(op[j]);
    }
    return out;
  }

  RationalForm to_form(int n) const {
    RationalForm f = RationalForm::zero(n);
    for (const auto& [e, c] : terms) {
      if (e.first + e.second != n) throw std::logic_error("inhomogeneous naive polynomial");
      f[e.first] = c;
    }
    return f;
  }
};

inline Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

/// Largest coefficient difference after scaling both forms to unit max norm
/// and fixing the sign of the largest coefficient.
inline double projective_diff(const BinaryForm& a, const BinaryForm& b) {
  auto normalise = [](const BinaryForm& f) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
      if (std::abs(f.coeffs()[i]) > std::abs(f.coeffs()[k])) k = i;
    }
    return f * (1.0 / f.coeffs()[k]);
  };
  if (a.degree() != b.degree()) return INFINITY;
  const BinaryForm na = normalise(a);
  const BinaryForm nb = normalise(b);
  double d = 0.0;
  for (int i = 0; i <= a.degree(); ++i) d = std::max(d, std::abs(na[i] - nb[i]));
  return d;
}

}  // namespace testing_support
