#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "crl/error.hpp"
#include "crl/partition.hpp"
#include "crl/rational.hpp"

namespace crl {

/// Binary form f(x,y) = sum_i c_i x^i y^(n-i) of degree n.
///
/// Storage is the monomial basis c_0..c_n (ascending x-degree). The scaled
/// basis a_i = c_i / C(n,i) used by the apolarity pairing is a computed view.
/// The degree is fixed at construction; a form whose coefficients all vanish
/// keeps its degree and reports is_zero().
template <class T>
class BasicForm {
 public:
  BasicForm() : coeffs_(1, T(0)) {}

  explicit BasicForm(std::vector<T> monomial_coeffs) : coeffs_(std::move(monomial_coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorKind::DegreeMismatch, "a form needs at least one coefficient");
  }

  static BasicForm zero(int n) { return BasicForm(std::vector<T>(static_cast<std::size_t>(n) + 1, T(0))); }

  static BasicForm monomial(int n, int i, T c = T(1)) {
    BasicForm f = zero(n);
    f.coeffs_.at(static_cast<std::size_t>(i)) = c;
    return f;
  }

  static BasicForm from_scaled(std::span<const T> scaled) {
    const int n = static_cast<int>(scaled.size()) - 1;
    std::vector<T> c(scaled.begin(), scaled.end());
    for (int i = 0; i <= n; ++i) c[i] *= binomial<T>(n, i);
    return BasicForm(std::move(c));
  }

  /// (s x + t y)^m
  static BasicForm linear_power(const T& s, const T& t, int m) {
    std::vector<T> c(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) c[i] = binomial<T>(m, i) * ipow(s, i) * ipow(t, m - i);
    return BasicForm(std::move(c));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& operator[](int i) const { return coeffs_[i]; }
  T& operator[](int i) { return coeffs_[i]; }

  std::vector<T> scaled() const {
    const int n = degree();
    std::vector<T> a(coeffs_);
    for (int i = 0; i <= n; ++i) a[i] /= binomial<T>(n, i);
    return a;
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const T& c) { return c == T(0); });
  }

  template <class S>
  S operator()(const S& x, const S& y) const {
    const int n = degree();
    S sum = S(0);
    for (int i = 0; i <= n; ++i) {
      if constexpr (std::is_same_v<S, T>) {
        sum += coeffs_[i] * powi(x, i) * powi(y, n - i);
      } else {
        sum += S(to_scalar(coeffs_[i])) * powi(x, i) * powi(y, n - i);
      }
    }
    return sum;
  }

  BasicForm& operator+=(const BasicForm& o) {
    check_same_degree(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  BasicForm& operator-=(const BasicForm& o) {
    check_same_degree(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  BasicForm& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
  friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }
  friend BasicForm operator-(BasicForm a) { return a *= T(-1); }
  friend BasicForm operator*(BasicForm a, const T& s) { return a *= s; }
  friend BasicForm operator*(const T& s, BasicForm a) { return a *= s; }

  /// Product of forms; degrees add.
  friend BasicForm operator*(const BasicForm& a, const BasicForm& b) {
    std::vector<T> c(static_cast<std::size_t>(a.degree() + b.degree()) + 1, T(0));
    for (int i = 0; i <= a.degree(); ++i) {
      if (a.coeffs_[i] == T(0)) continue;
      for (int j = 0; j <= b.degree(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return BasicForm(std::move(c));
  }

  friend bool operator==(const BasicForm& a, const BasicForm& b) { return a.coeffs_ == b.coeffs_; }

  template <class U>
  BasicForm<U> cast() const {
    std::vector<U> c;
    c.reserve(coeffs_.size());
    for (const auto& v : coeffs_) {
      if constexpr (std::is_same_v<U, double>) {
        c.push_back(to_double(v));
      } else {
        c.push_back(U(v));
      }
    }
    return BasicForm<U>(std::move(c));
  }

 private:
  void check_same_degree(const BasicForm& o) const {
    if (o.degree() != degree()) throw Error(ErrorKind::DegreeMismatch, "forms of different degree");
  }

  static T ipow(const T& b, int e) {
    T r(1);
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  }

  template <class S>
  static S powi(const S& b, int e) {
    S r(1);
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  }

  static auto to_scalar(const T& v) {
    if constexpr (std::is_same_v<T, Rational>) {
      return v.get_d();
    } else {
      return v;
    }
  }

  std::vector<T> coeffs_;
};

using BinaryForm = BasicForm<double>;
using RationalForm = BasicForm<Rational>;

/// Point of P^1 normalised so that max(|s|,|t|) = 1 and the first nonzero
/// coordinate is positive.
class ProjectivePoint {
 public:
  ProjectivePoint(double s, double t);
  /// (s : 1)
  static ProjectivePoint affine(double s) { return ProjectivePoint(s, 1.0); }

  double s() const { return s_; }
  double t() const { return t_; }
  /// s/t; infinite at (1:0).
  double affine_value() const;
  /// Angle in [0, pi) of the line through (s,t).
  double angle() const;
  /// sin of the angle between the two lines.
  double distance(const ProjectivePoint& o) const;

 private:
  double s_;
  double t_;
};

// ---------------------------------------------------------------------------
// Apolarity and the L^(k) operators. Templates so that identities can be
// checked exactly over the rationals.

/// <f,g> = sum C(n,i) a_i b_i = sum c_i d_i / C(n,i).
template <class T>
T apolar_pairing(const BasicForm<T>& f, const BasicForm<T>& g) {
  if (f.degree() != g.degree()) throw Error(ErrorKind::DegreeMismatch, "apolar_pairing needs equal degrees");
  const int n = f.degree();
  T sum(0);
  for (int i = 0; i <= n; ++i) sum += f[i] * g[i] / binomial<T>(n, i);
  return sum;
}

template <class T>
T bombieri_norm_sq(const BasicForm<T>& f) {
  return apolar_pairing(f, f);
}

/// L^(k)(f) through the binomial-sum coordinate formula
///   C(n,j) b_j = sum_i (-1)^i C(k,i) C(n-k, i+j-k) a_(2i+j-k)
/// in scaled coordinates. Normalised so that L^(1) = (1/n)(x d/dy - y d/dx).
template <class T>
BasicForm<T> apply_L(int k, const BasicForm<T>& f) {
  const int n = f.degree();
  if (k < 0 || k > n) throw Error(ErrorKind::IndexError, "L^(k) needs 0 <= k <= n");
  const std::vector<T> a = f.scaled();
  std::vector<T> c(static_cast<std::size_t>(n) + 1, T(0));
  for (int j = 0; j <= n; ++j) {
    T acc(0);
    for (int i = std::max(0, k - j); i <= std::min(k, n - j); ++i) {
      const int idx = 2 * i + j - k;
      if (idx < 0 || idx > n) continue;
      T term = binomial<T>(k, i) * binomial<T>(n - k, i + j - k) * a[idx];
      if (i % 2 == 1) acc -= term;
      else acc += term;
    }
    c[j] = acc;  // this is C(n,j) b_j, i.e. the monomial coefficient
  }
  return BasicForm<T>(std::move(c));
}

/// f(a x + b y, c x + d y).
template <class T>
BasicForm<T> substitute_linear(const BasicForm<T>& f, const T& a, const T& b, const T& c, const T& d) {
  const int n = f.degree();
  BasicForm<T> out = BasicForm<T>::zero(n);
  for (int i = 0; i <= n; ++i) {
    if (f[i] == T(0)) continue;
    BasicForm<T> term = BasicForm<T>::linear_power(a, b, i);  // (a x + b y)^i as form of degree i in (x,y)
    // linear_power(s,t,m) = (s x + t y)^m, coefficient of x^j is C(m,j) s^j t^(m-j).
    term = term * BasicForm<T>::linear_power(c, d, n - i);
    term *= f[i];
    out += term;
  }
  return out;
}

/// f(-y, x)
template <class T>
BasicForm<T> rotate_quarter(const BasicForm<T>& f) {
  return substitute_linear(f, T(0), T(-1), T(1), T(0));
}

/// op(d/dx, d/dy) applied to f; op = sum o_j u^j v^(m-j).
template <class T>
BasicForm<T> apply_apolarity_operator(const BasicForm<T>& op, const BasicForm<T>& f) {
  const int m = op.degree();
  const int n = f.degree();
  if (m > n) throw Error(ErrorKind::DegreeMismatch, "operator degree exceeds form degree");
  BasicForm<T> out = BasicForm<T>::zero(n - m);
  for (int j = 0; j <= m; ++j) {
    if (op[j] == T(0)) continue;
    // d^j/dx^j d^(m-j)/dy^(m-j) of x^i y^(n-i)
    for (int i = j; i <= n; ++i) {
      const int yexp = n - i;
      if (yexp < m - j || f[i] == T(0)) continue;
      T factor(1);
      for (int r = 0; r < j; ++r) factor *= T(i - r);
      for (int r = 0; r < m - j; ++r) factor *= T(yexp - r);
      out[i - j] += op[j] * f[i] * factor;
    }
  }
  return out;
}

/// d f / dx and d f / dy as forms of degree n-1 (degree 0 input gives zero
/// form of degree 0).
template <class T>
BasicForm<T> partial_x(const BasicForm<T>& f) {
  const int n = f.degree();
  if (n == 0) return BasicForm<T>::zero(0);
  BasicForm<T> out = BasicForm<T>::zero(n - 1);
  for (int i = 1; i <= n; ++i) out[i - 1] = f[i] * T(i);
  return out;
}

template <class T>
BasicForm<T> partial_y(const BasicForm<T>& f) {
  const int n = f.degree();
  if (n == 0) return BasicForm<T>::zero(0);
  BasicForm<T> out = BasicForm<T>::zero(n - 1);
  for (int i = 0; i < n; ++i) out[i] = f[i] * T(n - i);
  return out;
}

enum class SpecialKind { Cos, Sin };

/// h_n = Re (x + i y)^n (Cos) or k_n = Im (x + i y)^n (Sin), integer
/// coefficients; both are invariant under rotation by 2 pi / n.
template <class T = double>
BasicForm<T> special_form(int n, SpecialKind kind) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "special_form needs n >= 1");
  BasicForm<T> f = BasicForm<T>::zero(n);
  // (x + i y)^n = sum_m C(n,m) x^(n-m) (i y)^m
  for (int m = 0; m <= n; ++m) {
    const bool even = m % 2 == 0;
    if ((kind == SpecialKind::Cos) != even) continue;
    const int q = even ? m / 2 : (m - 1) / 2;
    T c = binomial<T>(n, m);
    if (q % 2 == 1) c = -c;
    f[n - m] = c;
  }
  return f;
}

/// Rotation of the plane by angle theta applied to the variables.
BinaryForm rotate(const BinaryForm& f, double theta);

/// Largest absolute coefficient.
double max_abs_coeff(const BinaryForm& f);

/// Parses "c_0,...,c_n". With scaled = true the numbers are a_i and are
/// multiplied by C(n,i).
RationalForm parse_form(const std::string& text, bool scaled);

std::string to_string(const BinaryForm& f, int precision = 6);

// ---------------------------------------------------------------------------
// Numerical root structure.

/// One cluster of (numerically) coincident complex projective roots.
struct RootCluster {
  std::complex<double> s;
  std::complex<double> t;  // normalised: max(|s|,|t|) = 1
  int multiplicity = 1;

  bool is_real(double tol = 1e-7) const;
  /// Real representative; only meaningful when is_real().
  ProjectivePoint real_point() const;
};

/// Clusters of the n complex projective roots of f, including (1:0) when the
/// leading coefficients vanish. A group of roots is merged only when the
/// derivatives up to order m-1 vanish at its centre within cluster_tol
/// (relative to the size of the terms).
std::vector<RootCluster> root_clusters(const BinaryForm& f, double cluster_tol = 1e-6);

/// Partition formed by the root multiplicities. Throws AmbiguousStructure
/// when halving and doubling cluster_tol give different answers, and
/// DegenerateInput for the zero form.
Partition multiplicity_structure(const BinaryForm& f, double cluster_tol = 1e-6);

}  // namespace crl
