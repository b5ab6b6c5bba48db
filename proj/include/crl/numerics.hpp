#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

#include "crl/forms.hpp"
#include "crl/rational.hpp"

namespace crl {

/// Univariate polynomial, ascending coefficients, trailing zeros trimmed (the
/// zero polynomial has no coefficients).
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  const T& operator[](int i) const { return c_[i]; }
  const T& leading() const { return c_.back(); }

  T operator()(const T& x) const {
    T acc(0);
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    std::vector<T> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * T(i));
    return Poly(std::move(d));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

using UnivariatePoly = Poly<double>;
using RationalPoly = Poly<Rational>;

/// Dehomogenisation of a binary form at y = 1, p(s) = f(s, 1). The number of
/// roots at (1:0) equals f.degree() - p.degree().
template <class T>
Poly<T> dehomogenize(const BasicForm<T>& f) {
  return Poly<T>(f.coeffs());
}

RationalPoly to_rational(const UnivariatePoly& p);
/// Rounds each coefficient to a multiple of 1e-12 times a power-of-two scale
/// of the largest coefficient.
RationalPoly rationalize(const UnivariatePoly& p, double granularity = 1e-12);

/// Quotient and remainder over the rationals.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);
RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);
/// p / gcd(p, p'), made monic.
RationalPoly square_free_part(const RationalPoly& p);

/// Extended-real interval endpoint for Sturm counts.
struct ExtendedReal {
  enum class Kind { NegInf, Finite, PosInf } kind = Kind::Finite;
  Rational value;

  static ExtendedReal neg_inf() { return {Kind::NegInf, Rational(0)}; }
  static ExtendedReal pos_inf() { return {Kind::PosInf, Rational(0)}; }
  static ExtendedReal finite(Rational v) { return {Kind::Finite, std::move(v)}; }
};

/// Exact number of distinct real roots of p in (a, b]. The square-free part
/// is taken internally.
int sturm_count(const RationalPoly& p, const ExtendedReal& a, const ExtendedReal& b);
/// Convenience: distinct real roots on the whole line.
int sturm_count(const RationalPoly& p);

struct RealRoot {
  double value = 0.0;
  int multiplicity = 1;
};

/// All real roots with multiplicities, ascending. Float roots come from the
/// companion matrix and are polished by Newton; the number of distinct roots
/// is certified against an exact Sturm count of `exact` (when given) or of a
/// 1e-12 rationalisation of p. Throws CertificationFailure on disagreement.
std::vector<RealRoot> real_roots(const UnivariatePoly& p, double tol = 1e-10,
                                 const std::optional<RationalPoly>& exact = std::nullopt);

/// Real projective roots of a binary form, with multiplicities, certified
/// against an exact Sturm count (plus the root at infinity).
struct RealProjectiveRoot {
  ProjectivePoint point;
  int multiplicity = 1;
};
std::vector<RealProjectiveRoot> real_projective_roots(const BinaryForm& f, const std::optional<RationalForm>& exact,
                                                      double cluster_tol = 1e-6);
/// Exact count of distinct real projective roots.
int real_projective_root_count(const RationalForm& f);

/// Classical discriminant (-1)^(n(n-1)/2) / lc * Res(p, p'); deg p >= 2.
double discriminant(const UnivariatePoly& p);
Rational discriminant(const RationalPoly& p);

/// Discriminant of a binary form of formal degree m >= 2, defined so that it
/// equals the univariate discriminant of f(s,1) when the x^m coefficient is
/// nonzero, and stays a polynomial in the coefficients when it vanishes.
double form_discriminant(const BinaryForm& f);
Rational form_discriminant(const RationalForm& f);

/// Sylvester resultant of two polynomials with given formal degrees.
double resultant(const std::vector<double>& a, const std::vector<double>& b);
Rational resultant(const std::vector<Rational>& a, const std::vector<Rational>& b);

/// Unit row vector v with |v M| <= tol |M| (|M| = max |entry|), taken from the
/// smallest singular direction; nullopt when no such direction exists.
/// Throws DegenerateKernel when a second direction also passes.
std::optional<Eigen::VectorXd> left_kernel(const Eigen::MatrixXd& m, double tol = 1e-8);

enum class StationaryClass { Min, Max, Saddle, Undecided };

std::string_view to_string(StationaryClass c);

/// Sign pattern of the spectrum of a symmetric matrix. Eigenvalues within
/// singular_tol * max|H_ij| of zero give Undecided.
StationaryClass classify_stationary(const Eigen::MatrixXd& hessian, double singular_tol = 1e-6);

/// Eigenvalues of the symmetric part of H, ascending.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& hessian);

/// Determinant by fraction-free elimination over the rationals.
Rational determinant(std::vector<std::vector<Rational>> m);

}  // namespace crl
