#include "crl/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "crl/error.hpp"
#include "internal/roots.hpp"

namespace crl {

RationalPoly to_rational(const UnivariatePoly& p) {
  std::vector<Rational> c;
  c.reserve(p.coeffs().size());
  for (double v : p.coeffs()) c.push_back(crl::to_rational(v));
  return RationalPoly(std::move(c));
}

RationalPoly rationalize(const UnivariatePoly& p, double granularity) {
  double scale = 0.0;
  for (double v : p.coeffs()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return RationalPoly();
  const int e = std::ilogb(scale) + 1;  // 2^e >= scale
  const double steps = std::round(1.0 / granularity);
  const mpz_class denom(steps);
  std::vector<Rational> c;
  for (double v : p.coeffs()) {
    const double unit = std::ldexp(v, -e);  // |unit| < 1
    Rational q(mpz_class(std::round(unit * steps)), denom);
    if (e >= 0) {
      q *= Rational(mpz_class(1) << e);
    } else {
      q /= Rational(mpz_class(1) << -e);
    }
    q.canonicalize();
    c.push_back(q);
  }
  return RationalPoly(std::move(c));
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::NumericalFailure, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RationalPoly(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db) + 1, Rational(0));
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i] == 0) continue;
    Rational q = rem[i] / b.leading();
    quo[i - db] = q;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b[j];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RationalPoly(std::move(quo)), RationalPoly(std::move(rem))};
}

namespace {

RationalPoly monic(const RationalPoly& p) {
  if (p.is_zero()) return p;
  std::vector<Rational> c = p.coeffs();
  const Rational lc = p.leading();
  for (auto& v : c) v /= lc;
  return RationalPoly(std::move(c));
}

// Positive rescaling keeps Sturm sign patterns intact.
RationalPoly positive_normalize(const RationalPoly& p) {
  if (p.is_zero()) return p;
  std::vector<Rational> c = p.coeffs();
  Rational lc = abs(p.leading());
  for (auto& v : c) v /= lc;
  return RationalPoly(std::move(c));
}

int sign(const Rational& r) { return sgn(r); }

int sign_at(const RationalPoly& p, const ExtendedReal& x) {
  if (p.is_zero()) return 0;
  switch (x.kind) {
    case ExtendedReal::Kind::PosInf:
      return sign(p.leading());
    case ExtendedReal::Kind::NegInf:
      return (p.degree() % 2 == 0) ? sign(p.leading()) : -sign(p.leading());
    case ExtendedReal::Kind::Finite:
      break;
  }
  return sign(p(x.value));
}

int variations(const std::vector<RationalPoly>& seq, const ExtendedReal& x) {
  int count = 0;
  int last = 0;
  for (const auto& p : seq) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly x = a;
  RationalPoly y = b;
  while (!y.is_zero()) {
    RationalPoly r = divmod(x, y).second;
    x = std::move(y);
    y = monic(r);
  }
  return monic(x);
}

RationalPoly square_free_part(const RationalPoly& p) {
  if (p.degree() <= 0) return monic(p);
  const RationalPoly g = gcd(p, p.derivative());
  return monic(divmod(p, g).first);
}

int sturm_count(const RationalPoly& p, const ExtendedReal& a, const ExtendedReal& b) {
  if (p.is_zero()) throw Error(ErrorKind::DegenerateInput, "Sturm count of the zero polynomial");
  const RationalPoly sf = square_free_part(p);
  if (sf.degree() <= 0) return 0;
  std::vector<RationalPoly> seq{positive_normalize(sf), positive_normalize(sf.derivative())};
  while (seq.back().degree() > 0) {
    RationalPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    std::vector<Rational> neg = r.coeffs();
    for (auto& v : neg) v = -v;
    seq.push_back(positive_normalize(RationalPoly(std::move(neg))));
  }
  // Distinct roots in (a, b] = V(a) - V(b) for square-free input.
  return variations(seq, a) - variations(seq, b);
}

int sturm_count(const RationalPoly& p) {
  return sturm_count(p, ExtendedReal::neg_inf(), ExtendedReal::pos_inf());
}

int real_projective_root_count(const RationalForm& f) {
  if (f.is_zero()) throw Error(ErrorKind::DegenerateInput, "zero form has no finite root set");
  const RationalPoly p = dehomogenize(f);
  const int at_infinity = p.degree() < f.degree() ? 1 : 0;
  return (p.degree() >= 1 ? sturm_count(p) : 0) + at_infinity;
}

std::vector<RealProjectiveRoot> real_projective_roots(const BinaryForm& f, const std::optional<RationalForm>& exact,
                                                      double cluster_tol) {
  if (f.is_zero()) throw Error(ErrorKind::DegenerateInput, "zero form");
  std::optional<RationalForm> ex = exact;
  if (!ex) {
    const RationalPoly q = rationalize(UnivariatePoly(f.coeffs()));
    std::vector<Rational> c = q.coeffs();
    c.resize(f.coeffs().size(), Rational(0));
    ex = RationalForm(std::move(c));
  }
  const int certified = real_projective_root_count(*ex);

  const std::vector<double>& coeffs = f.coeffs();
  const std::vector<double> reversed(coeffs.rbegin(), coeffs.rend());
  auto collect = [&](double tol) {
    std::vector<RealProjectiveRoot> out;
    for (const RootCluster& c : root_clusters(f, tol)) {
      if (!c.is_real()) continue;
      ProjectivePoint p = c.real_point();
      if (c.multiplicity == 1) {
        // Polish in the chart where the root is bounded.
        if (std::abs(p.s()) <= std::abs(p.t())) {
          p = ProjectivePoint::affine(internal::polish_real_root(coeffs, p.s() / p.t(), 1e-15));
        } else {
          p = ProjectivePoint(1.0, internal::polish_real_root(reversed, p.t() / p.s(), 1e-15));
        }
      }
      out.push_back({p, c.multiplicity});
    }
    return out;
  };

  // Close simple roots of an ill-conditioned form can pass for one multiple
  // root at the requested tolerance; the Sturm count decides, so tighten.
  std::vector<RealProjectiveRoot> out = collect(cluster_tol);
  for (double tol = cluster_tol * 1e-3; static_cast<int>(out.size()) != certified && tol >= 1e-15; tol *= 1e-3) {
    out = collect(tol);
  }
  if (certified != static_cast<int>(out.size())) {
    throw Error(ErrorKind::CertificationFailure, "found " + std::to_string(out.size()) +
                                                     " distinct real roots, Sturm count is " +
                                                     std::to_string(certified));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.point.angle() < b.point.angle(); });
  return out;
}

std::vector<RealRoot> real_roots(const UnivariatePoly& p, double tol, const std::optional<RationalPoly>& exact) {
  if (p.is_zero()) throw Error(ErrorKind::DegenerateInput, "real_roots of the zero polynomial");
  std::vector<RealRoot> out;
  if (p.degree() == 0) return out;
  const BinaryForm f(p.coeffs());
  std::optional<RationalForm> ex;
  const RationalPoly q = exact ? *exact : rationalize(p);
  ex = RationalForm(q.coeffs());
  if (ex->degree() != f.degree()) {
    throw Error(ErrorKind::CertificationFailure, "exact polynomial has a different degree");
  }
  for (const auto& r : real_projective_roots(f, ex)) {
    double v = r.point.affine_value();
    if (r.multiplicity == 1) v = internal::polish_real_root(p.coeffs(), v, tol * 1e-6);
    out.push_back({v, r.multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  return out;
}

// ---------------------------------------------------------------------------
// Resultants and discriminants.

namespace {

template <class T>
std::vector<std::vector<T>> sylvester(const std::vector<T>& a, const std::vector<T>& b) {
  // a, b ascending with formal degrees p = |a|-1, q = |b|-1.
  const int p = static_cast<int>(a.size()) - 1;
  const int q = static_cast<int>(b.size()) - 1;
  const int size = p + q;
  std::vector<std::vector<T>> m(static_cast<std::size_t>(size), std::vector<T>(static_cast<std::size_t>(size), T(0)));
  for (int r = 0; r < q; ++r) {
    for (int j = 0; j <= p; ++j) m[r][r + j] = a[p - j];
  }
  for (int r = 0; r < p; ++r) {
    for (int j = 0; j <= q; ++j) m[q + r][r + j] = b[q - j];
  }
  return m;
}

template <class T>
std::vector<T> derivative_coeffs(const std::vector<T>& c) {
  std::vector<T> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * T(static_cast<int>(i)));
  return d;
}

}  // namespace

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Rational(1);
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

double resultant(const std::vector<double>& a, const std::vector<double>& b) {
  const auto s = sylvester(a, b);
  const int n = static_cast<int>(s.size());
  if (n == 0) return 1.0;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = s[i][j];
  return m.fullPivLu().determinant();
}

Rational resultant(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  return determinant(sylvester(a, b));
}

namespace {

double disc_sign(int n) { return ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double discriminant(const UnivariatePoly& p) {
  if (p.degree() < 2) throw Error(ErrorKind::DegreeMismatch, "discriminant needs degree >= 2");
  const int n = p.degree();
  return disc_sign(n) / p.leading() * resultant(p.coeffs(), derivative_coeffs(p.coeffs()));
}

Rational discriminant(const RationalPoly& p) {
  if (p.degree() < 2) throw Error(ErrorKind::DegreeMismatch, "discriminant needs degree >= 2");
  const int n = p.degree();
  Rational r = resultant(p.coeffs(), derivative_coeffs(p.coeffs())) / p.leading();
  return disc_sign(n) > 0 ? r : Rational(-r);
}

// Res(f_x, f_y) = (-1)^(m(m-1)/2) m^(m-2) Disc(f) for a binary form of degree m.
double form_discriminant(const BinaryForm& f) {
  const int m = f.degree();
  if (m < 2) throw Error(ErrorKind::DegreeMismatch, "discriminant needs degree >= 2");
  const double res = resultant(partial_x(f).coeffs(), partial_y(f).coeffs());
  return disc_sign(m) * res / std::pow(static_cast<double>(m), m - 2);
}

Rational form_discriminant(const RationalForm& f) {
  const int m = f.degree();
  if (m < 2) throw Error(ErrorKind::DegreeMismatch, "discriminant needs degree >= 2");
  Rational res = resultant(partial_x(f).coeffs(), partial_y(f).coeffs());
  Rational scale(1);
  for (int i = 0; i < m - 2; ++i) scale *= m;
  res /= scale;
  return disc_sign(m) > 0 ? res : Rational(-res);
}

// ---------------------------------------------------------------------------

std::optional<Eigen::VectorXd> left_kernel(const Eigen::MatrixXd& m, double tol) {
  const double scale = m.cwiseAbs().maxCoeff();
  const Eigen::Index rows = m.rows();
  if (rows == 0) return std::nullopt;
  if (scale == 0.0) {
    if (rows == 1) return Eigen::VectorXd::Unit(1, 0);
    throw Error(ErrorKind::DegenerateKernel, "zero matrix");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  Eigen::VectorXd sv = Eigen::VectorXd::Zero(rows);
  sv.head(svd.singularValues().size()) = svd.singularValues();
  // Singular values are descending; rows beyond cols contribute zeros.
  const double limit = tol * scale;
  if (sv(rows - 1) > limit) return std::nullopt;
  if (rows >= 2 && sv(rows - 2) <= limit) {
    throw Error(ErrorKind::DegenerateKernel, "left kernel has dimension > 1 at tolerance");
  }
  Eigen::VectorXd v = svd.matrixU().col(rows - 1);
  // Deterministic sign: largest entry positive.
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;
  const double residual = (v.transpose() * m).cwiseAbs().maxCoeff();
  if (residual > limit) {
    throw Error(ErrorKind::NumericalFailure, "left kernel post-check failed");
  }
  return v;
}

std::string_view to_string(StationaryClass c) {
  switch (c) {
    case StationaryClass::Min:
      return "MIN";
    case StationaryClass::Max:
      return "MAX";
    case StationaryClass::Saddle:
      return "SADDLE";
    case StationaryClass::Undecided:
      return "UNDECIDED";
  }
  return "UNDECIDED";
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& hessian) {
  const Eigen::MatrixXd sym = 0.5 * (hessian + hessian.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

StationaryClass classify_stationary(const Eigen::MatrixXd& hessian, double singular_tol) {
  if (hessian.size() == 0) return StationaryClass::Undecided;
  const double scale = hessian.cwiseAbs().maxCoeff();
  if (scale == 0.0) return StationaryClass::Undecided;
  const Eigen::VectorXd ev = symmetric_eigenvalues(hessian);
  const double dead = singular_tol * scale;
  bool pos = false;
  bool neg = false;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= dead) return StationaryClass::Undecided;
    (ev(i) > 0 ? pos : neg) = true;
  }
  if (pos && neg) return StationaryClass::Saddle;
  return pos ? StationaryClass::Min : StationaryClass::Max;
}

}  // namespace crl
