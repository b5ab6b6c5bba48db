#include "crl/hook_solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crl/error.hpp"

namespace crl {

namespace {

template <class S>
std::vector<S> linear_power_coeffs(S s, S t, int m) {
  // (s x + t y)^m, ascending in x.
  std::vector<S> c(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) {
    S v = S(binomial_d(m, j));
    for (int r = 0; r < j; ++r) v *= s;
    for (int r = 0; r < m - j; ++r) v *= t;
    c[j] = v;
  }
  return c;
}

template <class S, class Matrix>
Matrix evaluate_impl(const HookSystem& sys, S s, S t) {
  const int n = sys.n;
  const int a = sys.a;
  Matrix m = Matrix::Zero(n + 1, n + 1);
  for (int j = 0; j <= n; ++j) m(0, j) = S(sys.h[j]);
  // (t x - s y)^a = (t x + (-s) y)^a
  const auto band_a = linear_power_coeffs<S>(t, -s, a);
  for (int r = 0; r <= n - a; ++r)
    for (int j = 0; j <= a; ++j) m(1 + r, r + j) = band_a[j];
  const int mm = n - a + 2;
  const auto band_b = linear_power_coeffs<S>(s, t, mm);
  for (int r = 0; r < a - 1; ++r)
    for (int j = 0; j <= mm; ++j) m(n - a + 2 + r, r + j) = band_b[j];
  return m;
}

double bombieri(const BinaryForm& f, const BinaryForm& g) { return apolar_pairing(f, g); }

// Linear factor at a root: tx - sy (primal) or sx + ty (dual).
BinaryForm linear_at(const ProjectivePoint& p, bool dual) {
  return dual ? BinaryForm({p.t(), p.s()}) : BinaryForm({-p.s(), p.t()});
}

BinaryForm power(const BinaryForm& l, int p) {
  BinaryForm out({1.0});
  for (int i = 0; i < p; ++i) out = out * l;
  return out;
}

Eigen::MatrixXd whiten(const Eigen::MatrixXd& hess, const Eigen::MatrixXd& metric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (metric + metric.transpose()));
  const Eigen::VectorXd ev = es.eigenvalues();
  if (ev.size() == 0 || ev(0) <= 1e-14 * ev.cwiseAbs().maxCoeff()) {
    return Eigen::MatrixXd::Zero(hess.rows(), hess.cols());  // degenerate chart: no verdict
  }
  const Eigen::MatrixXd w = es.eigenvectors() * ev.cwiseInverse().cwiseSqrt().asDiagonal() *
                            es.eigenvectors().transpose();
  Eigen::MatrixXd out = w * hess * w;
  return 0.5 * (out + out.transpose());
}

}  // namespace

Eigen::MatrixXd HookSystem::evaluate(double s, double t) const {
  return evaluate_impl<double, Eigen::MatrixXd>(*this, s, t);
}

Eigen::MatrixXcd HookSystem::evaluate(std::complex<double> s, std::complex<double> t) const {
  return evaluate_impl<std::complex<double>, Eigen::MatrixXcd>(*this, s, t);
}

HookSystem build_hook_system(const BinaryForm& h, int a) {
  const int n = h.degree();
  if (a < 2 || a > n) throw Error(ErrorKind::IndexError, "hook part a must satisfy 2 <= a <= n");
  return HookSystem{n, a, h};
}

BinaryForm hook_determinant(const HookSystem& sys) {
  const int n = sys.n;
  const int a = sys.a;
  const int deg = (2 * a - 1) * n - 2 * (a - 1) * (a - 1);
  const int count = deg + 1;
  std::vector<std::complex<double>> values(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const std::complex<double> w = std::polar(1.0, 2.0 * std::numbers::pi * j / count);
    values[j] = sys.evaluate(w, std::complex<double>(1.0)).partialPivLu().determinant();
  }
  std::vector<double> c(static_cast<std::size_t>(count));
  double re_max = 0.0;
  double im_max = 0.0;
  for (int k = 0; k < count; ++k) {
    std::complex<double> acc(0.0);
    for (int j = 0; j < count; ++j) {
      acc += values[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(j) * k) % count) / count);
    }
    acc /= static_cast<double>(count);
    c[k] = acc.real();
    re_max = std::max(re_max, std::abs(acc.real()));
    im_max = std::max(im_max, std::abs(acc.imag()));
  }
  if (im_max > 1e-8 * std::max(re_max, 1e-300) && re_max > 0.0) {
    throw Error(ErrorKind::NumericalFailure, "determinant interpolation is ill-conditioned");
  }
  return BinaryForm(std::move(c));
}

ParityCheck verify_parity_factorization(const HookSystem& sys) {
  ParityCheck out;
  out.exponent = (sys.n - sys.a + 1) * (sys.a - 1);
  out.determinant = hook_determinant(sys);
  const RationalForm exact = apply_L(sys.a - 1, sys.h.cast<Rational>());
  BinaryForm lk = exact.cast<double>();
  const BinaryForm circle({1.0, 0.0, 1.0});  // s^2 + t^2
  out.scale = binomial_d(sys.n, sys.a - 1);
  out.factored = out.scale * (lk * power(circle, out.exponent));
  double dot = 0.0;
  double scale = 0.0;
  for (int i = 0; i <= out.determinant.degree(); ++i) {
    dot += out.determinant[i] * out.factored[i];
    scale = std::max(scale, std::abs(out.determinant[i]));
  }
  out.sign = dot < 0 ? -1 : 1;
  double diff = 0.0;
  for (int i = 0; i <= out.determinant.degree(); ++i)
    diff = std::max(diff, std::abs(out.determinant[i] - out.sign * out.factored[i]));
  out.residual = scale > 0 ? diff / scale : diff;
  if (!(out.residual <= 1e-8)) {
    throw Error(ErrorKind::FactorizationMismatch, "det M differs from the L-factorisation, relative residual " +
                                                      std::to_string(out.residual));
  }
  return out;
}

std::vector<RealProjectiveRoot> critical_roots(const BinaryForm& h, int a) {
  const int n = h.degree();
  if (a < 2 || a > n) throw Error(ErrorKind::IndexError, "hook part a must satisfy 2 <= a <= n");
  const RationalForm lk = apply_L(a - 1, h.cast<Rational>());
  if (lk.is_zero()) throw Error(ErrorKind::DegenerateInput, "L^(a-1)(h) vanishes identically");
  return real_projective_roots(lk.cast<double>(), lk);
}

BinaryForm project_onto_multiple(const BinaryForm& h, const BinaryForm& linear, int p) {
  const int n = h.degree();
  const int q = n - p;
  const BinaryForm lp = power(linear, p);
  std::vector<BinaryForm> basis;
  for (int i = 0; i <= q; ++i) basis.push_back(lp * BinaryForm::monomial(q, i));
  Eigen::MatrixXd gram(q + 1, q + 1);
  Eigen::VectorXd rhs(q + 1);
  for (int i = 0; i <= q; ++i) {
    rhs(i) = bombieri(basis[i], h);
    for (int j = 0; j <= i; ++j) gram(i, j) = gram(j, i) = bombieri(basis[i], basis[j]);
  }
  const Eigen::VectorXd c = gram.ldlt().solve(rhs);
  return BinaryForm(std::vector<double>(c.data(), c.data() + c.size()));
}

Eigen::MatrixXd whitened_cofactor_hessian(const BinaryForm& h, const ProjectivePoint& root, int p, bool dual) {
  const int n = h.degree();
  const int q = n - p;
  // Chart: the dominant coordinate of the root is fixed to 1, the other is r.
  const bool t_chart = std::abs(root.t()) >= std::abs(root.s());
  const double s = t_chart ? root.s() / root.t() : 1.0;
  const double t = t_chart ? 1.0 : root.t() / root.s();
  BinaryForm l = dual ? BinaryForm({t, s}) : BinaryForm({-s, t});
  BinaryForm dl;  // d l / d r
  if (dual) {
    dl = t_chart ? BinaryForm({0.0, 1.0}) : BinaryForm({1.0, 0.0});
  } else {
    dl = t_chart ? BinaryForm({-1.0, 0.0}) : BinaryForm({0.0, 1.0});
  }
  const BinaryForm c = project_onto_multiple(h, l, p);
  const BinaryForm lp = power(l, p);
  const BinaryForm lp1 = power(l, p - 1);
  const BinaryForm lp2 = power(l, p - 2);
  const BinaryForm residual = h - lp * c;

  const int dim = q + 2;
  std::vector<BinaryForm> d1(static_cast<std::size_t>(dim));
  d1[0] = static_cast<double>(p) * (lp1 * dl * c);
  for (int i = 0; i <= q; ++i) d1[1 + i] = lp * BinaryForm::monomial(q, i);

  Eigen::MatrixXd metric(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) metric(i, j) = metric(j, i) = 2.0 * bombieri(d1[i], d1[j]);

  Eigen::MatrixXd hess = metric;
  const BinaryForm drr = static_cast<double>(p * (p - 1)) * (lp2 * dl * dl * c);
  hess(0, 0) -= 2.0 * bombieri(residual, drr);
  for (int i = 0; i <= q; ++i) {
    const BinaryForm dri = static_cast<double>(p) * (lp1 * dl * BinaryForm::monomial(q, i));
    const double v = 2.0 * bombieri(residual, dri);
    hess(0, 1 + i) -= v;
    hess(1 + i, 0) -= v;
  }
  return whiten(hess, metric);
}

CriticalDecomposition decomposition_at_root(const HookSystem& sys, const ProjectivePoint& root,
                                            const HookTolerances& tol) {
  const int n = sys.n;
  const int a = sys.a;
  const int m = n - a + 2;
  const Eigen::MatrixXd mat = sys.evaluate(root.s(), root.t());
  const auto kernel = left_kernel(mat, tol.kernel);
  if (!kernel) throw Error(ErrorKind::NotCritical, "M_{n,a} has no left kernel at the given root");
  const Eigen::VectorXd& v = *kernel;
  if (std::abs(v(0)) <= 1e-12) throw Error(ErrorKind::NotCritical, "left kernel does not involve h");

  CriticalDecomposition d;
  d.roots = {root};
  d.parts = {a};
  d.residuals.kernel = (v.transpose() * mat).cwiseAbs().maxCoeff() / mat.cwiseAbs().maxCoeff();

  // The kernel fixes the root; the cofactor is refined by orthogonal projection.
  const BinaryForm l1 = linear_at(root, false);
  const BinaryForm l2 = linear_at(root, true);
  d.g1 = project_onto_multiple(sys.h, l1, a);
  d.f = power(l1, a) * d.g1;
  d.g = sys.h - d.f;
  d.g2 = project_onto_multiple(d.g, l2, m);

  const double hnorm = std::sqrt(bombieri_norm_sq(sys.h));
  const BinaryForm g_rep = power(l2, m) * d.g2;
  const double factor_err = std::sqrt(bombieri_norm_sq(d.g - g_rep));
  if (factor_err > tol.factor * std::max(hnorm, 1e-300)) {
    throw Error(ErrorKind::NotCritical, "h - f is not a multiple of (sx+ty)^(n-a+2)");
  }
  d.residuals.reconstruction = max_abs_coeff(sys.h - d.f - g_rep);
  d.residuals.orthogonality = std::abs(apolar_pairing(d.f, d.g));
  d.dist_sq_primal = bombieri_norm_sq(d.g);
  d.dist_sq_dual = bombieri_norm_sq(d.f);
  d.residuals.pythagoras = std::abs(d.dist_sq_primal + d.dist_sq_dual - bombieri_norm_sq(sys.h));

  const Eigen::MatrixXd hp = whitened_cofactor_hessian(sys.h, root, a, false);
  const Eigen::MatrixXd hd = whitened_cofactor_hessian(sys.h, root, m, true);
  d.primal_spectrum = symmetric_eigenvalues(hp);
  d.dual_spectrum = symmetric_eigenvalues(hd);
  d.class_primal = classify_stationary(hp, tol.singular);
  d.class_dual = classify_stationary(hd, tol.singular);
  return d;
}

std::vector<CriticalDecomposition> solve_hook(const BinaryForm& h, int a, const HookTolerances& tol) {
  const HookSystem sys = build_hook_system(h, a);
  std::vector<CriticalDecomposition> out;
  for (const auto& r : critical_roots(h, a)) {
    CriticalDecomposition d = decomposition_at_root(sys, r.point, tol);
    d.root_multiplicity = r.multiplicity;
    out.push_back(std::move(d));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.dist_sq_primal != y.dist_sq_primal) return x.dist_sq_primal < y.dist_sq_primal;
    return x.roots[0].angle() < y.roots[0].angle();
  });
  return out;
}

double annihilation_residual(const BinaryForm& f, const BinaryForm& g, double cluster_tol) {
  using cd = std::complex<double>;
  std::vector<cd> op{cd(1.0)};
  for (const RootCluster& rc : root_clusters(f, cluster_tol)) {
    for (int e = 0; e < rc.multiplicity - 1; ++e) {
      // times (t u - s v), ascending in u
      std::vector<cd> next(op.size() + 1, cd(0.0));
      for (std::size_t i = 0; i < op.size(); ++i) {
        next[i] += -rc.s * op[i];
        next[i + 1] += rc.t * op[i];
      }
      op = std::move(next);
    }
  }
  std::vector<double> re;
  double op_size = 0.0;
  for (const cd& z : op) {
    re.push_back(z.real());
    op_size += std::abs(z);
  }
  const BinaryForm opf(re);
  const int k = opf.degree();
  const int n = g.degree();
  if (k > n) return 0.0;
  const BinaryForm res = apply_apolarity_operator(opf, g);
  double fall = 1.0;
  for (int i = 0; i < k; ++i) fall *= n - i;
  const double scale = max_abs_coeff(g) * op_size * fall;
  if (scale == 0.0) return 0.0;
  return max_abs_coeff(res) / scale;
}

bool verify_conormal(const BinaryForm& f, const BinaryForm& g, const Partition& lambda, double tol) {
  if (f.degree() != g.degree() || f.degree() != lambda.size()) {
    throw Error(ErrorKind::DegreeMismatch, "verify_conormal needs deg f = deg g = |lambda|");
  }
  if (f.is_zero()) return false;
  if (!(multiplicity_structure(f) == lambda)) return false;
  const double nf = std::sqrt(bombieri_norm_sq(f));
  const double ng = std::sqrt(bombieri_norm_sq(g));
  if (std::abs(apolar_pairing(f, g)) > tol * std::max(nf * ng, 1e-300) && ng > 0.0) return false;
  return annihilation_residual(f, g) <= tol;
}

}  // namespace crl
