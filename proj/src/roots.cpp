#include "internal/roots.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace crl::internal {

namespace {

template <class S>
void horner2(const std::vector<double>& c, S z, S& p, S& dp) {
  p = S(0);
  dp = S(0);
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<std::complex<double>> out;
  if (n <= 0) return out;
  if (n == 1) {
    out.emplace_back(-c[0] / c[1], 0.0);
    return out;
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  const auto ev = es.eigenvalues();
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = ev(i);
    std::complex<double> p;
    std::complex<double> dp;
    horner2(c, z, p, dp);
    for (int it = 0; it < 8 && std::abs(dp) > 0.0; ++it) {
      const std::complex<double> next = z - p / dp;
      std::complex<double> pn;
      std::complex<double> dpn;
      horner2(c, next, pn, dpn);
      if (!(std::abs(pn) < std::abs(p))) break;
      z = next;
      p = pn;
      dp = dpn;
    }
    out.push_back(z);
  }
  return out;
}

double polish_real_root(const std::vector<double>& c, double x, double tol) {
  double p = 0.0;
  double dp = 0.0;
  horner2(c, x, p, dp);
  for (int it = 0; it < 50 && dp != 0.0; ++it) {
    const double next = x - p / dp;
    double pn = 0.0;
    double dpn = 0.0;
    horner2(c, next, pn, dpn);
    if (!(std::abs(pn) < std::abs(p))) break;
    const double step = std::abs(next - x);
    x = next;
    p = pn;
    dp = dpn;
    if (step <= tol * 1e-6 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace crl::internal
