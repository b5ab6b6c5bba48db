#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "crl/decomposition.hpp"
#include "crl/forms.hpp"
#include "crl/numerics.hpp"
#include "crl/partition.hpp"

namespace crl {

/// The square system M_{n,a}(s,t) whose left kernel (-1, g1, g2) encodes
///   h = (tx - sy)^a g1 + (sx + ty)^(n-a+2) g2.
/// Row 0 holds the monomial coefficients of h, then n-a+1 shifted copies of
/// (tx - sy)^a and a-1 shifted copies of (sx + ty)^(n-a+2); columns follow
/// ascending x-degree.
struct HookSystem {
  int n = 0;
  int a = 0;
  BinaryForm h;

  Eigen::MatrixXd evaluate(double s, double t) const;
  Eigen::MatrixXcd evaluate(std::complex<double> s, std::complex<double> t) const;
};

HookSystem build_hook_system(const BinaryForm& h, int a);

/// det M_{n,a}(s,t) as a form of degree (2a-1)n - 2(a-1)^2 in (s,t), by
/// evaluation on roots of unity and inverse DFT.
BinaryForm hook_determinant(const HookSystem& sys);

/// det M = sign * C(n, a-1) * L^(a-1)(h)(s,t) * (s^2+t^2)^exponent.
/// The binomial is what the (n-k)!/n! normalisation of L leaves over.
struct ParityCheck {
  int sign = 1;
  int exponent = 0;       // (n-a+1)(a-1)
  double scale = 1.0;     // C(n, a-1)
  double residual = 0.0;  // max coefficient difference / max |det coefficient|
  BinaryForm determinant;
  BinaryForm factored;  // scale * L^(a-1)(h)(s,t) * (s^2+t^2)^exponent, without sign
};

/// Throws FactorizationMismatch when the residual exceeds 1e-8.
ParityCheck verify_parity_factorization(const HookSystem& sys);

/// Real projective roots of L^(a-1)(h), computed from the exact rational
/// image of h and Sturm-certified. Multiplicity > 1 marks merged roots.
std::vector<RealProjectiveRoot> critical_roots(const BinaryForm& h, int a);

struct HookTolerances {
  double kernel = 1e-8;
  double singular = 1e-6;
  double factor = 1e-6;  // g against (sx+ty)^(n-a+2) g2, relative to |h|
};

CriticalDecomposition decomposition_at_root(const HookSystem& sys, const ProjectivePoint& root,
                                            const HookTolerances& tol = {});

/// Decompositions at all real critical roots, ascending in dist_sq_primal.
std::vector<CriticalDecomposition> solve_hook(const BinaryForm& h, int a, const HookTolerances& tol = {});

/// Hessian of D(r, c) = |h - l(r)^p c|^2 at the projection optimum for the
/// root, in the chart where the root coordinate is bounded, congruence
/// transformed by the Gauss-Newton metric (so eigenvalues are relative).
/// dual = false uses l = tx - sy, dual = true uses l = sx + ty.
Eigen::MatrixXd whitened_cofactor_hessian(const BinaryForm& h, const ProjectivePoint& root, int power, bool dual);

/// Best cofactor c minimising |h - l^p c| for l = (tx - sy) or (sx + ty).
BinaryForm project_onto_multiple(const BinaryForm& h, const BinaryForm& linear, int power);

/// Apolarity test of the pair (f, g) for lambda: the operator prod l_i^(lambda_i - 1)
/// built from the clustered roots of f must annihilate g, and <f,g> must vanish.
bool verify_conormal(const BinaryForm& f, const BinaryForm& g, const Partition& lambda, double tol = 1e-6);

/// Relative residual |prod l_i^(m_i - 1)(d) g| used by verify_conormal.
double annihilation_residual(const BinaryForm& f, const BinaryForm& g, double cluster_tol = 1e-6);

}  // namespace crl
