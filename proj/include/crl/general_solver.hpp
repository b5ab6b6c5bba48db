#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "crl/decomposition.hpp"
#include "crl/forms.hpp"
#include "crl/partition.hpp"

namespace crl {

/// f = alpha * prod (t_i x - s_i y)^(lambda_i), roots in part order.
struct PrimalParams {
  double alpha = 1.0;
  std::vector<ProjectivePoint> roots;
};

BinaryForm primal_form(const PrimalParams& params, const Partition& lambda);
double distance_sq(const BinaryForm& h, const PrimalParams& params, const Partition& lambda);

/// Affine chart coordinates: root i is (r_i : 1) when s_chart[i] is false
/// (factor x - r_i y) and (1 : r_i) otherwise (factor r_i x - y).
struct ChartPoint {
  double alpha = 1.0;
  std::vector<double> r;
  std::vector<char> s_chart;

  static ChartPoint from_params(const PrimalParams& p, const Partition& lambda);
  PrimalParams to_params(const Partition& lambda) const;
};

/// D = |h - f|^2 with gradient, Hessian and Gauss-Newton metric in the
/// chart variables (alpha, r_1, ..., r_d).
struct DistanceJet {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
  Eigen::MatrixXd metric;
};

DistanceJet distance_jet(const BinaryForm& h, const ChartPoint& x, const Partition& lambda);

struct GeneralOptions {
  int starts = 200;
  std::uint64_t seed = 1234567;
  int threads = 1;
  double grad_tol = 1e-10;    // relative to max(1, |h|^2)
  double dedupe_tol = 1e-6;   // relative to |h|
  double merge_tol = 1e-6;    // chordal distance between roots
  double conormal_tol = 1e-6;
  double singular_tol = 1e-6;
  int max_iterations = 400;
};

struct GeneralStats {
  int converged = 0;   // starts reaching |grad D| <= grad_tol
  int vanishing = 0;   // converged to f = 0
  int merged = 0;      // two roots collided
  int duplicates = 0;
  int rejected = 0;    // failed the conormal or dual-decomposition check
};

/// Real critical points of the distance from h to Delta_lambda found by
/// seeded multi-start Levenberg-Marquardt (on the residual, then on
/// grad D = 0 to reach saddles), deduplicated and
/// sorted by distance. Throws NoCriticalPointFound when none converges.
std::vector<CriticalDecomposition> solve_general(const BinaryForm& h, const Partition& lambda,
                                                 const GeneralOptions& opts = {}, GeneralStats* stats = nullptr);

/// g = h - f after checking the pair is conormal. Throws NotConormal. A
/// residual below sqrt(eps) |h| (h on the locus) comes back as the zero form.
BinaryForm dual_point(const BinaryForm& h, const BinaryForm& f, const Partition& lambda, double tol = 1e-6);

struct GadTerm {
  ProjectivePoint root;
  int part = 0;
  BinaryForm cofactor;  // degree part - 2
};

struct GadDecomposition {
  std::vector<GadTerm> terms;  // parts >= 2 only
  double residual = 0.0;       // |g - sum| / max(|g|, tiny), Bombieri norms
};

/// Solves g = sum (s_i x + t_i y)^(n - lambda_i + 2) g_i for the cofactors.
/// Parts below 2 are skipped. Throws NotOnDual when the least-squares
/// residual exceeds tol, or when the cofactors are not unique.
GadDecomposition gad_decompose(const BinaryForm& g, const std::vector<std::pair<ProjectivePoint, int>>& roots,
                               double tol = 1e-6);

}  // namespace crl
