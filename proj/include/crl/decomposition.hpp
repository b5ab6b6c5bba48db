#pragma once

#include <Eigen/Dense>

#include <vector>

#include "crl/forms.hpp"
#include "crl/numerics.hpp"

namespace crl {

struct Residuals {
  double reconstruction = 0.0;  // |h - f - g| (max coefficient)
  double orthogonality = 0.0;   // |<f,g>|
  double pythagoras = 0.0;      // | |g|^2 + |f|^2 - |h|^2 |
  double kernel = 0.0;          // |v M| for hooks, |grad D| for the general solver
};

/// One solution h = f + g with f on the multiple root locus and g on its dual.
struct CriticalDecomposition {
  std::vector<ProjectivePoint> roots;  // one per part of lambda, in part order
  std::vector<int> parts;
  double alpha = 1.0;                   // leading scale of f (general solver)
  BinaryForm f;
  BinaryForm g;
  BinaryForm g1;  // hook: f = (tx - sy)^a g1
  BinaryForm g2;  // hook: g = (sx + ty)^(n-a+2) g2
  double dist_sq_primal = 0.0;  // |h - f|^2 = |g|^2
  double dist_sq_dual = 0.0;    // |h - g|^2 = |f|^2
  StationaryClass class_primal = StationaryClass::Undecided;
  StationaryClass class_dual = StationaryClass::Undecided;
  Eigen::VectorXd primal_spectrum;  // whitened Hessian eigenvalues
  Eigen::VectorXd dual_spectrum;
  Residuals residuals;
  int root_multiplicity = 1;  // > 1 when near-coincident critical roots were merged
};

}  // namespace crl
