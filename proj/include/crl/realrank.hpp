#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "crl/forms.hpp"
#include "crl/partition.hpp"

namespace crl {

/// Hankel matrix entry(i,j) = a_{i+j} of the scaled coefficients of h, with
/// rows + cols = n + 2. Column p multiplies u^p v^(cols-1-p) of an apolar
/// form, so q is in the kernel iff q(d/dx, d/dy) kills h.
struct CatalecticantMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> hankel;  // a_0 .. a_n

  double entry(int i, int j) const { return hankel[static_cast<std::size_t>(i + j)]; }
  Eigen::MatrixXd matrix() const;
};

/// Throws OutOfRange unless 1 <= rows <= n + 1.
CatalecticantMatrix catalecticant(const BinaryForm& h, int rows);

/// Numerical rank with singular values above rel_tol * sigma_max.
int catalecticant_rank(const BinaryForm& h, int rows, double rel_tol = 1e-10);

/// Rank of the most nearly square catalecticant (n/2 + 1 rows): the
/// (k+1)x(k+1) Hankel matrix for n = 2k, the k x (k+1) one for n = 2k-1.
/// Equals the border rank on generic strata.
int hankel_rank(const BinaryForm& h, double rel_tol = 1e-10);

/// n = 2k-1: the degree-k generator q = sum_p (-1)^p minor_p u^p v^(k-p) of
/// the apolar ideal. Throws SubgenericRank if the catalecticant is rank
/// deficient (exactly for rational input, numerically for float input),
/// DegreeMismatch for even n.
RationalForm apolar_generator_odd(const RationalForm& h);
BinaryForm apolar_generator_odd(const BinaryForm& h);

/// n = 2k: basis of the two-dimensional kernel of the k x (k+2)
/// catalecticant read off its reduced row echelon form: one vector per free
/// column, equal to 1 there and 0 at the other free column. Throws
/// SubgenericRank when the kernel is larger.
std::pair<RationalForm, RationalForm> apolar_pencil_even(const RationalForm& h);
std::pair<BinaryForm, BinaryForm> apolar_pencil_even(const BinaryForm& h);

/// Square-free with all projective roots real (exact Sturm count).
bool is_real_rooted(const RationalForm& q);
bool is_real_rooted(const BinaryForm& q);

/// D(s,t) = disc_(u,v)(s q1 + t q2), interpolated from exact discriminant
/// values. Throws DegeneratePencil when D vanishes identically.
RationalForm pencil_discriminant(const RationalForm& q1, const RationalForm& q2);
BinaryForm pencil_discriminant(const BinaryForm& q1, const BinaryForm& q2);

enum class RankVerdict { EqualsGeneric, ExceedsGeneric, OnBoundary };
enum class BoundaryComponent { Cusp, Node, Hankel };

std::string_view to_string(RankVerdict v);
std::string_view to_string(BoundaryComponent c);

/// Partition whose dual hypersurface carries the component: CUSP is
/// {2^(k-2),4} for n = 2k and {2^(k-2),3} for n = 2k-1, NODE is
/// {2^(k-3),3,3}, HANKEL is {2^k}. Throws OutOfRange where undefined.
Partition boundary_partition(BoundaryComponent c, int n);

/// One pencil member tested for real-rootedness (even n).
struct PencilSample {
  double angle = 0.0;  // member cos(angle) q1 + sin(angle) q2
  int real_roots = 0;  // distinct real roots, exact Sturm count
  bool real_rooted = false;
};

/// A real root of D(s,t) and the shape of the member there.
struct PencilTransition {
  ProjectivePoint point{1.0, 0.0};
  int multiplicity = 1;  // as a root of D
  bool all_real = false;
  std::optional<Partition> structure;  // root multiplicities of the member
};

struct RealRankReport {
  int n = 0;
  int generic_rank = 0;  // ceil((n+1)/2)
  RankVerdict verdict = RankVerdict::ExceedsGeneric;
  std::optional<BoundaryComponent> boundary_component;
  /// False for HANKEL, which is reported but lies outside the boundary.
  bool component_in_boundary = false;
  std::vector<BinaryForm> apolar_forms;  // q (odd) or the pencil basis (even)
  double discriminant = 0.0;             // odd: disc(q / max|q_i|)
  std::optional<BinaryForm> pencil_discriminant;  // even
  int real_roots = 0;                             // odd: distinct real roots of q
  std::vector<PencilSample> samples;
  std::vector<PencilTransition> transitions;
};

struct RealRankOptions {
  double boundary_tol = 1e-9;  // odd n, float input: |disc| of the normalised q
  double cluster_tol = 1e-6;   // root clustering of transition members
  double rank_tol = 1e-10;     // catalecticant rank threshold, float input only
};

/// Decides whether real rank equals the generic complex rank. n >= 3; the
/// boundary component is only classified for n >= 5. For odd n the rational
/// overload puts h on the boundary iff disc(q) = 0 exactly; the float one
/// uses boundary_tol on the normalised discriminant.
RealRankReport generic_real_rank_test(const RationalForm& h, const RealRankOptions& opts = {});
RealRankReport generic_real_rank_test(const BinaryForm& h, const RealRankOptions& opts = {});

/// Multiplicity pattern of the pencil member at transition_root (in the
/// basis of apolar_pencil_even): a triple root is CUSP, two double roots
/// NODE, a single double root HANKEL. Anything else, or a pattern that
/// changes with the tolerance, throws AmbiguousBoundary.
BoundaryComponent classify_boundary_even(const BinaryForm& h, const ProjectivePoint& transition_root,
                                         double cluster_tol = 1e-6);

}  // namespace crl
