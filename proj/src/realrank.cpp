#include "crl/realrank.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "crl/numerics.hpp"

namespace crl {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix rational_catalecticant(const RationalForm& h, int rows) {
  const int n = h.degree();
  const int cols = n + 2 - rows;
  const auto a = h.scaled();
  RationalMatrix m(static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(cols)));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m[i][j] = a[i + j];
  return m;
}

// In-place reduced row echelon form; returns the pivot columns.
std::vector<int> rref(RationalMatrix& m) {
  std::vector<int> pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

void subgeneric(int rows, int rank) {
  throw Error(ErrorKind::SubgenericRank, "catalecticant with " + std::to_string(rows) + " rows has rank " +
                                             std::to_string(rank) + "; border rank below the generic rank");
}

// Exact input gets an exact rank: the float matrix loses small entries next
// to large ones, e.g. for (x + 30 y)^11.
void require_rank(const RationalForm& h, int rows) {
  RationalMatrix m = rational_catalecticant(h, rows);
  const int rank = static_cast<int>(rref(m).size());
  if (rank < rows) subgeneric(rows, rank);
}

void require_rank(const BinaryForm& h, int rows, double rank_tol) {
  const int rank = catalecticant_rank(h, rows, rank_tol);
  if (rank < rows) subgeneric(rows, rank);
}

RationalForm member(const RationalForm& q1, const RationalForm& q2, const Rational& s, const Rational& t) {
  return s * q1 + t * q2;
}

// Newton divided differences through (xs[i], ys[i]), expanded to ascending
// monomial coefficients.
std::vector<Rational> interpolate(const std::vector<Rational>& xs, std::vector<Rational> ys) {
  const int m = static_cast<int>(xs.size());
  for (int j = 1; j < m; ++j)
    for (int i = m - 1; i >= j; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
  std::vector<Rational> poly(static_cast<std::size_t>(m), Rational(0));
  for (int i = m - 1; i >= 0; --i) {
    // poly = poly * (x - xs[i]) + ys[i]
    for (int j = m - 1; j > 0; --j) poly[j] = poly[j - 1] - xs[i] * poly[j];
    poly[0] = ys[i] - xs[i] * poly[0];
  }
  return poly;
}

std::optional<BoundaryComponent> component_of(const Partition& structure) {
  std::vector<int> repeated;
  for (int p : structure.parts())
    if (p >= 2) repeated.push_back(p);
  if (repeated == std::vector<int>{3}) return BoundaryComponent::Cusp;
  if (repeated == std::vector<int>{2, 2}) return BoundaryComponent::Node;
  if (repeated == std::vector<int>{2}) return BoundaryComponent::Hankel;
  return std::nullopt;
}

BoundaryComponent require_component(const Partition& structure) {
  if (auto c = component_of(structure)) return *c;
  throw Error(ErrorKind::AmbiguousBoundary, "pencil member has root pattern " + structure.to_string());
}

// exact: h is the caller's rational input, so the boundary test is disc = 0
// rather than the float tolerance.
RealRankReport odd_test(const RationalForm& h, const RealRankOptions& opts, RealRankReport report, bool exact) {
  const RationalForm q = apolar_generator_odd(h);
  const BinaryForm qd = q.cast<double>();
  report.apolar_forms = {qd};
  const int m = q.degree();
  const Rational disc = m >= 2 ? form_discriminant(q) : Rational(1);
  const double scale = max_abs_coeff(qd);
  Rational norm = 1;
  for (int i = 0; i < 2 * m - 2; ++i) norm *= to_rational(scale);
  report.discriminant = to_double(Rational(disc / norm));
  report.real_roots = real_projective_root_count(q);
  const bool boundary = exact ? disc == 0 : std::abs(report.discriminant) <= opts.boundary_tol;
  if (boundary) {
    report.verdict = RankVerdict::OnBoundary;
    if (report.n >= 5) {
      report.boundary_component = BoundaryComponent::Cusp;
      report.component_in_boundary = true;
    }
  } else if (disc != 0 && report.real_roots == m) {
    report.verdict = RankVerdict::EqualsGeneric;
  } else {
    report.verdict = RankVerdict::ExceedsGeneric;
  }
  return report;
}

RealRankReport even_test(const RationalForm& h, const RealRankOptions& opts, RealRankReport report) {
  const auto [q1, q2] = apolar_pencil_even(h);
  const BinaryForm q1d = q1.cast<double>();
  const BinaryForm q2d = q2.cast<double>();
  report.apolar_forms = {q1d, q2d};
  const RationalForm d = pencil_discriminant(q1, q2);
  const BinaryForm dd = d.cast<double>();
  report.pencil_discriminant = dd;

  const auto roots = real_projective_roots(dd, d, opts.cluster_tol);
  std::vector<double> angles;
  for (const auto& r : roots) angles.push_back(r.point.angle());

  std::vector<double> mids;
  if (angles.empty()) {
    mids.push_back(0.0);
  } else {
    for (std::size_t i = 0; i + 1 < angles.size(); ++i) mids.push_back(0.5 * (angles[i] + angles[i + 1]));
    double wrap = 0.5 * (angles.back() + angles.front() + std::numbers::pi);
    if (wrap >= std::numbers::pi) wrap -= std::numbers::pi;
    mids.push_back(wrap);
  }
  for (double theta : mids) {
    const RationalForm q = member(q1, q2, to_rational(std::cos(theta)), to_rational(std::sin(theta)));
    PencilSample sample;
    sample.angle = theta;
    sample.real_roots = real_projective_root_count(q);
    sample.real_rooted = is_real_rooted(q);
    report.samples.push_back(sample);
  }

  for (const auto& r : roots) {
    PencilTransition tr;
    tr.point = r.point;
    tr.multiplicity = r.multiplicity;
    const BinaryForm qs = r.point.s() * q1d + r.point.t() * q2d;
    const auto clusters = root_clusters(qs, opts.cluster_tol);
    tr.all_real = std::all_of(clusters.begin(), clusters.end(), [](const RootCluster& c) { return c.is_real(); });
    try {
      tr.structure = multiplicity_structure(qs, opts.cluster_tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AmbiguousStructure) throw;
    }
    report.transitions.push_back(tr);
  }

  const bool equals = std::any_of(report.samples.begin(), report.samples.end(),
                                  [](const PencilSample& s) { return s.real_rooted; });
  if (equals) {
    report.verdict = RankVerdict::EqualsGeneric;
    return report;
  }
  report.verdict = RankVerdict::ExceedsGeneric;
  for (const auto& tr : report.transitions) {
    if (!tr.all_real) continue;
    if (!tr.structure) {
      throw Error(ErrorKind::AmbiguousBoundary, "root pattern of the pencil member at a real root of D is unstable");
    }
    if (tr.structure->largest() < 2) continue;
    report.verdict = RankVerdict::OnBoundary;
    if (report.n >= 5) {
      const BoundaryComponent c = require_component(*tr.structure);
      report.boundary_component = c;
      report.component_in_boundary = c != BoundaryComponent::Hankel;
    }
    break;
  }
  return report;
}

}  // namespace

Eigen::MatrixXd CatalecticantMatrix::matrix() const {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = entry(i, j);
  return m;
}

CatalecticantMatrix catalecticant(const BinaryForm& h, int rows) {
  const int n = h.degree();
  if (rows < 1 || rows > n + 1) {
    throw Error(ErrorKind::OutOfRange, "catalecticant of a degree " + std::to_string(n) + " form cannot have " +
                                           std::to_string(rows) + " rows");
  }
  return CatalecticantMatrix{rows, n + 2 - rows, h.scaled()};
}

int catalecticant_rank(const BinaryForm& h, int rows, double rel_tol) {
  const Eigen::MatrixXd m = catalecticant(h, rows).matrix();
  const Eigen::VectorXd sv = m.jacobiSvd().singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

int hankel_rank(const BinaryForm& h, double rel_tol) { return catalecticant_rank(h, h.degree() / 2 + 1, rel_tol); }

RationalForm apolar_generator_odd(const RationalForm& h) {
  const int n = h.degree();
  if (n % 2 == 0) throw Error(ErrorKind::DegreeMismatch, "apolar generator needs odd degree, got " + std::to_string(n));
  const int k = (n + 1) / 2;
  require_rank(h, k);
  const RationalMatrix c = rational_catalecticant(h, k);
  std::vector<Rational> q(static_cast<std::size_t>(k) + 1);
  for (int p = 0; p <= k; ++p) {
    RationalMatrix minor(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j <= k; ++j)
        if (j != p) minor[i].push_back(c[i][j]);
    q[p] = (p % 2 == 0 ? 1 : -1) * determinant(std::move(minor));
  }
  return RationalForm(std::move(q));
}

BinaryForm apolar_generator_odd(const BinaryForm& h) {
  if (h.degree() % 2 == 1) require_rank(h, (h.degree() + 1) / 2, 1e-10);
  return apolar_generator_odd(h.cast<Rational>()).cast<double>();
}

std::pair<RationalForm, RationalForm> apolar_pencil_even(const RationalForm& h) {
  const int n = h.degree();
  if (n % 2 != 0 || n < 2) {
    throw Error(ErrorKind::DegreeMismatch, "apolar pencil needs even degree, got " + std::to_string(n));
  }
  const int k = n / 2;
  require_rank(h, k);
  RationalMatrix c = rational_catalecticant(h, k);
  const auto pivots = rref(c);
  std::vector<int> free;
  for (int j = 0; j < k + 2; ++j)
    if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) free.push_back(j);
  if (free.size() != 2) {
    throw Error(ErrorKind::SubgenericRank, "apolar kernel has dimension " + std::to_string(free.size()));
  }
  auto basis = [&](int f) {
    std::vector<Rational> q(static_cast<std::size_t>(k) + 2, Rational(0));
    q[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) q[pivots[r]] = -c[r][f];
    return RationalForm(std::move(q));
  };
  return {basis(free[0]), basis(free[1])};
}

std::pair<BinaryForm, BinaryForm> apolar_pencil_even(const BinaryForm& h) {
  if (h.degree() % 2 == 0 && h.degree() >= 2) require_rank(h, h.degree() / 2, 1e-10);
  const auto [q1, q2] = apolar_pencil_even(h.cast<Rational>());
  return {q1.cast<double>(), q2.cast<double>()};
}

bool is_real_rooted(const RationalForm& q) {
  if (q.is_zero()) throw Error(ErrorKind::DegenerateInput, "zero form has no roots");
  const int m = q.degree();
  if (m <= 1) return true;
  if (form_discriminant(q) == 0) return false;
  return real_projective_root_count(q) == m;
}

bool is_real_rooted(const BinaryForm& q) { return is_real_rooted(q.cast<Rational>()); }

RationalForm pencil_discriminant(const RationalForm& q1, const RationalForm& q2) {
  if (q1.degree() != q2.degree()) throw Error(ErrorKind::DegreeMismatch, "pencil members of different degree");
  const int m = q1.degree();
  if (m < 2) throw Error(ErrorKind::DegreeMismatch, "discriminant needs degree >= 2");
  const int e = 2 * m - 2;
  // D(s,1) - D(1,0) s^e has degree < e; interpolate it at s = 0..e-1.
  const Rational top = form_discriminant(q1);
  std::vector<Rational> xs, ys;
  for (int j = 0; j < e; ++j) {
    const Rational s(j);
    Rational se = 1;
    for (int i = 0; i < e; ++i) se *= s;
    xs.push_back(s);
    ys.push_back(form_discriminant(member(q1, q2, s, Rational(1))) - top * se);
  }
  std::vector<Rational> d = interpolate(xs, ys);
  d.push_back(top);
  RationalForm out(std::move(d));
  if (out.is_zero()) throw Error(ErrorKind::DegeneratePencil, "every member of the pencil has a repeated root");
  return out;
}

BinaryForm pencil_discriminant(const BinaryForm& q1, const BinaryForm& q2) {
  return pencil_discriminant(q1.cast<Rational>(), q2.cast<Rational>()).cast<double>();
}

std::string_view to_string(RankVerdict v) {
  switch (v) {
    case RankVerdict::EqualsGeneric:
      return "EQUALS_GENERIC";
    case RankVerdict::ExceedsGeneric:
      return "EXCEEDS_GENERIC";
    case RankVerdict::OnBoundary:
      return "ON_BOUNDARY";
  }
  return "?";
}

std::string_view to_string(BoundaryComponent c) {
  switch (c) {
    case BoundaryComponent::Cusp:
      return "CUSP";
    case BoundaryComponent::Node:
      return "NODE";
    case BoundaryComponent::Hankel:
      return "HANKEL";
  }
  return "?";
}

Partition boundary_partition(BoundaryComponent c, int n) {
  const int k = (n + 1) / 2;
  auto twos = [](int count, std::vector<int> rest) {
    for (int i = 0; i < count; ++i) rest.push_back(2);
    return Partition(std::move(rest));
  };
  const bool even = n % 2 == 0;
  if (n < 5) throw Error(ErrorKind::OutOfRange, "boundary components are defined for n >= 5");
  switch (c) {
    case BoundaryComponent::Cusp:
      return even ? twos(k - 2, {4}) : twos(k - 2, {3});
    case BoundaryComponent::Node:
      if (even) return twos(k - 3, {3, 3});
      break;
    case BoundaryComponent::Hankel:
      if (even) return twos(k, {});
      break;
  }
  throw Error(ErrorKind::OutOfRange, std::string(to_string(c)) + " has no odd-degree counterpart");
}

namespace {

RealRankReport run_test(const RationalForm& h, const RealRankOptions& opts, bool exact) {
  const int n = h.degree();
  if (n < 3) throw Error(ErrorKind::DegenerateInput, "real rank test needs degree >= 3");
  if (h.is_zero()) throw Error(ErrorKind::DegenerateInput, "zero form");
  RealRankReport report;
  report.n = n;
  report.generic_rank = n / 2 + 1;
  return n % 2 == 1 ? odd_test(h, opts, std::move(report), exact) : even_test(h, opts, std::move(report));
}

int generic_rows(int n) { return n % 2 == 0 ? n / 2 : (n + 1) / 2; }

}  // namespace

RealRankReport generic_real_rank_test(const RationalForm& h, const RealRankOptions& opts) {
  if (h.degree() >= 3 && !h.is_zero()) require_rank(h, generic_rows(h.degree()));
  return run_test(h, opts, true);
}

RealRankReport generic_real_rank_test(const BinaryForm& h, const RealRankOptions& opts) {
  if (h.degree() >= 3 && !h.is_zero()) require_rank(h, generic_rows(h.degree()), opts.rank_tol);
  return run_test(h.cast<Rational>(), opts, false);
}

BoundaryComponent classify_boundary_even(const BinaryForm& h, const ProjectivePoint& transition_root,
                                         double cluster_tol) {
  const auto [q1, q2] = apolar_pencil_even(h);
  const BinaryForm qs = transition_root.s() * q1 + transition_root.t() * q2;
  Partition structure;
  try {
    structure = multiplicity_structure(qs, cluster_tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AmbiguousStructure) throw;
    throw Error(ErrorKind::AmbiguousBoundary, e.what());
  }
  return require_component(structure);
}

}  // namespace crl
