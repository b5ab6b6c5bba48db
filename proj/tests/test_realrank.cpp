#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "crl/numerics.hpp"
#include "crl/partition.hpp"
#include "crl/realrank.hpp"
#include "support.hpp"

using namespace crl;
using namespace testing_support;

namespace {

const RationalForm quintic({1, 5, 0, -10, 0, 1});
// y^6 + 15 x^4 y^2
const RationalForm sextic_cusp({1, 0, 0, 0, 15, 0, 0});
// y^6 + 5 x^2 y^4 - 5 x^4 y^2 - x^6
const RationalForm sextic_node({1, 0, 5, 0, -5, 0, -1});

// sum_i (x + c_i y)^n
RationalForm power_sum(const std::vector<Rational>& c, int n) {
  RationalForm h = RationalForm::zero(n);
  for (const Rational& ci : c) {
    // (x + c y)^n = (1 x + c y)^n
    h += RationalForm::linear_power(Rational(1), ci, n);
  }
  return h;
}

std::vector<Rational> distinct_rationals(int k) {
  std::vector<Rational> c;
  while (static_cast<int>(c.size()) < k) {
    const Rational r = frac(uniform_int(-30, 30), uniform_int(1, 6));
    if (std::find(c.begin(), c.end(), r) == c.end()) c.push_back(r);
  }
  return c;
}

// Do the forms span the same space as the given basis (all of one degree)?
bool same_span(const std::vector<BinaryForm>& a, const std::vector<BinaryForm>& b) {
  const int n = a.front().degree();
  auto rank = [n](const std::vector<BinaryForm>& fs) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(fs.size()), n + 1);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const double s = max_abs_coeff(fs[i]);
      for (int j = 0; j <= n; ++j) m(static_cast<Eigen::Index>(i), j) = fs[i][j] / s;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto sv = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv(i) > 1e-10 * sv(0);
    return r;
  };
  std::vector<BinaryForm> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return rank(a) == rank(b) && rank(all) == rank(a);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("catalecticant structure") {
  const BinaryForm h = random_form(8);
  for (int rows = 1; rows <= 9; ++rows) {
    const CatalecticantMatrix c = catalecticant(h, rows);
    CHECK(c.rows + c.cols == 8 + 2);
    const Eigen::MatrixXd m = c.matrix();
    for (int i = 0; i < c.rows; ++i) {
      for (int j = 0; j < c.cols; ++j) {
        CHECK(m(i, j) == c.entry(i, j));
        if (i > 0 && j + 1 < c.cols) CHECK(m(i, j) == m(i - 1, j + 1));
      }
    }
  }
  CHECK_THROWS_AS(catalecticant(h, 0), Error);
  CHECK_THROWS_AS(catalecticant(h, 10), Error);
  // entries are the scaled coefficients
  const CatalecticantMatrix q = catalecticant(quintic.cast<double>(), 3);
  CHECK(q.hankel == std::vector<double>{1, 1, 0, -1, 0, 1});
}

TEST_CASE("hankel rank") {
  CHECK(hankel_rank(BinaryForm::monomial(6, 6)) == 1);
  for (int k = 2; k <= 5; ++k) {
    CHECK(hankel_rank(random_form(2 * k)) == k + 1);
    CHECK(hankel_rank(power_sum(distinct_rationals(k - 1), 2 * k).cast<double>()) == k - 1);
  }
  CHECK(catalecticant_rank(BinaryForm::monomial(5, 0), 3) == 1);
}

TEST_CASE("apolar generator, odd degree") {
  SUBCASE("quintic") {
    const RationalForm q = apolar_generator_odd(quintic);
    CHECK(q.degree() == 3);
    // u^3 + u v^2 up to scale: roots (0:1), (i:1), (-i:1)
    CHECK(projective_diff(q.cast<double>(), BinaryForm({0, 1, 0, 1})) < 1e-14);
    CHECK_FALSE(is_real_rooted(q));
    CHECK(apply_apolarity_operator(q, quintic).is_zero());
  }
  SUBCASE("sums of real powers") {
    for (int k = 2; k <= 6; ++k) {
      const auto c = distinct_rationals(k);
      const RationalForm h = power_sum(c, 2 * k - 1);
      const RationalForm q = apolar_generator_odd(h);
      CHECK(q.degree() == k);
      // q(d/dx, d/dy) kills h, and q vanishes at (1 : c_i)
      CHECK(apply_apolarity_operator(q, h).is_zero());
      for (const Rational& ci : c) CHECK(q(Rational(1), ci) == 0);
      CHECK(is_real_rooted(q));
    }
  }
  SUBCASE("float sums with residual bound") {
    for (int k = 2; k <= 6; ++k) {
      std::vector<double> c;
      for (int i = 0; i < k; ++i) c.push_back(-2.0 + 4.0 * i / k + uniform(0.0, 0.3));
      BinaryForm h = BinaryForm::zero(2 * k - 1);
      for (double a : c) h = h + BinaryForm::linear_power(1.0, a, 2 * k - 1) * uniform(0.5, 1.5);
      const BinaryForm q = apolar_generator_odd(h);
      const double scale = max_abs_coeff(q);
      for (double a : c) CHECK(std::abs(q(1.0, a)) <= 1e-8 * scale * std::pow(1 + std::abs(a), k));
    }
  }
  CHECK(kind_of([] { apolar_generator_odd(RationalForm::monomial(5, 5)); }) == ErrorKind::SubgenericRank);
  CHECK(kind_of([] { apolar_generator_odd(sextic_cusp); }) == ErrorKind::DegreeMismatch);
}

TEST_CASE("apolar pencil, even degree") {
  SUBCASE("y^6 + 15 x^4 y^2") {
    const auto [q1, q2] = apolar_pencil_even(sextic_cusp);
    CHECK(apply_apolarity_operator(q1, sextic_cusp).is_zero());
    CHECK(apply_apolarity_operator(q2, sextic_cusp).is_zero());
    // span{u v^3, u^4 - v^4}
    CHECK(same_span({q1.cast<double>(), q2.cast<double>()}, {BinaryForm({0, 1, 0, 0, 0}), BinaryForm({-1, 0, 0, 0, 1})}));
  }
  SUBCASE("y^6 + 5 x^2 y^4 - 5 x^4 y^2 - x^6") {
    const auto [q1, q2] = apolar_pencil_even(sextic_node);
    const BinaryForm node = power(BinaryForm({-1.0, 1.0}), 2) * power(BinaryForm({1.0, 1.0}), 2);
    const BinaryForm other({0, 1, 0, 1, 0});  // u v (u^2 + v^2)
    CHECK(same_span({q1.cast<double>(), q2.cast<double>()}, {node, other}));
  }
  CHECK(kind_of([] { apolar_pencil_even(RationalForm::monomial(6, 6)); }) == ErrorKind::SubgenericRank);
}

TEST_CASE("real-rootedness") {
  CHECK(is_real_rooted(RationalForm({0, -1, 0, 1})));   // u^3 - u v^2
  CHECK_FALSE(is_real_rooted(RationalForm({1, 0, 1, 0})));  // v (u^2 + v^2)
  CHECK_FALSE(is_real_rooted(RationalForm({0, 0, 1})));     // u^2, repeated
  CHECK(is_real_rooted(RationalForm({0, 1, 0})));            // u v, root at (1:0) included
  CHECK(is_real_rooted(BinaryForm({0.0, -1.0, 0.0, 1.0})));
}

TEST_CASE("pencil discriminants") {
  SUBCASE("cusp example") {
    const RationalForm d = pencil_discriminant(RationalForm({0, 1, 0, 0, 0}), RationalForm({-1, 0, 0, 0, 1}));
    // (27 s^4 + 256 t^4) t^2, ascending in s
    CHECK(projective_diff(d.cast<double>(), BinaryForm({256, 0, 0, 0, 27, 0, 0})) < 1e-12);
  }
  SUBCASE("node example") {
    const BinaryForm node = power(BinaryForm({-1.0, 1.0}), 2) * power(BinaryForm({1.0, 1.0}), 2);
    const BinaryForm d = pencil_discriminant(node, BinaryForm({0, 1, 0, 1, 0}));
    // (16 s^2 + t^2)^2 t^2
    CHECK(projective_diff(d, BinaryForm({1, 0, 32, 0, 256, 0, 0})) < 1e-10);
  }
  SUBCASE("quadratics against b^2 - 4ac") {
    // q1 = 2u^2 - 3uv + 5v^2, q2 = u^2 + 4uv - 7v^2
    const RationalForm d = pencil_discriminant(RationalForm({5, -3, 2}), RationalForm({-7, 4, 1}));
    CHECK(d == RationalForm({44, 12, -31}));
    for (int rep = 0; rep < 10; ++rep) {
      const RationalForm a = random_rational_form(2);
      const RationalForm b = random_rational_form(2);
      // disc(s a + t b) = (s a1 + t b1)^2 - 4 (s a2 + t b2)(s a0 + t b0)
      const RationalForm expect({b[1] * b[1] - 4 * b[2] * b[0], 2 * a[1] * b[1] - 4 * (a[2] * b[0] + b[2] * a[0]),
                                 a[1] * a[1] - 4 * a[2] * a[0]});
      if (expect.is_zero()) continue;
      CHECK(pencil_discriminant(a, b) == expect);
    }
  }
  SUBCASE("projective covariance") {
    for (int rep = 0; rep < 10; ++rep) {
      const int m = uniform_int(2, 5);
      const RationalForm q1 = random_rational_form(m);
      const RationalForm q2 = random_rational_form(m);
      Rational a = random_rational(), b = random_rational(), c = random_rational(), d = random_rational();
      if (a * d - b * c == 0) d += 1;
      const RationalForm p1 = q1 * a + q2 * b;
      const RationalForm p2 = q1 * c + q2 * d;
      // s p1 + t p2 = (a s + c t) q1 + (b s + d t) q2
      const RationalForm lhs = pencil_discriminant(p1, p2);
      const RationalForm rhs = substitute_linear(pencil_discriminant(q1, q2), a, c, b, d);
      CHECK(lhs == rhs);
    }
  }
  CHECK(kind_of([] { pencil_discriminant(RationalForm({0, 0, 1}), RationalForm({0, 0, 2})); }) ==
        ErrorKind::DegeneratePencil);
}

TEST_CASE("verdicts") {
  SUBCASE("quintic exceeds") {
    const RealRankReport r = generic_real_rank_test(quintic);
    CHECK(r.verdict == RankVerdict::ExceedsGeneric);
    CHECK(r.generic_rank == 3);
    CHECK_FALSE(r.boundary_component.has_value());
  }
  SUBCASE("cusp sextic") {
    const RealRankReport r = generic_real_rank_test(sextic_cusp);
    CHECK(r.verdict == RankVerdict::OnBoundary);
    REQUIRE(r.boundary_component.has_value());
    CHECK(*r.boundary_component == BoundaryComponent::Cusp);
    CHECK(r.component_in_boundary);
    REQUIRE(r.pencil_discriminant.has_value());
    CHECK(form_discriminant(r.pencil_discriminant->cast<Rational>()) == 0);  // repeated root at t = 0
  }
  SUBCASE("node sextic") {
    const RealRankReport r = generic_real_rank_test(sextic_node);
    CHECK(r.verdict == RankVerdict::OnBoundary);
    REQUIRE(r.boundary_component.has_value());
    CHECK(*r.boundary_component == BoundaryComponent::Node);
  }
  SUBCASE("constructed real decompositions, odd n") {
    for (int rep = 0; rep < 20; ++rep) {
      const int k = uniform_int(2, 6);
      const RationalForm h = power_sum(distinct_rationals(k), 2 * k - 1);
      const RealRankReport r = generic_real_rank_test(h);
      CHECK(r.verdict == RankVerdict::EqualsGeneric);
      CHECK(r.real_roots == k);
    }
  }
  SUBCASE("odd boundary: a form with a repeated apolar root") {
    // x^4 y is the limit of two merging fifth powers, so the apolar cubic of
    // x^4 y + (x + y)^5 is v^2 (u - v), with a double root
    RationalForm h = RationalForm::linear_power(Rational(1), Rational(0), 4) * RationalForm({1, 0});  // y x^4
    h += RationalForm::linear_power(Rational(1), Rational(1), 5);
    const RealRankReport r = generic_real_rank_test(h);
    CHECK(r.verdict == RankVerdict::OnBoundary);
    REQUIRE(r.boundary_component.has_value());
    CHECK(*r.boundary_component == BoundaryComponent::Cusp);
  }
  CHECK(kind_of([] { generic_real_rank_test(RationalForm({1, 0, 1})); }) == ErrorKind::DegenerateInput);
  CHECK(kind_of([] { generic_real_rank_test(RationalForm::monomial(5, 5)); }) == ErrorKind::SubgenericRank);
}

TEST_CASE("boundary classification at the transition") {
  const BinaryForm cusp = sextic_cusp.cast<double>();
  const BinaryForm node = sextic_node.cast<double>();
  const RealRankReport rc = generic_real_rank_test(sextic_cusp);
  const RealRankReport rn = generic_real_rank_test(sextic_node);
  auto classified = [](const RealRankReport& r, const BinaryForm& h) {
    std::vector<BoundaryComponent> out;
    for (const auto& t : r.transitions) {
      if (t.all_real && t.structure) out.push_back(classify_boundary_even(h, t.point));
    }
    return out;
  };
  const auto c = classified(rc, cusp);
  const auto n = classified(rn, node);
  CHECK(std::count(c.begin(), c.end(), BoundaryComponent::Cusp) >= 1);
  CHECK(std::count(n.begin(), n.end(), BoundaryComponent::Node) >= 1);
  // the member with the triple root is u v^3
  const auto [q1, q2] = apolar_pencil_even(sextic_cusp);
  for (const auto& t : rc.transitions) {
    if (classify_boundary_even(cusp, t.point) != BoundaryComponent::Cusp) continue;
    const RationalForm member = q1 * to_rational(t.point.s()) + q2 * to_rational(t.point.t());
    CHECK(projective_diff(member.cast<double>(), BinaryForm({0, 1, 0, 0, 0})) < 1e-12);
  }
}

TEST_CASE("Hankel tangency") {
  // h = (x + y)^6 + (x - y)^6 + (x + 2y)^6 has Hankel rank 3 = k; its pencil
  // is {u g, v g}, g cubic with roots (1:1), (1:-1), (1:2)
  const RationalForm h = power_sum({1, -1, 2}, 6);
  CHECK(hankel_rank(h.cast<double>()) == 3);
  const auto [q1, q2] = apolar_pencil_even(h);
  const RationalForm d = pencil_discriminant(q1, q2);
  const auto roots = real_projective_roots(d.cast<double>(), d);
  REQUIRE_FALSE(roots.empty());
  for (const auto& r : roots) CHECK(classify_boundary_even(h.cast<double>(), r.point) == BoundaryComponent::Hankel);
  const RealRankReport rep = generic_real_rank_test(h);
  if (rep.boundary_component) {
    CHECK(*rep.boundary_component == BoundaryComponent::Hankel);
    CHECK_FALSE(rep.component_in_boundary);
  }
}

TEST_CASE("components match the boundary degree table") {
  for (int k = 3; k <= 6; ++k) {
    const int n = 2 * k;
    const auto degs = real_rank_boundary_degrees(n);
    for (BoundaryComponent c : {BoundaryComponent::Cusp, BoundaryComponent::Node}) {
      const Partition p = boundary_partition(c, n);
      CHECK(std::any_of(degs.components.begin(), degs.components.end(), [&](const auto& d) { return d.lambda == p; }));
    }
  }
  for (int k = 3; k <= 6; ++k) {
    const auto degs = real_rank_boundary_degrees(2 * k - 1);
    CHECK(degs.components.front().lambda == boundary_partition(BoundaryComponent::Cusp, 2 * k - 1));
  }
  CHECK(boundary_partition(BoundaryComponent::Cusp, 6) == Partition({4, 2}));
  CHECK(boundary_partition(BoundaryComponent::Node, 6) == Partition({3, 3}));
  CHECK(boundary_partition(BoundaryComponent::Hankel, 6) == Partition({2, 2, 2}));
  CHECK(to_string(RankVerdict::OnBoundary) == "ON_BOUNDARY");
  CHECK(to_string(BoundaryComponent::Cusp) == "CUSP");
}

TEST_CASE("verdicts are invariant under real linear changes, odd n") {
  int checked = 0;
  for (int rep = 0; rep < 30; ++rep) {
    const int k = uniform_int(2, 5);
    const int n = 2 * k - 1;
    const RationalForm h = rep % 2 == 0 ? random_rational_form(n) : power_sum(distinct_rationals(k), n);
    Rational a = random_rational(), b = random_rational(), c = random_rational(), d = random_rational();
    if (a * d - b * c == 0) continue;
    RealRankReport r1, r2;
    try {
      r1 = generic_real_rank_test(h);
      r2 = generic_real_rank_test(substitute_linear(h, a, b, c, d));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SubgenericRank);
      continue;
    }
    ++checked;
    CHECK(r1.verdict == r2.verdict);
    CHECK(r1.real_roots == r2.real_roots);
  }
  CHECK(checked >= 20);
}
