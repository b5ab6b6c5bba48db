#include "crl/forms.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "internal/roots.hpp"

namespace crl {

ProjectivePoint::ProjectivePoint(double s, double t) {
  const double m = std::max(std::abs(s), std::abs(t));
  if (m == 0.0 || !std::isfinite(m)) throw Error(ErrorKind::DegenerateInput, "(0:0) is not a projective point");
  s /= m;
  t /= m;
  if (s < 0.0 || (s == 0.0 && t < 0.0)) {
    s = -s;
    t = -t;
  }
  s_ = s == 0.0 ? 0.0 : s;  // no negative zero
  t_ = t == 0.0 ? 0.0 : t;
}

double ProjectivePoint::affine_value() const {
  if (t_ == 0.0) return std::numeric_limits<double>::infinity();
  return s_ / t_;
}

double ProjectivePoint::angle() const {
  double a = std::atan2(t_, s_);
  if (a < 0.0) a += std::numbers::pi;
  if (a >= std::numbers::pi) a -= std::numbers::pi;
  return a;
}

double ProjectivePoint::distance(const ProjectivePoint& o) const {
  return std::abs(s_ * o.t_ - t_ * o.s_) / (std::hypot(s_, t_) * std::hypot(o.s_, o.t_));
}

BinaryForm rotate(const BinaryForm& f, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return substitute_linear(f, c, -s, s, c);
}

double max_abs_coeff(const BinaryForm& f) {
  double m = 0.0;
  for (double c : f.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

RationalForm parse_form(const std::string& text, bool scaled) {
  std::vector<Rational> c;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      c.push_back(parse_rational(piece));
    } catch (const Error&) {
      throw Error(ErrorKind::ParseError,
                  "coefficient " + std::to_string(c.size()) + " ('" + piece + "') at column " + std::to_string(start + 1));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (scaled) return RationalForm::from_scaled(std::span<const Rational>(c));
  return RationalForm(std::move(c));
}

std::string to_string(const BinaryForm& f, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision);
  const int n = f.degree();
  bool first = true;
  for (int i = n; i >= 0; --i) {
    const double c = f[i];
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1.0 && n > 0;
    if (!unit) os << mag;
    if (i > 0) os << 'x' << (i > 1 ? "^" + std::to_string(i) : "");
    if (n - i > 0) os << 'y' << (n - i > 1 ? "^" + std::to_string(n - i) : "");
  }
  if (first) os << '0';
  return os.str();
}

// ---------------------------------------------------------------------------

bool RootCluster::is_real(double tol) const {
  // Normalised with the dominant coordinate equal to 1.
  return std::abs(s.imag()) <= tol && std::abs(t.imag()) <= tol;
}

ProjectivePoint RootCluster::real_point() const { return ProjectivePoint(s.real(), t.real()); }

namespace {

using cd = std::complex<double>;

struct Chart {
  // p(z) for the t = 1 chart, q(w) for the s = 1 chart (ascending).
  std::vector<double> p;
  std::vector<double> q;
};

struct PPoint {
  cd s;
  cd t;
};

PPoint normalize(cd s, cd t) {
  if (std::abs(s) <= std::abs(t)) return {s / t, cd(1.0)};
  return {cd(1.0), t / s};
}

double chordal(const PPoint& a, const PPoint& b) {
  const double na = std::sqrt(std::norm(a.s) + std::norm(a.t));
  const double nb = std::sqrt(std::norm(b.s) + std::norm(b.t));
  return std::abs(a.s * b.t - a.t * b.s) / (na * nb);
}

// |P^(j)(z)| relative to the size of its terms.
double relative_derivative(const std::vector<double>& c, cd z, int j) {
  cd value(0.0);
  double size = 0.0;
  const double az = std::abs(z);
  for (int i = j; i < static_cast<int>(c.size()); ++i) {
    double fall = 1.0;
    for (int r = 0; r < j; ++r) fall *= i - r;
    value += c[i] * fall * std::pow(z, i - j);
    size += std::abs(c[i]) * fall * std::pow(az, i - j);
  }
  if (size == 0.0) return 0.0;
  return std::abs(value) / size;
}

PPoint centre(const std::vector<PPoint>& pts, const std::vector<int>& members) {
  const bool z_chart = std::abs(pts[members[0]].s) <= std::abs(pts[members[0]].t);
  cd sum(0.0);
  for (int m : members) {
    const PPoint& p = pts[m];
    sum += z_chart ? p.s / p.t : p.t / p.s;
  }
  const cd mean = sum / static_cast<double>(members.size());
  return z_chart ? normalize(mean, cd(1.0)) : normalize(cd(1.0), mean);
}

// An m-fold root is a simple root of P^(m-1); Newton on it recovers the
// centre to working precision, which the plain mean of the cluster does not.
PPoint refine_centre(const Chart& chart, const PPoint& c, int m) {
  const bool z_chart = c.t == cd(1.0);
  std::vector<double> d = z_chart ? chart.p : chart.q;
  for (int j = 0; j < m - 1 && d.size() > 1; ++j) {
    for (std::size_t i = 1; i < d.size(); ++i) d[i - 1] = d[i] * static_cast<double>(i);
    d.pop_back();
  }
  if (d.size() < 2) return c;
  auto eval = [&](cd z, cd& v, cd& dv) {
    v = 0.0;
    dv = 0.0;
    for (std::size_t i = d.size(); i-- > 0;) {
      dv = dv * z + v;
      v = v * z + d[i];
    }
  };
  cd z = z_chart ? c.s : c.t;
  cd v, dv;
  eval(z, v, dv);
  const cd start = z;
  for (int it = 0; it < 20 && std::abs(dv) > 0.0; ++it) {
    const cd next = z - v / dv;
    cd vn, dvn;
    eval(next, vn, dvn);
    if (!(std::abs(vn) < std::abs(v))) break;
    z = next;
    v = vn;
    dv = dvn;
  }
  // stay inside the cluster, otherwise keep the mean
  if (std::abs(z - start) > 1e-2 * std::max(1.0, std::abs(start))) return c;
  return z_chart ? normalize(z, cd(1.0)) : normalize(cd(1.0), z);
}

bool validates(const Chart& chart, const PPoint& c, int m, double tol) {
  const bool z_chart = c.t == cd(1.0);
  const std::vector<double>& poly = z_chart ? chart.p : chart.q;
  const cd z = z_chart ? c.s : c.t;
  for (int j = 0; j < m; ++j) {
    if (relative_derivative(poly, z, j) > tol) return false;
  }
  return true;
}

std::vector<std::vector<int>> components(const std::vector<PPoint>& pts, const std::vector<int>& members,
                                         double threshold) {
  std::vector<int> parent(members.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (chordal(pts[members[i]], pts[members[j]]) <= threshold) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < members.size(); ++i) groups[find(static_cast<int>(i))].push_back(members[i]);
  std::vector<std::vector<int>> out;
  for (auto& [_, g] : groups) out.push_back(std::move(g));
  return out;
}

void split(const Chart& chart, const std::vector<PPoint>& pts, const std::vector<int>& members, double threshold,
           double tol, std::vector<RootCluster>& out) {
  for (const auto& comp : components(pts, members, threshold)) {
    const int m = static_cast<int>(comp.size());
    const PPoint c = m > 1 ? refine_centre(chart, centre(pts, comp), m) : centre(pts, comp);
    if (m == 1 || validates(chart, c, m, tol)) {
      RootCluster rc;
      rc.s = c.s;
      rc.t = c.t;
      rc.multiplicity = m;
      out.push_back(rc);
    } else if (threshold < 1e-12) {
      for (int i : comp) {
        RootCluster rc;
        rc.s = pts[i].s;
        rc.t = pts[i].t;
        out.push_back(rc);
      }
    } else {
      split(chart, pts, comp, threshold / 8.0, tol, out);
    }
  }
}

}  // namespace

std::vector<RootCluster> root_clusters(const BinaryForm& f, double cluster_tol) {
  if (f.is_zero()) throw Error(ErrorKind::DegenerateInput, "zero form has no root set");
  const int n = f.degree();
  const auto& c = f.coeffs();
  int low = 0;
  while (c[low] == 0.0) ++low;  // x^low divides f: root (0:1)
  int high = 0;
  while (c[n - high] == 0.0) ++high;  // y^high divides f: root (1:0)

  std::vector<RootCluster> out;
  if (low > 0) out.push_back({cd(0.0), cd(1.0), low});
  if (high > 0) out.push_back({cd(1.0), cd(0.0), high});

  Chart chart;
  chart.p.assign(c.begin() + low, c.begin() + (n - high) + 1);
  chart.q.assign(chart.p.rbegin(), chart.p.rend());
  const int m = static_cast<int>(chart.p.size()) - 1;
  if (m == 0) return out;

  std::vector<PPoint> pts;
  if (std::abs(chart.p.back()) >= std::abs(chart.p.front())) {
    for (cd z : internal::polynomial_roots(chart.p)) pts.push_back(normalize(z, cd(1.0)));
  } else {
    for (cd w : internal::polynomial_roots(chart.q)) pts.push_back(normalize(cd(1.0), w));
  }
  std::vector<int> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  split(chart, pts, all, 0.25, cluster_tol, out);

  for (auto& rc : out) {
    // Snap tiny imaginary noise so that real clusters compare as real.
    if (std::abs(rc.s.imag()) <= 1e-14) rc.s = rc.s.real();
    if (std::abs(rc.t.imag()) <= 1e-14) rc.t = rc.t.real();
  }
  return out;
}

Partition multiplicity_structure(const BinaryForm& f, double cluster_tol) {
  auto structure = [&](double tol) {
    std::vector<int> parts;
    for (const auto& rc : root_clusters(f, tol)) parts.push_back(rc.multiplicity);
    return Partition(std::move(parts));
  };
  const Partition tight = structure(cluster_tol / 2.0);
  const Partition loose = structure(cluster_tol * 2.0);
  if (!(tight == loose)) {
    throw Error(ErrorKind::AmbiguousStructure, "root clustering changes between " + tight.to_string() + " and " +
                                                   loose.to_string() + " within a factor 2 of the tolerance");
  }
  return structure(cluster_tol);
}

}  // namespace crl
