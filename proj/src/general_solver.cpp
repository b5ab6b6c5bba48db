#include "crl/general_solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <thread>

#include "crl/error.hpp"
#include "crl/hook_solver.hpp"

namespace crl {

namespace {

BinaryForm power(const BinaryForm& l, int p) {
  BinaryForm out({1.0});
  for (int i = 0; i < p; ++i) out = out * l;
  return out;
}

BinaryForm chart_linear(double r, bool s_chart) { return s_chart ? BinaryForm({-1.0, r}) : BinaryForm({-r, 1.0}); }
BinaryForm chart_derivative(bool s_chart) { return s_chart ? BinaryForm({0.0, 1.0}) : BinaryForm({-1.0, 0.0}); }

BinaryForm product_except(const std::vector<BinaryForm>& f, std::size_t i, std::size_t j = static_cast<std::size_t>(-1)) {
  BinaryForm out({1.0});
  for (std::size_t k = 0; k < f.size(); ++k)
    if (k != i && k != j) out = out * f[k];
  return out;
}

Eigen::MatrixXd whiten(const Eigen::MatrixXd& hess, const Eigen::MatrixXd& metric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (metric + metric.transpose()));
  const Eigen::VectorXd ev = es.eigenvalues();
  if (ev.size() == 0 || ev(0) <= 1e-14 * ev.cwiseAbs().maxCoeff()) return Eigen::MatrixXd::Zero(hess.rows(), hess.cols());
  const Eigen::MatrixXd w = es.eigenvectors() * ev.cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  Eigen::MatrixXd out = w * hess * w;
  return 0.5 * (out + out.transpose());
}

// Move roots with |r| > 1 to the other chart; alpha absorbs r^lambda.
void rechart(ChartPoint& x, const Partition& lambda) {
  for (std::size_t i = 0; i < x.r.size(); ++i) {
    if (std::abs(x.r[i]) > 1.25) {
      x.alpha *= std::pow(x.r[i], lambda.parts()[i]);
      x.r[i] = 1.0 / x.r[i];
      x.s_chart[i] = !x.s_chart[i];
    }
  }
}

struct Converged {
  ChartPoint x;
  double grad_norm = 0.0;
};

// Newton polish on the gradient system; returns the final gradient norm.
double polish(const BinaryForm& h, const Partition& lambda, ChartPoint& x, DistanceJet& jet, double grad_limit) {
  const int dim = 1 + static_cast<int>(x.r.size());
  double gnorm = jet.gradient.norm();
  for (int it = 0; it < 8 && gnorm > grad_limit; ++it) {
    const Eigen::VectorXd step = jet.hessian.fullPivLu().solve(-jet.gradient);
    if (!step.allFinite()) break;
    ChartPoint trial = x;
    trial.alpha += step(0);
    for (int i = 1; i < dim; ++i) trial.r[i - 1] += step(i);
    DistanceJet tj = distance_jet(h, trial, lambda);
    if (!(tj.gradient.norm() < gnorm)) break;
    x = trial;
    jet = std::move(tj);
    gnorm = jet.gradient.norm();
  }
  return gnorm;
}

void apply_step(ChartPoint& x, const Eigen::VectorXd& step) {
  x.alpha += step(0);
  for (Eigen::Index i = 1; i < step.size(); ++i) x.r[i - 1] += step(i);
}

// Levenberg-Marquardt on the residual h - f: descends D, so it settles in
// local minima.
std::optional<Converged> descend_minimum(const BinaryForm& h, const Partition& lambda, ChartPoint x,
                                         const GeneralOptions& opts, double grad_limit) {
  DistanceJet jet = distance_jet(h, x, lambda);
  double mu = 1e-3;
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (jet.gradient.norm() <= grad_limit) break;
    bool accepted = false;
    for (int tries = 0; tries < 16 && !accepted; ++tries) {
      Eigen::MatrixXd a = jet.metric;
      a.diagonal() += mu * jet.metric.diagonal();
      a.diagonal().array() += 1e-300;
      const Eigen::VectorXd step = a.ldlt().solve(-jet.gradient);
      if (!step.allFinite()) {
        mu *= 10.0;
        continue;
      }
      ChartPoint trial = x;
      apply_step(trial, step);
      DistanceJet tj = distance_jet(h, trial, lambda);
      if (std::isfinite(tj.value) && tj.value < jet.value) {
        x = trial;
        jet = std::move(tj);
        mu = std::max(mu / 5.0, 1e-12);
        accepted = true;
      } else {
        mu *= 6.0;
      }
    }
    if (!accepted) break;
    const auto charts = x.s_chart;
    rechart(x, lambda);
    if (charts != x.s_chart) jet = distance_jet(h, x, lambda);
  }
  if (polish(h, lambda, x, jet, grad_limit) <= grad_limit) return Converged{x, jet.gradient.norm()};
  return std::nullopt;
}

// Levenberg-Marquardt on grad D = 0; reaches saddles as well.
std::optional<Converged> descend_stationary(const BinaryForm& h, const Partition& lambda, ChartPoint x,
                                            const GeneralOptions& opts, double grad_limit) {
  DistanceJet jet = distance_jet(h, x, lambda);
  double gnorm = jet.gradient.norm();
  double mu = 1e-3;
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (gnorm <= grad_limit) return Converged{x, gnorm};
    const Eigen::MatrixXd jtj = jet.hessian.transpose() * jet.hessian;
    const Eigen::VectorXd rhs = -(jet.hessian.transpose() * jet.gradient);
    bool accepted = false;
    for (int tries = 0; tries < 12 && !accepted; ++tries) {
      Eigen::MatrixXd a = jtj;
      a.diagonal().array() += mu * std::max(jtj.diagonal().maxCoeff(), 1e-300);
      const Eigen::VectorXd step = a.ldlt().solve(rhs);
      if (!step.allFinite()) {
        mu *= 10.0;
        continue;
      }
      ChartPoint trial = x;
      apply_step(trial, step);
      DistanceJet tj = distance_jet(h, trial, lambda);
      const double tn = tj.gradient.norm();
      if (std::isfinite(tn) && tn < gnorm) {
        x = trial;
        jet = std::move(tj);
        gnorm = tn;
        mu = std::max(mu / 5.0, 1e-15);
        accepted = true;
      } else {
        mu *= 6.0;
      }
    }
    if (!accepted) break;
    const auto charts = x.s_chart;
    rechart(x, lambda);
    if (charts != x.s_chart) {
      jet = distance_jet(h, x, lambda);
      gnorm = jet.gradient.norm();
    }
  }
  if (polish(h, lambda, x, jet, grad_limit) <= grad_limit) return Converged{x, jet.gradient.norm()};
  return std::nullopt;
}

ChartPoint random_start(const BinaryForm& h, const Partition& lambda, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  PrimalParams p;
  for (int i = 0; i < lambda.length(); ++i) {
    const double th = angle(rng);
    p.roots.emplace_back(std::cos(th), std::sin(th));
  }
  p.alpha = 1.0;
  const BinaryForm base = primal_form(p, lambda);
  const double nn = bombieri_norm_sq(base);
  p.alpha = nn > 0 ? apolar_pairing(h, base) / nn : 1.0;
  if (p.alpha == 0.0) p.alpha = 1.0;
  ChartPoint x = ChartPoint::from_params(p, lambda);
  return x;
}

// Canonical order: roots sorted by angle within groups of equal parts.
PrimalParams canonical(PrimalParams p, const Partition& lambda) {
  const auto& parts = lambda.parts();
  std::size_t i = 0;
  while (i < parts.size()) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    std::sort(p.roots.begin() + static_cast<long>(i), p.roots.begin() + static_cast<long>(j),
              [](const ProjectivePoint& a, const ProjectivePoint& b) { return a.angle() < b.angle(); });
    i = j;
  }
  return p;
}

}  // namespace

BinaryForm primal_form(const PrimalParams& params, const Partition& lambda) {
  if (static_cast<int>(params.roots.size()) != lambda.length()) {
    throw Error(ErrorKind::SizeMismatch, "one root per part is required");
  }
  BinaryForm f({params.alpha});
  for (int i = 0; i < lambda.length(); ++i) {
    const ProjectivePoint& p = params.roots[i];
    f = f * power(BinaryForm({-p.s(), p.t()}), lambda.parts()[i]);
  }
  return f;
}

double distance_sq(const BinaryForm& h, const PrimalParams& params, const Partition& lambda) {
  if (h.degree() != lambda.size()) throw Error(ErrorKind::DegreeMismatch, "deg h must equal |lambda|");
  return bombieri_norm_sq(h - primal_form(params, lambda));
}

ChartPoint ChartPoint::from_params(const PrimalParams& p, const Partition& lambda) {
  ChartPoint x;
  x.alpha = p.alpha;
  for (int i = 0; i < lambda.length(); ++i) {
    const ProjectivePoint& q = p.roots[i];
    const int e = lambda.parts()[i];
    if (std::abs(q.t()) >= std::abs(q.s())) {
      // t x - s y = t (x - (s/t) y)
      x.r.push_back(q.s() / q.t());
      x.s_chart.push_back(0);
      x.alpha *= std::pow(q.t(), e);
    } else {
      // t x - s y = s ((t/s) x - y)
      x.r.push_back(q.t() / q.s());
      x.s_chart.push_back(1);
      x.alpha *= std::pow(q.s(), e);
    }
  }
  return x;
}

PrimalParams ChartPoint::to_params(const Partition& lambda) const {
  PrimalParams p;
  p.alpha = alpha;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const int e = lambda.parts()[i];
    // Normalisation of ProjectivePoint rescales the linear form by 1/m and
    // possibly flips its sign; alpha compensates.
    // Coordinates below 1e-14 are zero at double precision; snapping them
    // keeps the coordinate points exact for root clustering.
    const double ri = std::abs(r[i]) < 1e-14 ? 0.0 : r[i];
    const double s = s_chart[i] ? 1.0 : ri;
    const double t = s_chart[i] ? ri : 1.0;
    ProjectivePoint q(s, t);
    const double factor = q.t() != 0.0 ? t / q.t() : s / q.s();
    p.alpha *= std::pow(factor, e);
    p.roots.push_back(q);
  }
  return p;
}

DistanceJet distance_jet(const BinaryForm& h, const ChartPoint& x, const Partition& lambda) {
  const int d = lambda.length();
  const int dim = d + 1;
  std::vector<BinaryForm> pw(d), dpw(d), ddpw(d);
  for (int i = 0; i < d; ++i) {
    const int e = lambda.parts()[i];
    const BinaryForm l = chart_linear(x.r[i], x.s_chart[i]);
    const BinaryForm dl = chart_derivative(x.s_chart[i]);
    pw[i] = power(l, e);
    dpw[i] = static_cast<double>(e) * (power(l, e - 1) * dl);
    ddpw[i] = e >= 2 ? static_cast<double>(e * (e - 1)) * (power(l, e - 2) * dl * dl) : BinaryForm::zero(e);
  }
  const BinaryForm prod = product_except(pw, static_cast<std::size_t>(-1));
  const BinaryForm residual = h - x.alpha * prod;

  std::vector<BinaryForm> d1(static_cast<std::size_t>(dim));
  d1[0] = prod;
  for (int i = 0; i < d; ++i) d1[1 + i] = x.alpha * (dpw[i] * product_except(pw, i));

  DistanceJet jet;
  jet.value = bombieri_norm_sq(residual);
  jet.gradient.resize(dim);
  jet.metric.resize(dim, dim);
  for (int i = 0; i < dim; ++i) {
    jet.gradient(i) = -2.0 * apolar_pairing(residual, d1[i]);
    for (int j = 0; j <= i; ++j) jet.metric(i, j) = jet.metric(j, i) = 2.0 * apolar_pairing(d1[i], d1[j]);
  }
  jet.hessian = jet.metric;
  for (int i = 0; i < d; ++i) {
    // d^2 F / d alpha d r_i
    const BinaryForm ar = dpw[i] * product_except(pw, i);
    const double v = 2.0 * apolar_pairing(residual, ar);
    jet.hessian(0, 1 + i) -= v;
    jet.hessian(1 + i, 0) -= v;
    const BinaryForm rr = x.alpha * (ddpw[i] * product_except(pw, i));
    jet.hessian(1 + i, 1 + i) -= 2.0 * apolar_pairing(residual, rr);
    for (int j = 0; j < i; ++j) {
      const BinaryForm rs = x.alpha * (dpw[i] * dpw[j] * product_except(pw, i, j));
      const double w = 2.0 * apolar_pairing(residual, rs);
      jet.hessian(1 + i, 1 + j) -= w;
      jet.hessian(1 + j, 1 + i) -= w;
    }
  }
  return jet;
}

BinaryForm dual_point(const BinaryForm& h, const BinaryForm& f, const Partition& lambda, double tol) {
  const BinaryForm g = h - f;
  if (g.is_zero()) return g;
  // f reproduces h to the precision Newton stops at: h is on the locus and
  // the residual is noise
  const double scale = std::max(std::sqrt(bombieri_norm_sq(h)), std::sqrt(bombieri_norm_sq(f)));
  if (std::sqrt(bombieri_norm_sq(g)) <= std::sqrt(std::numeric_limits<double>::epsilon()) * scale) {
    return BinaryForm::zero(h.degree());
  }
  if (!verify_conormal(f, g, lambda, tol)) throw Error(ErrorKind::NotConormal, "(f, h - f) is not conormal");
  return g;
}

GadDecomposition gad_decompose(const BinaryForm& g, const std::vector<std::pair<ProjectivePoint, int>>& roots,
                               double tol) {
  const int n = g.degree();
  std::vector<BinaryForm> basis;
  std::vector<std::pair<int, int>> owner;  // (term index, cofactor monomial)
  GadDecomposition out;
  for (const auto& [p, part] : roots) {
    if (part < 2) continue;
    if (part > n) throw Error(ErrorKind::DegreeMismatch, "part exceeds the degree");
    const int term = static_cast<int>(out.terms.size());
    out.terms.push_back({p, part, BinaryForm::zero(part - 2)});
    const BinaryForm lp = power(BinaryForm({p.t(), p.s()}), n - part + 2);
    for (int j = 0; j <= part - 2; ++j) {
      basis.push_back(lp * BinaryForm::monomial(part - 2, j));
      owner.emplace_back(term, j);
    }
  }
  const double gnorm = std::sqrt(bombieri_norm_sq(g));
  if (basis.empty()) {
    out.residual = gnorm > 0 ? 1.0 : 0.0;
    if (gnorm > 0) throw Error(ErrorKind::NotOnDual, "no parts >= 2 to carry g");
    return out;
  }
  // Least squares in the Bombieri metric.
  const int k = static_cast<int>(basis.size());
  Eigen::MatrixXd a(n + 1, k);
  Eigen::VectorXd b(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double w = 1.0 / std::sqrt(binomial_d(n, i));
    b(i) = g[i] * w;
    for (int j = 0; j < k; ++j) a(i, j) = basis[j][i] * w;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-12);
  if (qr.rank() < k) throw Error(ErrorKind::NotOnDual, "cofactors are not unique");
  const Eigen::VectorXd c = qr.solve(b);
  for (int j = 0; j < k; ++j) out.terms[owner[j].first].cofactor[owner[j].second] = c(j);
  BinaryForm sum = BinaryForm::zero(n);
  for (int j = 0; j < k; ++j) sum += c(j) * basis[j];
  const double res = std::sqrt(bombieri_norm_sq(g - sum));
  out.residual = gnorm > 0 ? res / gnorm : res;
  if (out.residual > tol) {
    throw Error(ErrorKind::NotOnDual, "g is not a generalised additive decomposition at these roots (residual " +
                                          std::to_string(out.residual) + ")");
  }
  return out;
}

std::vector<CriticalDecomposition> solve_general(const BinaryForm& h, const Partition& lambda,
                                                 const GeneralOptions& opts, GeneralStats* stats) {
  GeneralStats local;
  GeneralStats& st = stats ? *stats : local;
  st = GeneralStats{};
  if (h.degree() != lambda.size()) throw Error(ErrorKind::DegreeMismatch, "deg h must equal |lambda|");
  if (lambda.largest() < 2) throw Error(ErrorKind::DegenerateInput, "all-ones partition: every form is on the locus");
  const double hsq = bombieri_norm_sq(h);
  const double hnorm = std::sqrt(hsq);
  const double grad_limit = opts.grad_tol * std::max(1.0, hsq);

  // Two descents per start: one to a minimum, one on the gradient system.
  std::vector<std::optional<Converged>> results(2 * static_cast<std::size_t>(std::max(opts.starts, 0)));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < opts.starts; i = next++) {
      std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                        static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      const ChartPoint start = random_start(h, lambda, rng);
      try {
        results[2 * i] = descend_minimum(h, lambda, start, opts, grad_limit);
      } catch (const Error&) {
        results[2 * i].reset();
      }
      try {
        results[2 * i + 1] = descend_stationary(h, lambda, start, opts, grad_limit);
      } catch (const Error&) {
        results[2 * i + 1].reset();
      }
    }
  };
  const int nthreads = std::max(1, std::min(opts.threads, opts.starts));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<CriticalDecomposition> out;
  std::vector<BinaryForm> seen;
  for (const auto& r : results) {
    if (!r) continue;
    ++st.converged;
    const PrimalParams p = canonical(r->x.to_params(lambda), lambda);
    const BinaryForm f = primal_form(p, lambda);
    if (std::sqrt(bombieri_norm_sq(f)) <= 1e-8 * hnorm) {
      ++st.vanishing;
      continue;
    }
    bool merged = false;
    for (std::size_t i = 0; i < p.roots.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < p.roots.size() && !merged; ++j)
        merged = p.roots[i].distance(p.roots[j]) < opts.merge_tol;
    if (merged) {
      ++st.merged;
      continue;
    }
    bool duplicate = false;
    for (const auto& s : seen) {
      if (std::sqrt(bombieri_norm_sq(f - s)) <= opts.dedupe_tol * hnorm) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) {
      ++st.duplicates;
      continue;
    }
    seen.push_back(f);

    CriticalDecomposition d;
    d.roots = p.roots;
    d.parts = lambda.parts();
    d.alpha = p.alpha;
    d.f = f;
    try {
      d.g = dual_point(h, f, lambda, opts.conormal_tol);
    } catch (const Error&) {
      ++st.rejected;  // converged, but not at a smooth conormal point
      continue;
    }
    std::vector<std::pair<ProjectivePoint, int>> gad_roots;
    for (std::size_t i = 0; i < p.roots.size(); ++i) gad_roots.emplace_back(p.roots[i], lambda.parts()[i]);
    GadDecomposition gad;
    try {
      gad = gad_decompose(d.g, gad_roots, opts.conormal_tol);
    } catch (const Error&) {
      ++st.rejected;
      continue;
    }
    BinaryForm g_rep = BinaryForm::zero(h.degree());
    for (const auto& term : gad.terms) {
      g_rep += power(BinaryForm({term.root.t(), term.root.s()}), h.degree() - term.part + 2) * term.cofactor;
    }
    d.residuals.reconstruction = max_abs_coeff(h - d.f - g_rep);
    d.residuals.orthogonality = std::abs(apolar_pairing(d.f, d.g));
    d.dist_sq_primal = bombieri_norm_sq(d.g);
    d.dist_sq_dual = bombieri_norm_sq(d.f);
    d.residuals.pythagoras = std::abs(d.dist_sq_primal + d.dist_sq_dual - hsq);
    const DistanceJet jet = distance_jet(h, ChartPoint::from_params(p, lambda), lambda);
    d.residuals.kernel = jet.gradient.norm();
    const Eigen::MatrixXd w = whiten(jet.hessian, jet.metric);
    d.primal_spectrum = symmetric_eigenvalues(w);
    d.class_primal = classify_stationary(w, opts.singular_tol);
    d.class_dual = StationaryClass::Undecided;
    out.push_back(std::move(d));
  }
  if (out.empty()) throw Error(ErrorKind::NoCriticalPointFound, "no start converged to a critical point");
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.dist_sq_primal < b.dist_sq_primal; });
  return out;
}

}  // namespace crl
