#include "crl/partition.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

#include "crl/error.hpp"

namespace crl {

namespace {

std::int64_t factorial(int n) {
  std::int64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

constexpr int kMaxSearchParts = 20;

// Can the multiset `pieces` be split into groups summing to the entries of
// `targets`? Exhaustive backtracking; both are small.
bool assign_pieces(std::vector<int>& remaining, const std::vector<int>& pieces, std::size_t idx) {
  if (idx == pieces.size()) {
    return std::all_of(remaining.begin(), remaining.end(), [](int r) { return r == 0; });
  }
  const int piece = pieces[idx];
  for (std::size_t j = 0; j < remaining.size(); ++j) {
    if (remaining[j] < piece) continue;
    // Skip targets with the same remaining capacity already tried.
    bool seen = false;
    for (std::size_t q = 0; q < j; ++q) {
      if (remaining[q] == remaining[j]) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    remaining[j] -= piece;
    if (assign_pieces(remaining, pieces, idx + 1)) {
      remaining[j] += piece;
      return true;
    }
    remaining[j] += piece;
  }
  return false;
}

bool refines_parts(const std::vector<int>& fine, const std::vector<int>& coarse) {
  if (std::accumulate(fine.begin(), fine.end(), 0) != std::accumulate(coarse.begin(), coarse.end(), 0)) {
    return false;
  }
  if (fine.size() < coarse.size()) return false;
  if (fine.size() > kMaxSearchParts) throw Error(ErrorKind::OutOfRange, "partition too long for exhaustive search");
  std::vector<int> pieces = fine;
  std::sort(pieces.rbegin(), pieces.rend());
  std::vector<int> remaining = coarse;
  return assign_pieces(remaining, pieces, 0);
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p < 1) throw Error(ErrorKind::OutOfRange, "partition parts must be >= 1");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::hook(int n, int a) {
  if (a < 1 || a > n) throw Error(ErrorKind::IndexError, "hook needs 1 <= a <= n");
  std::vector<int> parts(static_cast<std::size_t>(n - a), 1);
  parts.push_back(a);
  return Partition(std::move(parts));
}

Partition Partition::parse(const std::string& text) {
  std::vector<int> parts;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, "partition '" + text + "' column " + std::to_string(i + 1) + ": " + why);
  };
  auto read_int = [&]() {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a positive integer");
    int v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > 100000) fail("part too large");
      ++i;
    }
    return v;
  };
  auto skip_sep = [&]() {
    while (i < text.size() && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
  };
  skip_sep();
  while (i < text.size()) {
    const int part = read_int();
    int count = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      count = read_int();
    }
    if (part < 1) fail("parts must be >= 1");
    parts.insert(parts.end(), static_cast<std::size_t>(count), part);
    skip_sep();
  }
  if (parts.empty()) fail("empty partition");
  return Partition(std::move(parts));
}

int Partition::multiplicity(int j) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), j));
}

bool Partition::is_hook() const {
  return std::count_if(parts_.begin(), parts_.end(), [](int p) { return p > 1; }) <= 1;
}

int Partition::hook_part() const {
  if (!is_hook()) throw Error(ErrorKind::NotHook, to_string() + " is not a hook");
  return largest();
}

std::string Partition::label() const {
  const bool wide = largest() >= 10;
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (wide && i > 0) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::int64_t hilbert_degree(const Partition& lambda) {
  std::int64_t r = factorial(lambda.length());
  for (int j = 1; j <= lambda.largest(); ++j) r /= factorial(lambda.multiplicity(j));
  for (int p : lambda.parts()) r *= p;
  return r;
}

std::int64_t oeding_dual_degree(const Partition& lambda) {
  if (lambda.multiplicity(1) > 0) {
    throw Error(ErrorKind::NotHypersurface, "dual of " + lambda.to_string() + " is not a hypersurface (m_1 > 0)");
  }
  std::int64_t r = factorial(lambda.length() + 1);
  for (int j = 2; j <= lambda.largest(); ++j) r /= factorial(lambda.multiplicity(j));
  for (int p : lambda.parts()) r *= (p - 1);
  return r;
}

Partition hook_dual(const Partition& lambda) {
  if (!lambda.is_hook() || lambda.largest() < 2) {
    throw Error(ErrorKind::NotHook, lambda.to_string() + " is not a hook with a >= 2");
  }
  const int n = lambda.size();
  const int a = lambda.largest();
  return Partition::hook(n, n - a + 2);
}

std::vector<Partition> dual_hooks(const Partition& lambda) {
  std::vector<Partition> out;
  const int n = lambda.size();
  for (int p : lambda.parts()) {
    if (p >= 2) out.push_back(Partition::hook(n, n - p + 2));
  }
  return out;
}

bool refines(const Partition& mu, const Partition& lambda) {
  if (mu.size() != lambda.size()) throw Error(ErrorKind::SizeMismatch, "refines needs |mu| = |lambda|");
  return refines_parts(mu.parts(), lambda.parts());
}

std::vector<int> reduced_parts(const Partition& lambda) {
  std::vector<int> out;
  for (int p : lambda.parts()) {
    if (p >= 2) out.push_back(p - 1);
  }
  return out;
}

bool dual_contains(const Partition& lambda, const Partition& mu) {
  if (mu.size() != lambda.size()) throw Error(ErrorKind::SizeMismatch, "dual_contains needs |mu| = |lambda|");
  const std::vector<int> lp = reduced_parts(lambda);
  const std::vector<int> mp = reduced_parts(mu);
  const int lsum = std::accumulate(lp.begin(), lp.end(), 0);
  const int msum = std::accumulate(mp.begin(), mp.end(), 0);
  if (lsum > msum) return false;
  if (mp.size() > static_cast<std::size_t>(kMaxSearchParts)) {
    throw Error(ErrorKind::OutOfRange, "partition too long for exhaustive search");
  }
  if (lp.empty()) return true;
  // lambda'' = lambda' with extra amounts added to its parts, total msum.
  // Enumerate distributions of the surplus over the parts of lambda'.
  const int surplus = msum - lsum;
  std::vector<int> grown = lp;
  std::function<bool(std::size_t, int)> rec = [&](std::size_t idx, int left) -> bool {
    if (idx + 1 == grown.size()) {
      grown[idx] = lp[idx] + left;
      return refines_parts(mp, grown);
    }
    for (int add = 0; add <= left; ++add) {
      grown[idx] = lp[idx] + add;
      if (rec(idx + 1, left - add)) return true;
    }
    return false;
  };
  return rec(0, surplus);
}

EdDegrees ed_degrees_hook(int n, int a) {
  if (a < 2 || a > n) throw Error(ErrorKind::IndexError, "ed_degrees_hook needs 2 <= a <= n");
  const std::int64_t generic = static_cast<std::int64_t>(2 * a - 1) * n - 2LL * (a - 1) * (a - 1);
  return EdDegrees{n, generic};
}

std::pair<std::int64_t, std::int64_t> polar_classes_hook(int n, int a) {
  if (a < 2 || a > n) throw Error(ErrorKind::IndexError, "polar_classes_hook needs 2 <= a <= n");
  return {static_cast<std::int64_t>(a) * (n - a + 1), static_cast<std::int64_t>(n - a + 2) * (a - 1)};
}

std::int64_t secant_hypersurface_degree(int k, int n, int a) {
  if (k < 1 || a < 2 || a > n || n != k * (n - a + 2)) {
    throw Error(ErrorKind::NotHypersurfaceCase, "secant variety is a hypersurface only when n = k(n-a+2)");
  }
  std::int64_t r = k + 1;
  for (int i = 0; i < k; ++i) r *= (n - a + 1);
  return r;
}

RealRankBoundaryDegrees real_rank_boundary_degrees(int n) {
  if (n < 5) throw Error(ErrorKind::OutOfRange, "real rank boundary degrees need n >= 5");
  RealRankBoundaryDegrees out;
  out.n = n;
  if (n % 2 == 1) {
    const int k = (n + 1) / 2;
    out.k = k;
    std::vector<int> parts(static_cast<std::size_t>(k - 2), 2);
    parts.push_back(3);
    out.components.push_back({Partition(parts), 2LL * k * (k - 1)});
  } else {
    const int k = n / 2;
    out.k = k;
    std::vector<int> node(static_cast<std::size_t>(k - 3), 2);
    node.push_back(3);
    node.push_back(3);
    std::vector<int> cusp(static_cast<std::size_t>(k - 2), 2);
    cusp.push_back(4);
    out.components.push_back({Partition(node), 2LL * k * (k - 1) * (k - 2)});
    out.components.push_back({Partition(cusp), 3LL * k * (k - 1)});
    out.hankel_degree = k + 1;
  }
  return out;
}

}  // namespace crl
