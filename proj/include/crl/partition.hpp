#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crl {

/// A multiplicity pattern lambda = (l_1 >= ... >= l_d >= 1) of n = sum l_i.
class Partition {
 public:
  Partition() = default;
  /// Parts in any order; sorted into weakly decreasing order. Throws
  /// OutOfRange on a part < 1.
  explicit Partition(std::vector<int> parts);

  /// {1^(n-a), a}.
  static Partition hook(int n, int a);
  /// Accepts "3,2,1,1", "3 2 1 1" and exponent notation "1^3 4".
  static Partition parse(const std::string& text);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return n_; }          // n
  int length() const { return static_cast<int>(parts_.size()); }  // d
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }  // p
  /// m_j = #{i : l_i = j}; m(0) is always 0.
  int multiplicity(int j) const;
  bool is_hook() const;
  /// The a of a hook {1^(n-a), a}; 1 for the all-ones partition.
  int hook_part() const;

  /// Compact label as in the census tables: "321", "2211"; parts >= 10 are
  /// comma separated.
  std::string label() const;
  std::string to_string() const;  // "3,2,1"

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// Every partition of n, in reverse lexicographic order.
std::vector<Partition> all_partitions(int n);

struct EdDegrees {
  std::int64_t special = 0;
  std::int64_t generic = 0;
  friend bool operator==(const EdDegrees&, const EdDegrees&) = default;
};

std::int64_t hilbert_degree(const Partition& lambda);
/// Throws NotHypersurface when lambda has a part equal to 1.
std::int64_t oeding_dual_degree(const Partition& lambda);

/// {1^(n-a), a} -> {1^(a-2), n-a+2}. Throws NotHook.
Partition hook_dual(const Partition& lambda);
/// The hooks {1^(l_i-2), n-l_i+2} over parts l_i >= 2, in part order.
std::vector<Partition> dual_hooks(const Partition& lambda);

/// True iff mu refines lambda: the parts of mu can be grouped so that every
/// part of lambda is the sum of one group.
bool refines(const Partition& mu, const Partition& lambda);
/// True iff the dual of Delta_lambda is contained in the dual of Delta_mu.
bool dual_contains(const Partition& lambda, const Partition& mu);
/// lambda' = parts reduced by one, ones dropped (possibly empty).
std::vector<int> reduced_parts(const Partition& lambda);

EdDegrees ed_degrees_hook(int n, int a);
/// (delta_{a-1}, delta_a) = (a(n-a+1), (n-a+2)(a-1)).
std::pair<std::int64_t, std::int64_t> polar_classes_hook(int n, int a);

struct Table1Row {
  Partition lambda;
  std::vector<std::int64_t> multidegree;  // delta_1 .. delta_n
  EdDegrees ed;
  std::vector<Partition> hooks;
};

/// Census rows for 2 <= n <= 7 (all partitions other than 1^n).
const std::vector<Table1Row>& table1();
/// Throws OutOfTable when |lambda| > 7 or the row is absent.
const Table1Row& table1_lookup(const Partition& lambda);

/// Degree (k+1)(n-a+1)^k of the k-th secant of the a-fold root locus, when it
/// is a hypersurface (n = k(n-a+2)); throws NotHypersurfaceCase otherwise.
std::int64_t secant_hypersurface_degree(int k, int n, int a);

struct BoundaryComponentDegree {
  Partition lambda;
  std::int64_t degree = 0;
};

struct RealRankBoundaryDegrees {
  int n = 0;
  int k = 0;
  std::vector<BoundaryComponentDegree> components;
  /// Degree k+1 Hankel determinant for even n; not part of the boundary.
  std::optional<std::int64_t> hankel_degree;
};

/// Throws OutOfRange for n < 5.
RealRankBoundaryDegrees real_rank_boundary_degrees(int n);

}  // namespace crl
