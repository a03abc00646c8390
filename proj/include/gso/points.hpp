#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gso/common.hpp"

namespace gso {

/// Finite ground set N = {0, 1, ..., n-1}. Labels are display-only.
struct GroundSet {
  int n = 0;
  std::vector<std::string> labels;

  explicit GroundSet(int n_ = 0, std::vector<std::string> labels_ = {})
      : n(n_), labels(std::move(labels_)) {
    require(n >= 1, "GroundSet: n must be >= 1");
    require(labels.empty() || static_cast<int>(labels.size()) == n,
            "GroundSet: labels length must equal n");
  }

  std::string label(int i) const {
    return labels.empty() ? std::to_string(i) : labels[i];
  }
};

/// Subset of the ground set, stored as a bitmask. Desk scale: n <= 62.
class SetPoint {
 public:
  SetPoint() = default;
  explicit SetPoint(int n, std::uint64_t mask = 0) : n_(n), mask_(mask) {
    require(n >= 0 && n <= 62, "SetPoint: n out of supported range");
    require(n == 62 || mask < (1ULL << n), "SetPoint: mask has bits beyond n");
  }

  static SetPoint from_indicator(const std::vector<int>& bits) {
    SetPoint p(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
      require(bits[i] == 0 || bits[i] == 1, "SetPoint: entries must be 0/1");
      if (bits[i]) p.mask_ |= 1ULL << i;
    }
    return p;
  }

  static SetPoint from_items(int n, const std::vector<int>& items) {
    SetPoint p(n);
    for (int i : items) {
      require(i >= 0 && i < n, "SetPoint: item out of range");
      p.mask_ |= 1ULL << i;
    }
    return p;
  }

  int n() const { return n_; }
  std::uint64_t mask() const { return mask_; }
  bool test(int i) const { return (mask_ >> i) & 1ULL; }
  int count() const { return std::popcount(mask_); }

  SetPoint with(int i) const { return SetPoint(n_, mask_ | (1ULL << i)); }
  SetPoint without(int i) const { return SetPoint(n_, mask_ & ~(1ULL << i)); }

  std::vector<int> items() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  std::vector<double> to_vector() const {
    std::vector<double> v(n_, 0.0);
    for (int i = 0; i < n_; ++i) v[i] = test(i) ? 1.0 : 0.0;
    return v;
  }

  bool operator==(const SetPoint& o) const { return n_ == o.n_ && mask_ == o.mask_; }

 private:
  int n_ = 0;
  std::uint64_t mask_ = 0;
};

/// k-set: assignment of each item to one of k types or to none.
/// Pairwise disjointness of the type blocks is structural (an item holds at
/// most one assignment).
class KPoint {
 public:
  static constexpr std::int8_t kNone = -1;

  KPoint() = default;
  KPoint(int n, int k) : n_(n), k_(k), assign_(n, kNone) {
    require(n >= 1 && k >= 1, "KPoint: need n >= 1, k >= 1");
  }

  int n() const { return n_; }
  int k() const { return k_; }

  /// Type of item i, or kNone.
  std::int8_t type_of(int i) const { return assign_[i]; }
  bool assigned(int i) const { return assign_[i] != kNone; }

  void assign(int i, int q) {
    require(q >= 0 && q < k_, "KPoint: type out of range");
    assign_[i] = static_cast<std::int8_t>(q);
  }
  void clear(int i) { assign_[i] = kNone; }

  KPoint with(int i, int q) const {
    KPoint p = *this;
    p.assign(i, q);
    return p;
  }

  bool empty() const {
    for (auto a : assign_)
      if (a != kNone) return false;
    return true;
  }

  int count() const {
    int c = 0;
    for (auto a : assign_)
      if (a != kNone) ++c;
    return c;
  }

  int count_type(int q) const {
    int c = 0;
    for (auto a : assign_)
      if (a == q) ++c;
    return c;
  }

  std::vector<int> block(int q) const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (assign_[i] == q) out.push_back(i);
    return out;
  }

  /// Binary block encoding x^q_i, laid out as q*n + i.
  std::vector<double> to_vector() const {
    std::vector<double> v(static_cast<std::size_t>(n_) * k_, 0.0);
    for (int i = 0; i < n_; ++i)
      if (assign_[i] != kNone) v[static_cast<std::size_t>(assign_[i]) * n_ + i] = 1.0;
    return v;
  }

  /// Base-(k+1) integer encoding; requires (k+1)^n to fit in 64 bits.
  std::uint64_t key() const {
    std::uint64_t key = 0;
    const std::uint64_t base = static_cast<std::uint64_t>(k_) + 1;
    for (int i = n_ - 1; i >= 0; --i) {
      key = key * base + static_cast<std::uint64_t>(assign_[i] + 1);
    }
    return key;
  }

  static KPoint from_key(std::uint64_t key, int n, int k) {
    KPoint p(n, k);
    const std::uint64_t base = static_cast<std::uint64_t>(k) + 1;
    for (int i = 0; i < n; ++i) {
      p.assign_[i] = static_cast<std::int8_t>(static_cast<int>(key % base) - 1);
      key /= base;
    }
    return p;
  }

  bool operator==(const KPoint& o) const {
    return n_ == o.n_ && k_ == o.k_ && assign_ == o.assign_;
  }

 private:
  int n_ = 0, k_ = 1;
  std::vector<std::int8_t> assign_;
};

/// Ternary characteristic vector of a biset: +1 in S1, -1 in S2, 0 otherwise.
class TernaryPoint {
 public:
  TernaryPoint() = default;
  explicit TernaryPoint(int n) : vals_(n, 0) {}
  explicit TernaryPoint(std::vector<int> vals) {
    for (int v : vals)
      require(v == -1 || v == 0 || v == 1, "TernaryPoint: entries must be in {-1,0,1}");
    vals_.assign(vals.begin(), vals.end());
  }

  int n() const { return static_cast<int>(vals_.size()); }
  int operator[](int i) const { return vals_[i]; }
  void set(int i, int v) {
    require(v == -1 || v == 0 || v == 1, "TernaryPoint: entries must be in {-1,0,1}");
    vals_[i] = static_cast<std::int8_t>(v);
  }

  TernaryPoint with(int i, int v) const {
    TernaryPoint p = *this;
    p.set(i, v);
    return p;
  }

  SetPoint plus_set() const { return side_set(+1); }
  SetPoint minus_set() const { return side_set(-1); }

  static TernaryPoint from_biset(int n, const std::vector<int>& s1, const std::vector<int>& s2) {
    TernaryPoint p(n);
    for (int i : s1) p.set(i, 1);
    for (int i : s2) {
      require(p[i] == 0, "TernaryPoint: biset components must be disjoint");
      p.set(i, -1);
    }
    return p;
  }

  std::vector<double> to_vector() const {
    std::vector<double> v(vals_.size());
    for (std::size_t i = 0; i < vals_.size(); ++i) v[i] = vals_[i];
    return v;
  }

  std::uint64_t key() const {
    std::uint64_t key = 0;
    for (int i = n() - 1; i >= 0; --i) key = key * 3 + static_cast<std::uint64_t>(vals_[i] + 1);
    return key;
  }

  static TernaryPoint from_key(std::uint64_t key, int n) {
    TernaryPoint p(n);
    for (int i = 0; i < n; ++i) {
      p.vals_[i] = static_cast<std::int8_t>(static_cast<int>(key % 3) - 1);
      key /= 3;
    }
    return p;
  }

  bool operator==(const TernaryPoint& o) const { return vals_ == o.vals_; }

 private:
  SetPoint side_set(int sign) const {
    SetPoint s(n());
    for (int i = 0; i < n(); ++i)
      if (vals_[i] == sign) s = s.with(i);
    return s;
  }

  std::vector<std::int8_t> vals_;
};

/// Point of a mixed-integer lattice box: values plus a per-coordinate
/// integrality mark.
struct LatticePoint {
  std::vector<double> vals;
  std::vector<bool> integer_mask;

  LatticePoint() = default;
  LatticePoint(std::vector<double> v, std::vector<bool> mask)
      : vals(std::move(v)), integer_mask(std::move(mask)) {
    require(vals.size() == integer_mask.size(), "LatticePoint: size mismatch");
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (integer_mask[i])
        require(vals[i] == std::floor(vals[i]), "LatticePoint: masked coordinate not integral");
    }
  }

  int dim() const { return static_cast<int>(vals.size()); }

  bool operator==(const LatticePoint& o) const {
    return vals == o.vals && integer_mask == o.integer_mask;
  }
};

/// Permutation of {0..n-1}; the order in which items enter a greedy chain.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> order) : order_(std::move(order)) {
    std::vector<bool> seen(order_.size(), false);
    for (int v : order_) {
      require(v >= 0 && v < static_cast<int>(order_.size()) && !seen[v],
              "Permutation: order must be a rearrangement of 0..n-1");
      seen[v] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> o(n);
    for (int i = 0; i < n; ++i) o[i] = i;
    return Permutation(std::move(o));
  }

  /// Accepts the 1-based convention used in written material.
  static Permutation from_one_based(const std::vector<int>& order) {
    std::vector<int> o(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) o[i] = order[i] - 1;
    return Permutation(std::move(o));
  }

  /// Sorts values descending; ties broken by ascending index. This is the
  /// single tie rule shared by the extension and every cut generator.
  static Permutation by_descending(const std::vector<double>& x) {
    std::vector<int> o(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) o[i] = static_cast<int>(i);
    std::stable_sort(o.begin(), o.end(), [&](int a, int b) { return x[a] > x[b]; });
    return Permutation(std::move(o));
  }

  /// Same rule applied to |x|; used by the signed greedy separation.
  static Permutation by_descending_abs(const std::vector<double>& x) {
    std::vector<int> o(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) o[i] = static_cast<int>(i);
    std::stable_sort(o.begin(), o.end(),
                     [&](int a, int b) { return std::fabs(x[a]) > std::fabs(x[b]); });
    return Permutation(std::move(o));
  }

  int n() const { return static_cast<int>(order_.size()); }
  int operator[](int pos) const { return order_[pos]; }
  const std::vector<int>& order() const { return order_; }

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < n(); ++i) {
      if (i) s += ",";
      s += std::to_string(order_[i]);
    }
    return s + ")";
  }

 private:
  std::vector<int> order_;
};

}  // namespace gso
