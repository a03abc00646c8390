#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "gso/points.hpp"

namespace gso {

namespace detail {

// Cache keys. Set/k-set/ternary points have exact integer encodings; lattice
// points key on their full coordinate vector (hashing alone would risk
// collisions).
template <class Point>
struct OracleKey;

template <>
struct OracleKey<SetPoint> {
  using type = std::uint64_t;
  static type key(const SetPoint& p) { return p.mask(); }
};

template <>
struct OracleKey<KPoint> {
  using type = std::uint64_t;
  static type key(const KPoint& p) { return p.key(); }
};

template <>
struct OracleKey<TernaryPoint> {
  using type = std::uint64_t;
  static type key(const TernaryPoint& p) { return p.key(); }
};

struct LatticeKeyHash {
  std::size_t operator()(const std::vector<double>& v) const { return hash_doubles(v); }
};

template <>
struct OracleKey<LatticePoint> {
  using type = std::vector<double>;
  static type key(const LatticePoint& p) { return p.vals; }
};

template <class Key>
struct KeyHash : std::hash<Key> {};
template <>
struct KeyHash<std::vector<double>> : LatticeKeyHash {};

}  // namespace detail

/// Evaluation-counted value oracle over one point kind.
///
/// Memoization is on by default so exponential-enumeration verifiers stay
/// affordable; call_count() reports cache misses only. The underlying map is
/// deterministic and immutable apart from inserts, guarded by a mutex so
/// verifier shards may evaluate concurrently.
template <class Point>
class ValueOracle {
 public:
  using Fn = std::function<double(const Point&)>;

  ValueOracle() = default;
  ValueOracle(GroundSet gs, Fn fn, bool memoize = true)
      : state_(std::make_shared<State>()) {
    state_->gs = std::move(gs);
    state_->fn = std::move(fn);
    state_->memoize = memoize;
  }

  double operator()(const Point& p) const {
    State& st = *state_;
    if (!st.memoize) {
      st.misses.fetch_add(1, std::memory_order_relaxed);
      return st.fn(p) - st.shift;
    }
    const auto key = detail::OracleKey<Point>::key(p);
    {
      std::lock_guard<std::mutex> lock(st.mu);
      auto it = st.cache.find(key);
      if (it != st.cache.end()) return it->second - st.shift;
    }
    const double raw = st.fn(p);
    {
      std::lock_guard<std::mutex> lock(st.mu);
      auto [it, inserted] = st.cache.emplace(key, raw);
      if (inserted) st.misses.fetch_add(1, std::memory_order_relaxed);
      return it->second - st.shift;
    }
  }

  const GroundSet& ground() const { return state_->gs; }
  int n() const { return state_->gs.n; }

  long long call_count() const { return state_->misses.load(std::memory_order_relaxed); }

  bool normalized() const { return state_->normalized; }

  /// Shifts values so the empty point evaluates to exactly 0. Marginal
  /// returns are unaffected.
  void normalize(const Point& empty_point) {
    State& st = *state_;
    const double at_empty = (*this)(empty_point);
    st.shift += at_empty;
    st.normalized = true;
  }

 private:
  struct State {
    GroundSet gs{1};
    Fn fn;
    bool memoize = true;
    bool normalized = false;
    double shift = 0.0;
    mutable std::mutex mu;
    mutable std::unordered_map<typename detail::OracleKey<Point>::type, double,
                               detail::KeyHash<typename detail::OracleKey<Point>::type>>
        cache;
    mutable std::atomic<long long> misses{0};
  };
  std::shared_ptr<State> state_;
};

using SetOracle = ValueOracle<SetPoint>;
using KSetOracle = ValueOracle<KPoint>;
using BisetOracle = ValueOracle<TernaryPoint>;
using LatticeOracle = ValueOracle<LatticePoint>;

inline void normalize_set_oracle(SetOracle& f) { f.normalize(SetPoint(f.n())); }

inline KSetOracle make_kset_oracle(GroundSet gs, int k,
                                   std::function<double(const KPoint&)> fn,
                                   bool memoize = true) {
  return KSetOracle(std::move(gs), std::move(fn), memoize);
}

/// Views a biset oracle as the k = 2 instance of a k-set oracle.
inline KSetOracle as_two_set_oracle(const BisetOracle& f) {
  const int n = f.n();
  return KSetOracle(f.ground(), [f, n](const KPoint& p) {
    TernaryPoint t(n);
    for (int i = 0; i < n; ++i) {
      if (p.type_of(i) == 0) t.set(i, 1);
      if (p.type_of(i) == 1) t.set(i, -1);
    }
    return f(t);
  });
}

/// Restricts a lattice oracle on a {0,1}^V box to the induced set function.
inline SetOracle as_set_oracle(const LatticeOracle& f) {
  const int n = f.n();
  return SetOracle(f.ground(), [f, n](const SetPoint& s) {
    LatticePoint p(s.to_vector(), std::vector<bool>(n, true));
    return f(p);
  });
}

}  // namespace gso
