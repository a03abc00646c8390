#pragma once

#include <cmath>
#include <unordered_map>

#include "gso/oracles.hpp"

namespace gso {

// ---------------------------------------------------------------------------
// Univariate concave handles. Kept as closed descriptions (not bare lambdas)
// so instances can round-trip through files.

struct Concave {
  enum class Kind { sqrt_fn, log1p_fn, piecewise };
  Kind kind = Kind::sqrt_fn;
  double scale = 1.0;
  // piecewise: (x, y) knots with increasing x and nonincreasing slopes;
  // extrapolates with the last slope.
  std::vector<std::pair<double, double>> knots;

  static Concave sqrt_fn(double scale = 1.0) { return {Kind::sqrt_fn, scale, {}}; }
  static Concave log1p_fn(double scale = 1.0) { return {Kind::log1p_fn, scale, {}}; }
  static Concave piecewise(std::vector<std::pair<double, double>> knots) {
    Concave c{Kind::piecewise, 1.0, std::move(knots)};
    require(c.knots.size() >= 2, "Concave::piecewise: need at least two knots");
    double prev_slope = kInf;
    for (std::size_t i = 1; i < c.knots.size(); ++i) {
      const double dx = c.knots[i].first - c.knots[i - 1].first;
      require(dx > 0, "Concave::piecewise: knot x-values must increase");
      const double slope = (c.knots[i].second - c.knots[i - 1].second) / dx;
      require(slope <= prev_slope + 1e-12, "Concave::piecewise: slopes must be nonincreasing");
      prev_slope = slope;
    }
    return c;
  }

  double operator()(double t) const {
    switch (kind) {
      case Kind::sqrt_fn:
        return scale * std::sqrt(std::max(0.0, t));
      case Kind::log1p_fn:
        return scale * std::log1p(std::max(0.0, t));
      case Kind::piecewise: {
        std::size_t i = 1;
        while (i + 1 < knots.size() && t > knots[i].first) ++i;
        const auto& [x0, y0] = knots[i - 1];
        const auto& [x1, y1] = knots[i];
        return y0 + (y1 - y0) / (x1 - x0) * (t - x0);
      }
    }
    return 0.0;
  }

  std::string name() const {
    switch (kind) {
      case Kind::sqrt_fn: return "sqrt";
      case Kind::log1p_fn: return "log1p";
      case Kind::piecewise: return "piecewise";
    }
    return "?";
  }
};

/// F(x) = g(a'x) for nonnegative weights a and a univariate concave g.
struct ConcaveOfLinear {
  std::vector<double> weights;
  Concave g;

  ConcaveOfLinear() = default;
  ConcaveOfLinear(std::vector<double> w, Concave fn) : weights(std::move(w)), g(std::move(fn)) {
    for (double a : weights) require(a >= 0, "ConcaveOfLinear: weights must be nonnegative");
    require(std::isfinite(g(0.0)), "ConcaveOfLinear: g(0) must be finite");
  }

  int n() const { return static_cast<int>(weights.size()); }

  double eval(const SetPoint& x) const {
    require(x.n() == n(), "ConcaveOfLinear: dimension mismatch");
    double t = 0.0;
    for (int i = 0; i < n(); ++i)
      if (x.test(i)) t += weights[i];
    return g(t);
  }
};

inline SetOracle make_concave_of_linear_oracle(const ConcaveOfLinear& spec) {
  return SetOracle(GroundSet(spec.n()), [spec](const SetPoint& x) { return spec.eval(x); });
}

// ---------------------------------------------------------------------------
// Coverage and graph cut.

struct Coverage {
  int universe = 0;
  std::vector<std::uint64_t> sets;  // one bitmask per item

  int n() const { return static_cast<int>(sets.size()); }
  double eval(const SetPoint& x) const {
    std::uint64_t u = 0;
    for (int i = 0; i < n(); ++i)
      if (x.test(i)) u |= sets[i];
    return static_cast<double>(std::popcount(u));
  }
};

inline SetOracle make_coverage_oracle(const Coverage& cov) {
  return SetOracle(GroundSet(cov.n()), [cov](const SetPoint& x) { return cov.eval(x); });
}

struct GraphCut {
  struct Arc {
    int from, to;
    double capacity;
  };
  int n = 0;
  std::vector<Arc> arcs;

  double eval(const SetPoint& x) const {
    double v = 0.0;
    for (const auto& a : arcs)
      if (x.test(a.from) && !x.test(a.to)) v += a.capacity;
    return v;
  }
};

inline SetOracle make_graph_cut_oracle(const GraphCut& g) {
  for (const auto& a : g.arcs) require(a.capacity >= 0, "graph cut: negative capacity");
  return SetOracle(GroundSet(g.n), [g](const SetPoint& x) { return g.eval(x); });
}

// ---------------------------------------------------------------------------
// Discretized readings and empirical entropy.

/// Rectangular table of discretized sensor readings; one column per
/// (location, measurement type) pair, one row per time sample. Rows may carry
/// integer multiplicities.
struct ReadingsTable {
  int n_locations = 0;
  int n_types = 0;
  int bin_count = 0;
  std::vector<std::uint8_t> cells;     // row-major, col = loc * n_types + type
  std::vector<std::uint32_t> weights;  // per-row multiplicity; empty means all-ones

  int n_cols() const { return n_locations * n_types; }
  int n_rows() const {
    return n_cols() == 0 ? 0 : static_cast<int>(cells.size()) / n_cols();
  }
  int col(int loc, int type) const {
    require(loc >= 0 && loc < n_locations && type >= 0 && type < n_types,
            "ReadingsTable: missing column");
    return loc * n_types + type;
  }
  std::uint8_t cell(int row, int c) const { return cells[static_cast<std::size_t>(row) * n_cols() + c]; }
  std::uint64_t weight(int row) const { return weights.empty() ? 1 : weights[row]; }
};

namespace detail {

struct Key128 {
  std::uint64_t a = 0, b = 0;
  bool operator==(const Key128&) const = default;
};
struct Key128Hash {
  std::size_t operator()(const Key128& k) const {
    std::size_t h = std::hash<std::uint64_t>{}(k.a);
    hash_mix(h, std::hash<std::uint64_t>{}(k.b));
    return h;
  }
};

}  // namespace detail

/// Empirical joint entropy (natural log) of a tuple of columns; the empty
/// selection has entropy 0, and empty-support terms contribute 0.
inline double joint_entropy(const ReadingsTable& t, const std::vector<int>& cols) {
  if (cols.empty()) return 0.0;
  require(cols.size() <= 32, "joint_entropy: too many columns selected");
  std::unordered_map<detail::Key128, std::uint64_t, detail::Key128Hash> counts;
  std::uint64_t total = 0;
  for (int r = 0; r < t.n_rows(); ++r) {
    detail::Key128 key;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const std::uint64_t v = t.cell(r, cols[j]);
      if (j < 16)
        key.a |= v << (4 * j);
      else
        key.b |= v << (4 * (j - 16));
    }
    counts[key] += t.weight(r);
    total += t.weight(r);
  }
  if (total == 0) return 0.0;
  double acc = 0.0;
  for (const auto& [key, c] : counts) acc += static_cast<double>(c) * std::log(static_cast<double>(c));
  return std::log(static_cast<double>(total)) - acc / static_cast<double>(total);
}

/// Entropy of the placement plan S: joint entropy of the columns
/// (location i, type q) for i in S_q.
inline double eval_entropy(const ReadingsTable& t, const KPoint& s) {
  std::vector<int> cols;
  for (int i = 0; i < s.n(); ++i)
    if (s.assigned(i)) cols.push_back(t.col(i, s.type_of(i)));
  return joint_entropy(t, cols);
}

inline KSetOracle make_entropy_oracle(const ReadingsTable& t, int k) {
  require(k >= 1 && k <= t.n_types, "entropy oracle: k exceeds available measurement types");
  return KSetOracle(GroundSet(t.n_locations), [t](const KPoint& s) { return eval_entropy(t, s); });
}

/// Entropy restricted to two measurement types, as a biset function.
inline BisetOracle make_entropy_biset_oracle(const ReadingsTable& t) {
  require(t.n_types >= 2, "entropy biset oracle: needs two measurement types");
  return BisetOracle(GroundSet(t.n_locations), [t](const TernaryPoint& x) {
    std::vector<int> cols;
    for (int i = 0; i < x.n(); ++i) {
      if (x[i] == 1) cols.push_back(t.col(i, 0));
      if (x[i] == -1) cols.push_back(t.col(i, 1));
    }
    return joint_entropy(t, cols);
  });
}

// ---------------------------------------------------------------------------
// Feature table and coupled mutual information.

/// Feature matrix with two prediction (class) columns.
struct FeatureTable {
  int n_features = 0;
  std::vector<std::uint8_t> cells;  // row-major, n_features per row
  std::vector<std::uint8_t> class1, class2;
  std::vector<std::uint32_t> weights;

  int n_rows() const { return static_cast<int>(class1.size()); }
  std::uint8_t cell(int row, int f) const {
    return cells[static_cast<std::size_t>(row) * n_features + f];
  }
  std::uint64_t weight(int row) const { return weights.empty() ? 1 : weights[row]; }

  /// Joint entropy over feature columns and optionally a class column.
  double entropy(const std::vector<int>& features, bool with_c1, bool with_c2) const {
    std::unordered_map<detail::Key128, std::uint64_t, detail::Key128Hash> counts;
    std::uint64_t total = 0;
    if (features.empty() && !with_c1 && !with_c2) return 0.0;
    require(features.size() <= 30, "FeatureTable::entropy: too many columns");
    for (int r = 0; r < n_rows(); ++r) {
      detail::Key128 key;
      std::size_t j = 0;
      for (int f : features) {
        const std::uint64_t v = cell(r, f);
        if (j < 16)
          key.a |= v << (4 * j);
        else
          key.b |= v << (4 * (j - 16));
        ++j;
      }
      if (with_c1) key.b |= static_cast<std::uint64_t>(class1[r]) << 56;
      if (with_c2) key.b ^= static_cast<std::uint64_t>(class2[r]) << 60;
      counts[key] += weight(r);
      total += weight(r);
    }
    double acc = 0.0;
    for (const auto& [key, c] : counts)
      acc += static_cast<double>(c) * std::log(static_cast<double>(c));
    return std::log(static_cast<double>(total)) - acc / static_cast<double>(total);
  }
};

/// I(S;C) = H(S1 u S2) - sum_{i in S1} H(i|C1) - sum_{j in S2} H(j|C2),
/// all terms empirical with natural log.
inline double eval_mutual_information(const FeatureTable& t, const TernaryPoint& s) {
  std::vector<int> all;
  for (int i = 0; i < s.n(); ++i)
    if (s[i] != 0) all.push_back(i);
  double value = t.entropy(all, false, false);
  const double h_c1 = t.entropy({}, true, false);
  const double h_c2 = t.entropy({}, false, true);
  for (int i = 0; i < s.n(); ++i) {
    if (s[i] == 1) value -= t.entropy({i}, true, false) - h_c1;
    if (s[i] == -1) value -= t.entropy({i}, false, true) - h_c2;
  }
  return value;
}

inline BisetOracle make_mutual_information_oracle(const FeatureTable& t) {
  return BisetOracle(GroundSet(t.n_features),
                     [t](const TernaryPoint& s) { return eval_mutual_information(t, s); });
}

// ---------------------------------------------------------------------------
// Advertisement influence (mixed-integer lattice).

/// f(x) = sum_t [ 1 - prod_i (1 - p_it)^{x_i} ].
struct AdInfluence {
  std::vector<std::vector<double>> p;  // p[i][t], 0 <= p < 1

  int n_media() const { return static_cast<int>(p.size()); }
  int n_targets() const { return p.empty() ? 0 : static_cast<int>(p[0].size()); }

  double eval(const std::vector<double>& x) const {
    double total = 0.0;
    for (int t = 0; t < n_targets(); ++t) {
      double miss = 1.0;
      for (int i = 0; i < n_media(); ++i) {
        require(p[i][t] >= 0 && p[i][t] < 1, "AdInfluence: probability out of range");
        require(x[i] >= 0, "AdInfluence: volumes must be nonnegative");
        miss *= std::pow(1.0 - p[i][t], x[i]);
      }
      total += 1.0 - miss;
    }
    return total;
  }
};

inline LatticeOracle make_ad_influence_oracle(const AdInfluence& ad) {
  return LatticeOracle(GroundSet(ad.n_media()),
                       [ad](const LatticePoint& x) { return ad.eval(x.vals); });
}

// ---------------------------------------------------------------------------
// Diagonal-covariance mean-risk objective.

/// min -mu'x + Omega * sqrt(a'x) over |X| <= k; the risk term is the
/// concave-of-linear part and the loss term is modular.
struct MeanRiskSpec {
  std::vector<double> mu;
  std::vector<double> a;
  double omega = 1.0;
  int k = 1;

  int n() const { return static_cast<int>(mu.size()); }

  void check() const {
    require(a.size() == mu.size(), "MeanRiskSpec: dimension mismatch");
    for (double v : a) require(v >= 0, "MeanRiskSpec: variance weights must be nonnegative");
    require(omega > 0, "MeanRiskSpec: Omega must be positive");
    require(k >= 1 && k <= n(), "MeanRiskSpec: cardinality cap out of range");
  }

  double eval(const SetPoint& x) const {
    double loss = 0.0, var = 0.0;
    for (int i = 0; i < n(); ++i) {
      if (x.test(i)) {
        loss += mu[i];
        var += a[i];
      }
    }
    return -loss + omega * std::sqrt(var);
  }

  ConcaveOfLinear risk_part() const { return ConcaveOfLinear(a, Concave::sqrt_fn(omega)); }
};

inline SetOracle make_mean_risk_oracle(const MeanRiskSpec& spec) {
  spec.check();
  return SetOracle(GroundSet(spec.n()), [spec](const SetPoint& x) { return spec.eval(x); });
}

// ---------------------------------------------------------------------------
// Seeded instance generators. Same (kind, n, seed, params) always produces
// the same instance.

inline Coverage gen_coverage(int n, std::uint64_t seed, int universe = 0) {
  if (universe <= 0) universe = std::min(60, 2 * n + 4);
  std::mt19937_64 rng = make_rng(seed, 101);
  Coverage cov;
  cov.universe = universe;
  cov.sets.resize(n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t s = 0;
    const int size = 1 + static_cast<int>(rng() % std::max(1, universe / 2));
    for (int t = 0; t < size; ++t) s |= 1ULL << (rng() % universe);
    cov.sets[i] = s;
  }
  return cov;
}

inline std::vector<double> gen_modular(int n, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng = make_rng(seed, 102);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> w(n);
  for (double& v : w) v = dist(rng);
  return w;
}

inline Concave gen_concave(std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed, 103);
  switch (rng() % 3) {
    case 0: return Concave::sqrt_fn(0.5 + (rng() % 100) / 50.0);
    case 1: return Concave::log1p_fn(0.5 + (rng() % 100) / 50.0);
    default: {
      // concave piecewise-linear with decreasing random slopes
      std::uniform_real_distribution<double> dr(0.1, 1.0);
      double x = 0.0, y = 0.0, slope = 2.0 + dr(rng);
      std::vector<std::pair<double, double>> knots{{x, y}};
      for (int i = 0; i < 4; ++i) {
        const double dx = 1.0 + 3.0 * dr(rng);
        x += dx;
        y += slope * dx;
        knots.emplace_back(x, y);
        slope *= 0.3 + 0.5 * dr(rng);
      }
      return Concave::piecewise(std::move(knots));
    }
  }
}

/// Concave with slopes running from positive to negative so that minima and
/// maxima over prefix weights are interior rather than trivially at zero.
inline Concave gen_concave_mixed(std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed, 111);
  std::uniform_real_distribution<double> dr(0.2, 1.0);
  double x = 0.0, y = 0.0;
  double slope = 1.0 + 2.0 * dr(rng);
  std::vector<std::pair<double, double>> knots{{x, y}};
  for (int i = 0; i < 5; ++i) {
    const double dx = 0.8 + 3.0 * dr(rng);
    x += dx;
    y += slope * dx;
    knots.emplace_back(x, y);
    slope -= 0.7 + 1.2 * dr(rng);  // strictly decreasing, eventually negative
  }
  return Concave::piecewise(std::move(knots));
}

inline ConcaveOfLinear gen_concave_of_linear(int n, std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed, 104);
  std::vector<double> w(n);
  for (double& v : w) v = static_cast<double>(rng() % 30) / 2.0;
  return ConcaveOfLinear(std::move(w), gen_concave(seed));
}

inline GraphCut gen_graph_cut(int n, std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed, 105);
  std::uniform_real_distribution<double> cap(0.0, 3.0);
  GraphCut g;
  g.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rng() % 3 == 0) g.arcs.push_back({i, j, cap(rng)});
  return g;
}

inline MeanRiskSpec gen_mean_risk(int n, int k, std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed, 106);
  std::uniform_real_distribution<double> mu_d(-1.0, 3.0), a_d(0.0, 6.0);
  MeanRiskSpec spec;
  spec.mu.resize(n);
  spec.a.resize(n);
  for (double& v : spec.mu) v = mu_d(rng);
  for (double& v : spec.a) v = a_d(rng);
  spec.omega = 1.0 + (rng() % 200) / 100.0;
  spec.k = k;
  spec.check();
  return spec;
}

/// Raw continuous readings from a latent-factor model; every column mixes a
/// global factor, a per-type factor, and location noise, so columns are
/// correlated the way co-located sensors are.
struct RawReadings {
  int n_locations = 0;
  int n_types = 0;
  std::vector<double> cells;  // row-major, col = loc * n_types + type

  int n_cols() const { return n_locations * n_types; }
  int n_rows() const { return n_cols() == 0 ? 0 : static_cast<int>(cells.size()) / n_cols(); }
};

inline RawReadings gen_raw_readings(int n_locations, int n_types, int n_rows,
                                    std::uint64_t seed) {
  require(n_locations > 0 && n_types > 0 && n_rows > 0, "gen_raw_readings: dims must be positive");
  std::mt19937_64 rng = make_rng(seed, 107);
  std::normal_distribution<double> noise(0.0, 1.0);
  RawReadings raw;
  raw.n_locations = n_locations;
  raw.n_types = n_types;
  raw.cells.resize(static_cast<std::size_t>(n_rows) * n_locations * n_types);
  std::vector<double> loc_gain(n_locations), loc_base(n_locations);
  for (int l = 0; l < n_locations; ++l) {
    loc_gain[l] = 0.5 + (rng() % 100) / 100.0;
    loc_base[l] = noise(rng);
  }
  for (int r = 0; r < n_rows; ++r) {
    const double global = noise(rng);
    std::vector<double> type_factor(n_types);
    for (double& v : type_factor) v = noise(rng);
    for (int l = 0; l < n_locations; ++l)
      for (int q = 0; q < n_types; ++q)
        raw.cells[(static_cast<std::size_t>(r) * n_locations + l) * n_types + q] =
            loc_base[l] + loc_gain[l] * (0.8 * global + 0.7 * type_factor[q]) + 0.4 * noise(rng);
  }
  return raw;
}

/// Equal-width binning per column.
inline ReadingsTable discretize(const RawReadings& raw, int bins) {
  require(bins >= 2 && bins <= 16, "discretize: bins must be in [2,16]");
  ReadingsTable t;
  t.n_locations = raw.n_locations;
  t.n_types = raw.n_types;
  t.bin_count = bins;
  const int rows = raw.n_rows(), cols = raw.n_cols();
  t.cells.resize(raw.cells.size());
  for (int c = 0; c < cols; ++c) {
    double lo = kInf, hi = -kInf;
    for (int r = 0; r < rows; ++r) {
      lo = std::min(lo, raw.cells[static_cast<std::size_t>(r) * cols + c]);
      hi = std::max(hi, raw.cells[static_cast<std::size_t>(r) * cols + c]);
    }
    const double width = (hi > lo) ? (hi - lo) : 1.0;
    for (int r = 0; r < rows; ++r) {
      const double v = raw.cells[static_cast<std::size_t>(r) * cols + c];
      int b = static_cast<int>((v - lo) / width * bins);
      b = std::clamp(b, 0, bins - 1);
      t.cells[static_cast<std::size_t>(r) * cols + c] = static_cast<std::uint8_t>(b);
    }
  }
  return t;
}

inline ReadingsTable gen_readings_table(int n_locations, int n_types, int n_rows, int bins,
                                        std::uint64_t seed) {
  return discretize(gen_raw_readings(n_locations, n_types, n_rows, seed), bins);
}

/// Feature table whose empirical distribution is exactly a mixture
/// p(c1,c2) * prod_i p(f_i | c_{tau(i)}): rows enumerate the full support
/// with integer multiplicities, so the conditional-independence structure
/// the coupled-selection objective assumes holds exactly.
inline FeatureTable gen_feature_table(int n_features, std::uint64_t seed, int feature_bins = 2,
                                      int class_bins = 2) {
  require(n_features >= 1 && n_features <= 10, "gen_feature_table: supported n is 1..10");
  std::mt19937_64 rng = make_rng(seed, 108);
  FeatureTable t;
  t.n_features = n_features;

  std::vector<std::uint32_t> class_w(class_bins * class_bins);
  for (auto& w : class_w) w = 1 + rng() % 3;
  // each feature is tied to one class variable
  std::vector<int> target(n_features);
  std::vector<std::vector<std::uint32_t>> cond(n_features);
  for (int f = 0; f < n_features; ++f) {
    target[f] = static_cast<int>(rng() % 2);
    cond[f].resize(static_cast<std::size_t>(feature_bins) * class_bins);
    for (auto& w : cond[f]) w = 1 + rng() % 3;
  }

  std::vector<int> fvals(n_features, 0);
  std::function<void(int, std::uint64_t, int, int)> emit = [&](int f, std::uint64_t mult, int c1,
                                                               int c2) {
    if (f == n_features) {
      for (int v : fvals) t.cells.push_back(static_cast<std::uint8_t>(v));
      t.class1.push_back(static_cast<std::uint8_t>(c1));
      t.class2.push_back(static_cast<std::uint8_t>(c2));
      t.weights.push_back(static_cast<std::uint32_t>(mult));
      return;
    }
    const int cls = target[f] == 0 ? c1 : c2;
    for (int v = 0; v < feature_bins; ++v) {
      fvals[f] = v;
      emit(f + 1, mult * cond[f][static_cast<std::size_t>(v) * class_bins + cls], c1, c2);
    }
  };
  for (int c1 = 0; c1 < class_bins; ++c1)
    for (int c2 = 0; c2 < class_bins; ++c2)
      emit(0, class_w[c1 * class_bins + c2], c1, c2);
  return t;
}

/// Random bisubmodular oracle: monotone coverage applied to S1 u S2 plus a
/// signed modular part with c1_i + c2_i >= 0.
struct BisubInstance {
  Coverage cov;
  std::vector<double> c_plus, c_minus;

  int n() const { return cov.n(); }
  double eval(const TernaryPoint& x) const {
    SetPoint support(x.n());
    double modular = 0.0;
    for (int i = 0; i < x.n(); ++i) {
      if (x[i] == 1) {
        support = support.with(i);
        modular += c_plus[i];
      } else if (x[i] == -1) {
        support = support.with(i);
        modular += c_minus[i];
      }
    }
    return cov.eval(support) + modular;
  }
};

inline BisubInstance gen_bisubmodular(int n, std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed, 109);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  BisubInstance inst;
  inst.cov = gen_coverage(n, splitmix64(seed));
  inst.c_plus.resize(n);
  inst.c_minus.resize(n);
  for (int i = 0; i < n; ++i) {
    const double a = dist(rng), b = dist(rng);
    inst.c_plus[i] = a;
    inst.c_minus[i] = std::max(b, -a);  // keeps c_plus + c_minus >= 0
  }
  return inst;
}

inline BisetOracle make_bisub_oracle(const BisubInstance& inst) {
  return BisetOracle(GroundSet(inst.n()), [inst](const TernaryPoint& x) { return inst.eval(x); });
}

inline AdInfluence gen_ad_influence(int n_media, int n_targets, std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed, 110);
  std::uniform_real_distribution<double> dist(0.05, 0.8);
  AdInfluence ad;
  ad.p.assign(n_media, std::vector<double>(n_targets));
  for (auto& row : ad.p)
    for (double& v : row) v = dist(rng);
  return ad;
}

}  // namespace gso
