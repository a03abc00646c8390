#pragma once

#include <map>
#include <set>

#include "gso/extensions.hpp"
#include "gso/functions.hpp"

namespace gso {

enum class CutFamily { EPI, SI, ALI, LEPI, SUBMAX, KSUB, EPBM, MIR };

inline const char* to_string(CutFamily f) {
  switch (f) {
    case CutFamily::EPI: return "EPI";
    case CutFamily::SI: return "SI";
    case CutFamily::ALI: return "ALI";
    case CutFamily::LEPI: return "LEPI";
    case CutFamily::SUBMAX: return "SUBMAX";
    case CutFamily::KSUB: return "KSUB";
    case CutFamily::EPBM: return "EPBM";
    case CutFamily::MIR: return "MIR";
  }
  return "?";
}

inline CutFamily cut_family_from_string(const std::string& s) {
  for (CutFamily f : {CutFamily::EPI, CutFamily::SI, CutFamily::ALI, CutFamily::LEPI,
                      CutFamily::SUBMAX, CutFamily::KSUB, CutFamily::EPBM, CutFamily::MIR})
    if (s == to_string(f)) return f;
  throw GsoError("unknown cut family: " + s);
}

/// One linear valid inequality in (x, w).
///
/// epigraph:  w >= pi'x + beta
/// hypograph: w <= pi'x + beta
/// pure:      pi'x <= beta            (no w term; the MIR family)
struct Cut {
  enum class Orientation { epigraph, hypograph, pure };

  CutFamily family = CutFamily::EPI;
  Orientation orientation = Orientation::epigraph;
  std::vector<double> pi;
  double beta = 0.0;
  std::string provenance;
  bool verified = true;  // permissive MIR mode marks cuts it cannot certify

  double lhs_value(const std::vector<double>& x) const {
    double dot = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) dot += pi[i] * x[i];
    return dot;
  }
};

inline const char* to_string(Cut::Orientation o) {
  switch (o) {
    case Cut::Orientation::epigraph: return "epi";
    case Cut::Orientation::hypograph: return "hypo";
    case Cut::Orientation::pure: return "pure";
  }
  return "?";
}

/// Violation of a cut at a point, positive when the point is cut off.
inline double cut_violation(const Cut& c, const std::vector<double>& x, double w) {
  const double dot = c.lhs_value(x) + c.beta;
  switch (c.orientation) {
    case Cut::Orientation::epigraph: return dot - w;
    case Cut::Orientation::hypograph: return w - dot;
    case Cut::Orientation::pure: return c.lhs_value(x) - c.beta;
  }
  return 0.0;
}

/// Maps a cut into a model row. Variable i of the cut space sits at model
/// column x_offset + i; pass w_col < 0 for pure cuts.
inline LinearRow cut_to_row(const Cut& c, int w_col, int x_offset) {
  LinearRow row;
  row.name = std::string(to_string(c.family)) + ":" + c.provenance;
  if (c.orientation == Cut::Orientation::pure) {
    for (std::size_t i = 0; i < c.pi.size(); ++i)
      if (c.pi[i] != 0.0) row.terms.emplace_back(x_offset + static_cast<int>(i), c.pi[i]);
    row.relation = 'L';
    row.rhs = c.beta;
    return row;
  }
  require(w_col >= 0, "cut_to_row: cut has a w term but no w column");
  row.terms.emplace_back(w_col, 1.0);
  for (std::size_t i = 0; i < c.pi.size(); ++i)
    if (c.pi[i] != 0.0) row.terms.emplace_back(x_offset + static_cast<int>(i), -c.pi[i]);
  row.relation = (c.orientation == Cut::Orientation::epigraph) ? 'G' : 'L';
  row.rhs = c.beta;
  return row;
}

/// For masters over a ternary x modeled as y1 - y2.
inline LinearRow cut_to_row_split(const Cut& c, int w_col, int y1_offset, int y2_offset) {
  LinearRow row;
  row.name = std::string(to_string(c.family)) + ":" + c.provenance;
  row.terms.emplace_back(w_col, 1.0);
  for (std::size_t i = 0; i < c.pi.size(); ++i) {
    if (c.pi[i] == 0.0) continue;
    row.terms.emplace_back(y1_offset + static_cast<int>(i), -c.pi[i]);
    row.terms.emplace_back(y2_offset + static_cast<int>(i), c.pi[i]);
  }
  row.relation = (c.orientation == Cut::Orientation::epigraph) ? 'G' : 'L';
  row.rhs = c.beta;
  return row;
}

/// Ordered pool with (family, provenance) dedup.
class CutPool {
 public:
  bool add(Cut cut) {
    if (!seen_.emplace(static_cast<int>(cut.family), cut.provenance).second) return false;
    cuts_.push_back(std::move(cut));
    return true;
  }
  const std::vector<Cut>& cuts() const { return cuts_; }
  std::size_t size() const { return cuts_.size(); }

  std::map<CutFamily, long> count_by_family() const {
    std::map<CutFamily, long> out;
    for (const auto& c : cuts_) ++out[c.family];
    return out;
  }

  /// Line format: family; orientation; beta; pi_1 ... pi_d; provenance
  void serialize(std::ostream& os) const {
    for (const auto& c : cuts_) {
      os << to_string(c.family) << "; " << to_string(c.orientation) << "; "
         << format_real(c.beta, 17) << ";";
      for (double v : c.pi) os << " " << format_real(v, 17);
      os << "; " << c.provenance << "\n";
    }
  }

  static CutPool deserialize(std::istream& is) {
    CutPool pool;
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      std::vector<std::string> parts;
      std::size_t start = 0;
      while (true) {
        const auto pos = line.find(';', start);
        if (pos == std::string::npos) {
          parts.push_back(line.substr(start));
          break;
        }
        parts.push_back(line.substr(start, pos - start));
        start = pos + 1;
      }
      require(parts.size() == 5, "CutPool::deserialize: malformed line");
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(' ');
        const auto e = s.find_last_not_of(' ');
        return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
      };
      Cut c;
      c.family = cut_family_from_string(trim(parts[0]));
      const std::string o = trim(parts[1]);
      c.orientation = (o == "epi")    ? Cut::Orientation::epigraph
                      : (o == "hypo") ? Cut::Orientation::hypograph
                                      : Cut::Orientation::pure;
      c.beta = std::stod(trim(parts[2]));
      std::istringstream ps(parts[3]);
      double v;
      while (ps >> v) c.pi.push_back(v);
      c.provenance = trim(parts[4]);
      pool.add(std::move(c));
    }
    return pool;
  }

 private:
  std::vector<Cut> cuts_;
  std::set<std::pair<int, std::string>> seen_;
};

// ---------------------------------------------------------------------------
// Extended polymatroid inequalities (submodular epigraph).

/// Most-violated EPI at xbar: greedy along the descending permutation.
/// Requires a normalized oracle (f(empty) = 0).
inline Cut epi_separate(const SetOracle& f, const std::vector<double>& xbar) {
  LovaszChain chain = lovasz_chain(f, xbar);
  require(std::fabs(chain.prefix_val[0]) <= 1e-12, "epi_separate: oracle must be normalized");
  Cut cut;
  cut.family = CutFamily::EPI;
  cut.orientation = Cut::Orientation::epigraph;
  cut.pi.assign(xbar.size(), 0.0);
  for (int i = 0; i < f.n(); ++i)
    cut.pi[chain.delta[i]] = chain.prefix_val[i + 1] - chain.prefix_val[i];
  cut.provenance = "delta=" + chain.delta.to_string();
  return cut;
}

/// EPI from an explicit permutation.
inline Cut epi_from_permutation(const SetOracle& f, const Permutation& delta) {
  Cut cut;
  cut.family = CutFamily::EPI;
  cut.orientation = Cut::Orientation::epigraph;
  cut.pi.assign(f.n(), 0.0);
  SetPoint prefix(f.n());
  double prev = f(prefix);
  require(std::fabs(prev) <= 1e-12, "epi_from_permutation: oracle must be normalized");
  for (int i = 0; i < f.n(); ++i) {
    prefix = prefix.with(delta[i]);
    const double cur = f(prefix);
    cut.pi[delta[i]] = cur - prev;
    prev = cur;
  }
  cut.provenance = "delta=" + delta.to_string();
  return cut;
}

// ---------------------------------------------------------------------------
// Separation inequalities (equal weights, cardinality cap).

/// SI for m = 1 (all weights alpha): positions 1..i0 of delta keep the greedy
/// coefficients, the tail gets the averaged slope psi.
inline Cut si_generate(const Concave& g, double alpha, int n, int k, int i0,
                       const Permutation& delta) {
  require(k >= 1 && k <= n, "si_generate: k out of range");
  require(i0 >= 0 && i0 <= k - 1, "si_generate: i0 out of range");
  require(alpha >= 0, "si_generate: alpha must be nonnegative");
  require(delta.n() == n, "si_generate: permutation size mismatch");
  const double psi = (g(k * alpha) - g(i0 * alpha)) / (k - i0);
  Cut cut;
  cut.family = CutFamily::SI;
  cut.orientation = Cut::Orientation::epigraph;
  cut.pi.assign(n, 0.0);
  for (int pos = 0; pos < n; ++pos) {
    if (pos < i0)
      cut.pi[delta[pos]] = g((pos + 1) * alpha) - g(pos * alpha);
    else
      cut.pi[delta[pos]] = psi;
  }
  cut.provenance = "i0=" + std::to_string(i0) + ";delta=" + delta.to_string();
  return cut;
}

// ---------------------------------------------------------------------------
// Approximate lifted inequalities and exact lifting.

/// ALI: greedy coefficients on the first k positions of delta; each later
/// item is lifted against the heaviest (k-1)-subset of its predecessors,
/// ties broken by earlier delta position.
inline Cut ali_generate(const ConcaveOfLinear& spec, int k, const Permutation& delta) {
  const int n = spec.n();
  require(k >= 1 && k <= n, "ali_generate: k out of range");
  require(delta.n() == n, "ali_generate: permutation size mismatch");
  const auto& a = spec.weights;
  auto G = [&](double t) { return spec.g(t) - spec.g(0.0); };

  Cut cut;
  cut.family = CutFamily::ALI;
  cut.orientation = Cut::Orientation::epigraph;
  cut.pi.assign(n, 0.0);
  double prefix = 0.0;
  for (int pos = 0; pos < k; ++pos) {
    cut.pi[delta[pos]] = G(prefix + a[delta[pos]]) - G(prefix);
    prefix += a[delta[pos]];
  }
  for (int pos = k; pos < n; ++pos) {
    // heaviest k-1 predecessors in delta order
    std::vector<int> pred(pos);
    for (int t = 0; t < pos; ++t) pred[t] = t;
    std::stable_sort(pred.begin(), pred.end(),
                     [&](int s, int t) { return a[delta[s]] > a[delta[t]]; });
    double heaviest = 0.0;
    for (int t = 0; t < k - 1; ++t) heaviest += a[delta[pred[t]]];
    cut.pi[delta[pos]] = G(a[delta[pos]] + heaviest) - G(heaviest);
  }
  cut.provenance = "k=" + std::to_string(k) + ";delta=" + delta.to_string();
  return cut;
}

struct LiftOptions {
  // Enumeration budget n * C(n-1, k-1); above it the caller should fall back
  // to the ALI.
  double budget_cap = 2e6;
};

/// Exactly lifted EPI: the first k entries of delta form the seed set; each
/// later coefficient solves its lifting problem by enumerating all
/// predecessor subsets of size <= k-1.
inline Cut lift_epi_exact(const ConcaveOfLinear& spec, int k, const SetPoint& seed,
                          const Permutation& delta, const LiftOptions& opt = {}) {
  const int n = spec.n();
  require(k >= 1 && k <= n, "lift_epi_exact: k out of range");
  require(seed.count() == k, "lift_epi_exact: seed must have k items");
  for (int pos = 0; pos < k; ++pos)
    require(seed.test(delta[pos]), "lift_epi_exact: seed must be the first k entries of delta");
  require(n * binomial(n - 1, k - 1) <= opt.budget_cap, "lift_epi_exact: budget exceeded");
  const auto& a = spec.weights;
  auto G = [&](double t) { return spec.g(t) - spec.g(0.0); };

  std::vector<double> coef(n, 0.0);  // by delta position
  double prefix = 0.0;
  for (int pos = 0; pos < k; ++pos) {
    coef[pos] = G(prefix + a[delta[pos]]) - G(prefix);
    prefix += a[delta[pos]];
  }
  for (int pos = k; pos < n; ++pos) {
    const double aj = a[delta[pos]];
    double best = G(aj);  // empty predecessor subset
    for (int size = 1; size <= k - 1; ++size) {
      for_each_combination(pos, size, [&](const std::vector<int>& subset) {
        double wsum = 0.0, csum = 0.0;
        for (int t : subset) {
          wsum += a[delta[t]];
          csum += coef[t];
        }
        best = std::min(best, G(aj + wsum) - csum);
      });
    }
    coef[pos] = best;
  }

  Cut cut;
  cut.family = CutFamily::LEPI;
  cut.orientation = Cut::Orientation::epigraph;
  cut.pi.assign(n, 0.0);
  for (int pos = 0; pos < n; ++pos) cut.pi[delta[pos]] = coef[pos];
  cut.provenance = "k=" + std::to_string(k) + ";delta=" + delta.to_string();
  return cut;
}

// ---------------------------------------------------------------------------
// Submodular inequalities (hypograph of a set function).

/// Hypograph cut associated with S, built on the shifted function
/// f*(X) = f(X) - sum_{j in X} rho_j(N \ {j}).
inline Cut submax_cut_generate(const SetOracle& f, const SetPoint& S) {
  const int n = f.n();
  const SetPoint full(n, (n == 62) ? ~0ULL : ((1ULL << n) - 1));
  require(std::fabs(f(SetPoint(n))) <= 1e-12, "submax_cut_generate: oracle must be normalized");

  std::vector<double> rho_full(n);
  for (int j = 0; j < n; ++j) rho_full[j] = f(full) - f(full.without(j));

  auto fstar = [&](const SetPoint& X) {
    double v = f(X);
    for (int j = 0; j < n; ++j)
      if (X.test(j)) v -= rho_full[j];
    return v;
  };

  const double fs = fstar(S);
  Cut cut;
  cut.family = CutFamily::SUBMAX;
  cut.orientation = Cut::Orientation::hypograph;
  cut.beta = fs;
  cut.pi.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    cut.pi[j] = rho_full[j];
    if (!S.test(j)) cut.pi[j] += fstar(S.with(j)) - fs;
  }
  cut.provenance = "S=" + std::to_string(S.mask());
  return cut;
}

// ---------------------------------------------------------------------------
// k-submodular inequalities.

struct XiCap {
  std::uint64_t assignment_cap = 1ULL << 20;
};

/// xi_i^q: minimum marginal of placing type q at item i over all complete
/// assignments of the remaining items.
inline double ksub_xi_compute(const KSetOracle& f, int k, int i, int q,
                              const XiCap& cap = {}) {
  const int n = f.n();
  require(i >= 0 && i < n && q >= 0 && q < k, "ksub_xi_compute: index out of range");
  const std::uint64_t total = pow_u64(static_cast<std::uint64_t>(k), n - 1);
  require(total <= cap.assignment_cap, "ksub_xi_compute: cap exceeded");
  double best = kInf;
  std::vector<int> others;
  for (int j = 0; j < n; ++j)
    if (j != i) others.push_back(j);
  for (std::uint64_t code = 0; code < total; ++code) {
    KPoint s(n, k);
    std::uint64_t c = code;
    for (int j : others) {
      s.assign(j, static_cast<int>(c % k));
      c /= k;
    }
    best = std::min(best, f(s.with(i, q)) - f(s));
  }
  return best;
}

/// Lazily computed, cached xi table for one oracle.
class XiTable {
 public:
  XiTable(KSetOracle f, int k, XiCap cap = {}) : f_(std::move(f)), k_(k), cap_(cap) {
    values_.assign(static_cast<std::size_t>(k) * f_.n(), kInf);
    have_.assign(values_.size(), false);
  }

  /// All-zero table: a valid relaxation whenever the oracle is monotone
  /// (true xi >= 0), and the only affordable choice at larger n.
  static XiTable zeros(const KSetOracle& f, int k) {
    XiTable t(f, k);
    std::fill(t.values_.begin(), t.values_.end(), 0.0);
    std::fill(t.have_.begin(), t.have_.end(), true);
    return t;
  }

  double xi(int i, int q) const {
    const std::size_t idx = static_cast<std::size_t>(q) * f_.n() + i;
    if (!have_[idx]) {
      values_[idx] = ksub_xi_compute(f_, k_, i, q, cap_);
      have_[idx] = true;
    }
    return values_[idx];
  }

  int k() const { return k_; }

 private:
  KSetOracle f_;
  int k_;
  XiCap cap_;
  mutable std::vector<double> values_;
  mutable std::vector<bool> have_;
};

/// k-submodular inequality at S, over kn variables laid out as q*n + i.
inline Cut ksub_cut_generate(const KSetOracle& f, const XiTable& xi, const KPoint& S) {
  const int n = f.n();
  const int k = xi.k();
  Cut cut;
  cut.family = CutFamily::KSUB;
  cut.orientation = Cut::Orientation::hypograph;
  cut.pi.assign(static_cast<std::size_t>(k) * n, 0.0);
  double beta = f(S);
  const KPoint empty(n, k);
  for (int i = 0; i < n; ++i) {
    const int p = S.type_of(i);
    if (p == KPoint::kNone) {
      for (int q = 0; q < k; ++q)
        cut.pi[static_cast<std::size_t>(q) * n + i] = f(S.with(i, q)) - f(S);
    } else {
      for (int q = 0; q < k; ++q) {
        if (q == p) {
          cut.pi[static_cast<std::size_t>(q) * n + i] = xi.xi(i, q);
        } else {
          cut.pi[static_cast<std::size_t>(q) * n + i] = f(empty.with(i, q)) - f(empty);
        }
      }
      beta -= xi.xi(i, p);
    }
  }
  cut.beta = beta;
  cut.provenance = "S=" + std::to_string(S.key());
  return cut;
}

// ---------------------------------------------------------------------------
// Extremal poly-bimatroid inequalities.

/// Signed greedy: grows (S1, S2) along delta, the sign vector picking the
/// side; coefficients are the signed marginals.
inline std::vector<double> signed_greedy(const BisetOracle& f, const Permutation& delta,
                                         const std::vector<int>& sigma) {
  const int n = f.n();
  require(delta.n() == n && static_cast<int>(sigma.size()) == n,
          "signed_greedy: dimension mismatch");
  std::vector<double> pi(n, 0.0);
  TernaryPoint s(n);
  double prev = f(s);
  for (int pos = 0; pos < n; ++pos) {
    const int i = delta[pos];
    require(sigma[i] == 1 || sigma[i] == -1, "signed_greedy: sigma entries must be +-1");
    s.set(i, sigma[i]);
    const double cur = f(s);
    pi[i] = (sigma[i] == 1) ? (cur - prev) : (prev - cur);
    prev = cur;
  }
  return pi;
}

inline Cut epbm_from(const BisetOracle& f, const Permutation& delta,
                     const std::vector<int>& sigma) {
  Cut cut;
  cut.family = CutFamily::EPBM;
  cut.orientation = Cut::Orientation::epigraph;
  cut.pi = signed_greedy(f, delta, sigma);
  std::string sig;
  for (int v : sigma) sig += (v == 1) ? '+' : '-';
  cut.provenance = "delta=" + delta.to_string() + ";sigma=" + sig;
  return cut;
}

/// Most-violated extremal poly-bimatroid inequality at xbar in [-1,1]^n:
/// sort by |xbar| descending, nonnegative entries take the S1 branch.
inline Cut bisub_separate(const BisetOracle& f, const std::vector<double>& xbar) {
  const int n = f.n();
  require(static_cast<int>(xbar.size()) == n, "bisub_separate: dimension mismatch");
  for (double v : xbar)
    require(v >= -1.0 - 1e-9 && v <= 1.0 + 1e-9, "bisub_separate: entry outside [-1,1]");
  require(std::fabs(f(TernaryPoint(n))) <= 1e-12, "bisub_separate: oracle must be normalized");
  Permutation delta = Permutation::by_descending_abs(xbar);
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = (xbar[i] >= 0.0) ? 1 : -1;
  return epbm_from(f, delta, sigma);
}

// ---------------------------------------------------------------------------
// Mixed-integer rounding cuts for monotone forests.

/// Directed rooted forest over variable indices; arc (parent(i) -> i) encodes
/// x_parent <= x_i.
struct MonotoneForest {
  std::vector<int> parent;        // -1 for roots
  std::vector<bool> integer_mask; // N: the integer-constrained coordinates

  int dim() const { return static_cast<int>(parent.size()); }

  void check() const {
    require(parent.size() == integer_mask.size(), "MonotoneForest: size mismatch");
    for (int i = 0; i < dim(); ++i) {
      require(parent[i] >= -1 && parent[i] < dim() && parent[i] != i,
              "MonotoneForest: bad parent index");
      // walk to the root; a cycle would walk forever
      int hops = 0;
      for (int v = i; v != -1; v = parent[v])
        require(++hops <= dim(), "MonotoneForest: cycle detected");
    }
  }

  std::vector<int> children(int v) const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
      if (parent[i] == v) out.push_back(i);
    return out;
  }

  /// Descendants of v (vertices reachable along arcs), excluding v.
  std::vector<int> descendants(int v) const {
    std::vector<int> out, stack{v};
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      for (int c : children(cur)) {
        out.push_back(c);
        stack.push_back(c);
      }
    }
    return out;
  }

  bool has_integer_descendant(int v) const {
    for (int d : descendants(v))
      if (integer_mask[d]) return true;
    return false;
  }
};

struct MirOptions {
  // The default only emits cuts through integer children, where validity is
  // certain. Permissive mode also lifts through continuous children that have
  // integer descendants, marking those cuts unverified.
  bool permissive = false;
};

/// MIR cut for fractional-bound vertices with integer descendants:
///   -x_c - (u_psi - x_psi) / (u_psi - floor(u_psi)) <= -ceil(u_psi).
inline std::vector<Cut> mir_generate(const MonotoneForest& forest, const std::vector<double>& u,
                                     const MirOptions& opt = {}) {
  forest.check();
  const int d = forest.dim();
  require(static_cast<int>(u.size()) == d, "mir_generate: bound size mismatch");
  for (double v : u) require(v >= 0, "mir_generate: bounds must be nonnegative");
  std::vector<Cut> cuts;
  for (int psi = 0; psi < d; ++psi) {
    const double frac = u[psi] - std::floor(u[psi]);
    if (frac <= 1e-9 || frac >= 1.0 - 1e-9) continue;  // u_psi integral
    if (!forest.has_integer_descendant(psi)) continue;
    for (int c : forest.children(psi)) {
      const bool certain = forest.integer_mask[c];
      if (!certain && !(opt.permissive && forest.has_integer_descendant(c))) continue;
      Cut cut;
      cut.family = CutFamily::MIR;
      cut.orientation = Cut::Orientation::pure;
      cut.pi.assign(d, 0.0);
      cut.pi[c] = -1.0;
      cut.pi[psi] = 1.0 / frac;
      cut.beta = -std::ceil(u[psi]) + u[psi] / frac;
      cut.provenance = "psi=" + std::to_string(psi) + ";child=" + std::to_string(c);
      cut.verified = certain;
      cuts.push_back(std::move(cut));
    }
  }
  return cuts;
}

/// Binary special case of the DR inequalities; on a unit box with no
/// monotonicity arcs they are exactly the EPIs of the induced set function.
inline Cut dr_binary_cut(const LatticeOracle& f, const std::vector<double>& u,
                         const MonotoneForest& forest, const std::vector<double>& xbar) {
  for (double v : u) require(v == 1.0, "dr_binary_cut: box must be {0,1}^V");
  for (int i = 0; i < forest.dim(); ++i) {
    require(forest.integer_mask[i], "dr_binary_cut: all coordinates must be integer");
    require(forest.parent[i] == -1, "dr_binary_cut: monotonicity arcs not supported");
  }
  SetOracle induced = as_set_oracle(f);
  return epi_separate(induced, xbar);
}

}  // namespace gso
