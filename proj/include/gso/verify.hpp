#pragma once

#include "gso/extensions.hpp"

namespace gso {

struct VerifyResult {
  bool pass = true;
  std::string counterexample;  // empty on pass
  long long pairs_checked = 0;

  explicit operator bool() const { return pass; }
};

enum class SubmodularForm { intersect_union, marginal };

/// Exhaustive submodularity check. Both definitions are available:
/// f(X)+f(Y) >= f(X&Y)+f(X|Y), or diminishing marginals rho_i(X) >= rho_i(Y)
/// for X subset Y, i outside Y.
inline VerifyResult verify_submodular(const SetOracle& f,
                                      SubmodularForm form = SubmodularForm::intersect_union,
                                      int cap = 14, double tol = kValueTol) {
  const int n = f.n();
  require(n <= cap, "verify_submodular: domain too large for cap");
  VerifyResult res;
  const std::uint64_t m = 1ULL << n;
  if (form == SubmodularForm::intersect_union) {
    for (std::uint64_t x = 0; x < m; ++x) {
      for (std::uint64_t y = x + 1; y < m; ++y) {
        ++res.pairs_checked;
        const double lhs = f(SetPoint(n, x)) + f(SetPoint(n, y));
        const double rhs = f(SetPoint(n, x & y)) + f(SetPoint(n, x | y));
        if (lhs < rhs - tol) {
          res.pass = false;
          res.counterexample = "X=" + std::to_string(x) + " Y=" + std::to_string(y) +
                               " lhs=" + format_real(lhs) + " rhs=" + format_real(rhs);
          return res;
        }
      }
    }
  } else {
    for (std::uint64_t y = 0; y < m; ++y) {
      // enumerate subsets x of y
      for (std::uint64_t x = y;; x = (x - 1) & y) {
        for (int i = 0; i < n; ++i) {
          if ((y >> i) & 1ULL) continue;
          ++res.pairs_checked;
          const SetPoint X(n, x), Y(n, y);
          const double rx = marginal_return(f, X, i);
          const double ry = marginal_return(f, Y, i);
          if (rx < ry - tol) {
            res.pass = false;
            res.counterexample = "X=" + std::to_string(x) + " Y=" + std::to_string(y) +
                                 " i=" + std::to_string(i);
            return res;
          }
        }
        if (x == 0) break;
      }
    }
  }
  return res;
}

inline VerifyResult verify_monotone(const SetOracle& f, int cap = 14, double tol = kValueTol) {
  const int n = f.n();
  require(n <= cap, "verify_monotone: domain too large for cap");
  VerifyResult res;
  const std::uint64_t m = 1ULL << n;
  // X subset X+{i} chains suffice for monotonicity
  for (std::uint64_t x = 0; x < m; ++x) {
    for (int i = 0; i < n; ++i) {
      if ((x >> i) & 1ULL) continue;
      ++res.pairs_checked;
      if (f(SetPoint(n, x | (1ULL << i))) < f(SetPoint(n, x)) - tol) {
        res.pass = false;
        res.counterexample = "X=" + std::to_string(x) + " i=" + std::to_string(i);
        return res;
      }
    }
  }
  return res;
}

namespace detail {

inline KPoint kset_meet(const KPoint& x, const KPoint& y) {
  KPoint out(x.n(), x.k());
  for (int i = 0; i < x.n(); ++i)
    if (x.type_of(i) != KPoint::kNone && x.type_of(i) == y.type_of(i))
      out.assign(i, x.type_of(i));
  return out;
}

// Component-wise union with conflicting items dropped.
inline KPoint kset_join(const KPoint& x, const KPoint& y) {
  KPoint out(x.n(), x.k());
  for (int i = 0; i < x.n(); ++i) {
    const auto a = x.type_of(i), b = y.type_of(i);
    if (a == KPoint::kNone && b == KPoint::kNone) continue;
    if (a == KPoint::kNone)
      out.assign(i, b);
    else if (b == KPoint::kNone || a == b)
      out.assign(i, a);
    // a != b: conflict, stays unassigned
  }
  return out;
}

}  // namespace detail

inline VerifyResult verify_k_submodular(const KSetOracle& f, int k,
                                        std::uint64_t domain_cap = 1ULL << 13,
                                        double tol = kValueTol) {
  const int n = f.n();
  const std::uint64_t dom = pow_u64(static_cast<std::uint64_t>(k) + 1, n);
  require(dom <= domain_cap, "verify_k_submodular: domain too large for cap");
  VerifyResult res;
  for (std::uint64_t xk = 0; xk < dom; ++xk) {
    const KPoint x = KPoint::from_key(xk, n, k);
    const double fx = f(x);
    for (std::uint64_t yk = xk; yk < dom; ++yk) {
      const KPoint y = KPoint::from_key(yk, n, k);
      ++res.pairs_checked;
      const double lhs = fx + f(y);
      const double rhs = f(detail::kset_meet(x, y)) + f(detail::kset_join(x, y));
      if (lhs < rhs - tol) {
        res.pass = false;
        res.counterexample = "Xkey=" + std::to_string(xk) + " Ykey=" + std::to_string(yk);
        return res;
      }
    }
  }
  return res;
}

inline VerifyResult verify_k_monotone(const KSetOracle& f, int k,
                                      std::uint64_t domain_cap = 1ULL << 13,
                                      double tol = kValueTol) {
  const int n = f.n();
  const std::uint64_t dom = pow_u64(static_cast<std::uint64_t>(k) + 1, n);
  require(dom <= domain_cap, "verify_k_monotone: domain too large for cap");
  VerifyResult res;
  for (std::uint64_t xk = 0; xk < dom; ++xk) {
    const KPoint x = KPoint::from_key(xk, n, k);
    for (int i = 0; i < n; ++i) {
      if (x.assigned(i)) continue;
      for (int q = 0; q < k; ++q) {
        ++res.pairs_checked;
        if (k_marginal_return(f, x, q, i) < -tol) {
          res.pass = false;
          res.counterexample =
              "Xkey=" + std::to_string(xk) + " q=" + std::to_string(q) + " i=" + std::to_string(i);
          return res;
        }
      }
    }
  }
  return res;
}

inline VerifyResult verify_bisubmodular(const BisetOracle& f, std::uint64_t domain_cap = 1ULL << 13,
                                        double tol = kValueTol) {
  const int n = f.n();
  auto twoset = as_two_set_oracle(f);
  // share the ternary evaluations through the k-set view
  const std::uint64_t dom = pow_u64(3, n);
  require(dom <= domain_cap, "verify_bisubmodular: domain too large for cap");
  return verify_k_submodular(twoset, 2, domain_cap, tol);
}

/// Mixed-integer box with optional monotonicity use; integer coordinates step
/// by 1, continuous ones on a grid of `grid_divisions` steps.
struct LatticeBox {
  std::vector<double> upper;
  std::vector<bool> integer_mask;
  int grid_divisions = 4;

  int dim() const { return static_cast<int>(upper.size()); }
  double step(int i) const {
    return integer_mask[i] ? 1.0 : upper[i] / grid_divisions;
  }
};

namespace detail {

inline void enumerate_box(const LatticeBox& box, int coord, LatticePoint& point,
                          const std::function<void(const LatticePoint&)>& fn) {
  if (coord == box.dim()) {
    fn(point);
    return;
  }
  const double step = box.step(coord);
  const int levels = box.integer_mask[coord] ? static_cast<int>(std::floor(box.upper[coord] + 1e-9))
                                             : box.grid_divisions;
  for (int t = 0; t <= levels; ++t) {
    point.vals[coord] = std::min(t * step, box.upper[coord]);
    enumerate_box(box, coord + 1, point, fn);
  }
}

}  // namespace detail

/// Diminishing-returns check over the box lattice: for all grid pairs x <= y
/// and every coordinate, the step-alpha gain at x dominates the gain at y.
/// Alpha is 1 on integer coordinates and the grid step on continuous ones;
/// real-valued alphas cannot be checked exhaustively.
inline VerifyResult verify_dr_lattice(const LatticeOracle& f, const LatticeBox& box,
                                      std::uint64_t domain_cap = 1ULL << 13,
                                      double tol = kValueTol) {
  const int d = box.dim();
  std::vector<LatticePoint> grid;
  LatticePoint cursor(std::vector<double>(d, 0.0), box.integer_mask);
  detail::enumerate_box(box, 0, cursor, [&](const LatticePoint& p) { grid.push_back(p); });
  require(grid.size() <= domain_cap, "verify_dr_lattice: grid too large for cap");

  VerifyResult res;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = 0; b < grid.size(); ++b) {
      bool leq = true;
      for (int i = 0; i < d && leq; ++i) leq = grid[a].vals[i] <= grid[b].vals[i] + 1e-12;
      if (!leq) continue;
      for (int i = 0; i < d; ++i) {
        const double alpha = box.step(i);
        if (grid[a].vals[i] + alpha > box.upper[i] + 1e-9) continue;
        if (grid[b].vals[i] + alpha > box.upper[i] + 1e-9) continue;
        ++res.pairs_checked;
        LatticePoint xa = grid[a], xb = grid[b];
        xa.vals[i] += alpha;
        xb.vals[i] += alpha;
        const double gain_low = f(xa) - f(grid[a]);
        const double gain_high = f(xb) - f(grid[b]);
        if (gain_low < gain_high - tol) {
          res.pass = false;
          res.counterexample = "coord=" + std::to_string(i);
          return res;
        }
      }
    }
  }
  return res;
}

/// Estimates all Hessian entries of a smooth handle by central differences at
/// quasi-random (Halton) box points; DR-submodularity needs every entry <= 0.
inline VerifyResult hessian_dr_check(const std::function<double(const std::vector<double>&)>& f,
                                     const std::vector<double>& lower,
                                     const std::vector<double>& upper, int samples = 64,
                                     double step = 5e-3, double tol = 1e-6) {
  require(step > 0, "hessian_dr_check: step must be positive");
  const int d = static_cast<int>(lower.size());
  require(upper.size() == lower.size(), "hessian_dr_check: box dimension mismatch");
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  require(d <= 12, "hessian_dr_check: dimension too large");

  auto halton = [&](int index, int base) {
    double r = 0.0, f1 = 1.0;
    int i = index;
    while (i > 0) {
      f1 /= base;
      r += f1 * (i % base);
      i /= base;
    }
    return r;
  };

  VerifyResult res;
  std::vector<double> x(d);
  for (int s = 1; s <= samples; ++s) {
    for (int i = 0; i < d; ++i) {
      const double lo = lower[i] + step, hi = upper[i] - step;
      if (hi <= lo) {
        res.pass = false;
        res.counterexample = "box too narrow for the finite-difference step";
        return res;
      }
      x[i] = lo + halton(s, primes[i]) * (hi - lo);
    }
    const double fx = f(x);
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        ++res.pairs_checked;
        double h2;
        if (i == j) {
          auto xp = x, xm = x;
          xp[i] += step;
          xm[i] -= step;
          h2 = (f(xp) - 2.0 * fx + f(xm)) / (step * step);
        } else {
          auto xpp = x, xpm = x, xmp = x, xmm = x;
          xpp[i] += step;
          xpp[j] += step;
          xpm[i] += step;
          xpm[j] -= step;
          xmp[i] -= step;
          xmp[j] += step;
          xmm[i] -= step;
          xmm[j] -= step;
          h2 = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * step * step);
        }
        if (h2 > tol) {
          res.pass = false;
          res.counterexample = "H[" + std::to_string(i) + "][" + std::to_string(j) +
                               "]=" + format_real(h2) + " at sample " + std::to_string(s);
          return res;
        }
      }
    }
  }
  return res;
}

/// String-keyed dispatch used by the command line.
enum class PropertyKind { submodular, monotone, k_submodular, bisubmodular, dr_lattice };

inline PropertyKind property_kind_from_string(const std::string& s) {
  if (s == "submodular") return PropertyKind::submodular;
  if (s == "monotone") return PropertyKind::monotone;
  if (s == "k_submodular" || s == "k-submodular") return PropertyKind::k_submodular;
  if (s == "bisubmodular") return PropertyKind::bisubmodular;
  if (s == "dr_lattice" || s == "dr-lattice") return PropertyKind::dr_lattice;
  throw GsoError("unknown property kind: " + s);
}

inline VerifyResult verify_property(const SetOracle& f, PropertyKind kind, int cap = 14) {
  switch (kind) {
    case PropertyKind::submodular: return verify_submodular(f, SubmodularForm::intersect_union, cap);
    case PropertyKind::monotone: return verify_monotone(f, cap);
    default: throw GsoError("verify_property: kind does not apply to a set oracle");
  }
}

inline VerifyResult verify_property(const KSetOracle& f, int k, PropertyKind kind,
                                    std::uint64_t domain_cap = 1ULL << 13) {
  switch (kind) {
    case PropertyKind::k_submodular: return verify_k_submodular(f, k, domain_cap);
    case PropertyKind::monotone: return verify_k_monotone(f, k, domain_cap);
    default: throw GsoError("verify_property: kind does not apply to a k-set oracle");
  }
}

inline VerifyResult verify_property(const BisetOracle& f, PropertyKind kind,
                                    std::uint64_t domain_cap = 1ULL << 13) {
  require(kind == PropertyKind::bisubmodular, "verify_property: kind does not apply to a biset oracle");
  return verify_bisubmodular(f, domain_cap);
}

}  // namespace gso
