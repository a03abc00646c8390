#pragma once

#include "gso/milp.hpp"
#include "gso/oracles.hpp"

namespace gso {

/// Marginal return of adding item i to X; 0 when i is already in X.
inline double marginal_return(const SetOracle& f, const SetPoint& X, int i) {
  require(i >= 0 && i < f.n(), "marginal_return: item out of range");
  if (X.test(i)) return 0.0;
  return f(X.with(i)) - f(X);
}

/// Marginal value of placing an item of type q at an unassigned slot i.
inline double k_marginal_return(const KSetOracle& f, const KPoint& X, int q, int i) {
  require(i >= 0 && i < X.n(), "k_marginal_return: item out of range");
  require(q >= 0 && q < X.k(), "k_marginal_return: type out of range");
  require(!X.assigned(i), "k_marginal_return: item already assigned");
  return f(X.with(i, q)) - f(X);
}

struct LovaszChain {
  Permutation delta;               // descending order of x, ties by index
  std::vector<double> prefix_val;  // prefix_val[i] = f({delta(0..i-1)}), i = 0..n
  double value = 0.0;
};

/// Evaluates the piecewise-linear extension of f at x in [0,1]^n and keeps
/// the greedy chain around; cut separation reuses it.
inline LovaszChain lovasz_chain(const SetOracle& f, const std::vector<double>& x) {
  const int n = f.n();
  require(static_cast<int>(x.size()) == n, "lovasz: dimension mismatch");
  for (double v : x) require(v >= -1e-12 && v <= 1.0 + 1e-12, "lovasz: entry outside [0,1]");

  LovaszChain chain;
  chain.delta = Permutation::by_descending(x);
  chain.prefix_val.resize(n + 1);
  SetPoint prefix(n);
  chain.prefix_val[0] = f(prefix);
  for (int i = 0; i < n; ++i) {
    prefix = prefix.with(chain.delta[i]);
    chain.prefix_val[i + 1] = f(prefix);
  }
  double value = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = x[chain.delta[i]];
    const double xnext = (i + 1 < n) ? x[chain.delta[i + 1]] : 0.0;
    value += (xi - xnext) * chain.prefix_val[i + 1];
  }
  chain.value = value;
  return chain;
}

inline double lovasz_eval(const SetOracle& f, const std::vector<double>& x) {
  return lovasz_chain(f, x).value;
}

/// Convex closure of f at x: the minimum of sum alpha_S f(S) over convex
/// combinations of subset indicators hitting x. Solved as an LP over all 2^n
/// subsets, so n is capped.
inline double convex_closure_eval(const SetOracle& f, const std::vector<double>& x,
                                  int enumeration_cap = 12) {
  const int n = f.n();
  require(n <= enumeration_cap, "convex_closure_eval: n above enumeration cap");
  require(static_cast<int>(x.size()) == n, "convex_closure_eval: dimension mismatch");
  for (double v : x)
    require(v >= -1e-12 && v <= 1.0 + 1e-12, "convex_closure_eval: entry outside [0,1]");

  MilpModel lp;
  lp.sense = ObjSense::minimize;
  const std::uint64_t nsets = 1ULL << n;
  for (std::uint64_t s = 0; s < nsets; ++s)
    lp.add_col("a" + std::to_string(s), 0.0, 1.0, f(SetPoint(n, s)), false);
  for (int i = 0; i < n; ++i) {
    LinearRow row;
    row.relation = 'E';
    row.rhs = x[i];
    for (std::uint64_t s = 0; s < nsets; ++s)
      if ((s >> i) & 1ULL) row.terms.emplace_back(static_cast<int>(s), 1.0);
    lp.add_row(std::move(row));
  }
  LinearRow sum_row;
  sum_row.relation = 'E';
  sum_row.rhs = 1.0;
  for (std::uint64_t s = 0; s < nsets; ++s) sum_row.terms.emplace_back(static_cast<int>(s), 1.0);
  lp.add_row(std::move(sum_row));

  SolveResult res = lp_solve(lp);
  require(res.status == SolveStatus::optimal,
          std::string("convex_closure_eval: LP not optimal: ") + to_string(res.status));
  return res.objective;
}

}  // namespace gso
