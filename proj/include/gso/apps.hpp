#pragma once

#include "gso/dcg.hpp"
#include "gso/verify.hpp"

namespace gso {

// ---------------------------------------------------------------------------
// Exhaustive search baselines. These are the ground-truth oracles for every
// desk-scale equivalence check, sharing the (memoized) value oracle with the
// solver under test so comparisons are bit-identical.

struct EsResult {
  double value = 0.0;
  std::vector<double> point;
  long long enumerated = 0;
  bool found = false;
};

inline bool satisfies_rows(const std::vector<LinearRow>& rows, const std::vector<double>& x,
                           double tol = 1e-9) {
  for (const auto& row : rows) {
    double lhs = 0.0;
    for (auto [c, v] : row.terms) lhs += v * x[c];
    if (row.relation == 'L' && lhs > row.rhs + tol) return false;
    if (row.relation == 'G' && lhs < row.rhs - tol) return false;
    if (row.relation == 'E' && std::fabs(lhs - row.rhs) > tol) return false;
  }
  return true;
}

inline EsResult es_set_optimum(const SetOracle& f, const std::vector<LinearRow>& extra,
                               bool maximize, int cap = 20) {
  const int n = f.n();
  require(n <= cap, "exhaustive_search: set domain above cap");
  EsResult best;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    SetPoint p(n, mask);
    const auto x = p.to_vector();
    if (!satisfies_rows(extra, x)) continue;
    ++best.enumerated;
    const double v = f(p);
    if (!best.found || (maximize ? v > best.value : v < best.value)) {
      best.found = true;
      best.value = v;
      best.point = x;
    }
  }
  return best;
}

inline EsResult es_kset_max(const KSetOracle& f, int k, const std::vector<double>& budgets,
                            const std::vector<LinearRow>& extra, int cap_bits = 24) {
  const int n = f.n();
  EsResult best;
  auto offer = [&](const KPoint& p) {
    const auto x = p.to_vector();
    if (!satisfies_rows(extra, x)) return;
    ++best.enumerated;
    const double v = f(p);
    if (!best.found || v > best.value) {
      best.found = true;
      best.value = v;
      best.point = x;
    }
  };

  const std::uint64_t dom = pow_u64(static_cast<std::uint64_t>(k) + 1, n);
  if (budgets.empty() || dom <= (1ULL << cap_bits)) {
    require(dom <= (1ULL << cap_bits), "exhaustive_search: k-set domain above cap");
    for (std::uint64_t key = 0; key < dom; ++key) {
      KPoint p = KPoint::from_key(key, n, k);
      if (!budgets.empty()) {
        bool ok = true;
        for (int q = 0; q < k && ok; ++q) ok = p.count_type(q) <= budgets[q] + 1e-9;
        if (!ok) continue;
      }
      offer(p);
    }
    return best;
  }

  // tight budgets over a larger ground set: enumerate blocks type by type
  double estimate = 1.0;
  for (int q = 0; q < k; ++q) {
    double per_type = 0.0;
    for (int s = 0; s <= static_cast<int>(budgets[q]); ++s) per_type += binomial(n, s);
    estimate *= per_type;
  }
  require(estimate <= std::pow(2.0, cap_bits), "exhaustive_search: budgeted k-set space above cap");

  KPoint point(n, k);
  std::vector<int> available(n);
  for (int i = 0; i < n; ++i) available[i] = i;
  std::function<void(int, const std::vector<int>&)> rec = [&](int q, const std::vector<int>& avail) {
    if (q == k) {
      offer(point);
      return;
    }
    for (int size = 0; size <= static_cast<int>(budgets[q]); ++size) {
      for_each_combination(static_cast<int>(avail.size()), size, [&](const std::vector<int>& pick) {
        std::vector<int> rest;
        std::vector<bool> used(avail.size(), false);
        for (int idx : pick) {
          point.assign(avail[idx], q);
          used[idx] = true;
        }
        for (std::size_t t = 0; t < avail.size(); ++t)
          if (!used[t]) rest.push_back(avail[t]);
        rec(q + 1, rest);
        for (int idx : pick) point.clear(avail[idx]);
      });
    }
  };
  rec(0, available);
  return best;
}

inline EsResult es_ternary_min(const BisetOracle& f, const BisubConstraints& cons,
                               int cap_bits = 24) {
  const int n = f.n();
  const std::uint64_t dom = pow_u64(3, n);
  require(dom <= (1ULL << cap_bits), "exhaustive_search: ternary domain above cap");
  std::vector<bool> fixed(n, false);
  for (int i : cons.fixed_zero) fixed[i] = true;
  EsResult best;
  for (std::uint64_t key = 0; key < dom; ++key) {
    TernaryPoint p = TernaryPoint::from_key(key, n);
    bool ok = true;
    std::vector<double> y(2 * n, 0.0);
    for (int i = 0; i < n && ok; ++i) {
      if (p[i] != 0 && fixed[i]) ok = false;
      if (p[i] == 1) y[i] = 1.0;
      if (p[i] == -1) y[n + i] = 1.0;
    }
    if (!ok || !satisfies_rows(cons.rows_y, y)) continue;
    ++best.enumerated;
    const double v = f(p);
    if (!best.found || v < best.value) {
      best.found = true;
      best.value = v;
      best.point = p.to_vector();
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Multi-type sensor placement.

struct SensorInstance {
  ReadingsTable readings;
  int k = 2;
  std::vector<double> budgets;  // B_q per type

  int n() const { return readings.n_locations; }

  void check() const {
    require(k >= 1 && k <= readings.n_types, "SensorInstance: k exceeds measurement types");
    require(budgets.empty() || static_cast<int>(budgets.size()) == k,
            "SensorInstance: budget count mismatch");
    for (double b : budgets) require(b >= 0, "SensorInstance: negative budget");
  }
};

struct SensorPlan {
  KPoint plan;
  double entropy = 0.0;
  DcgReport report;
};

/// Optimal k-type placement plan by DCG over the entropy oracle. Entropy is
/// monotone, so the zero xi table applies at any n.
inline SensorPlan solve_sensor_placement(const SensorInstance& inst, const DcgConfig& cfg = {}) {
  inst.check();
  KSetOracle f = make_entropy_oracle(inst.readings, inst.k);
  f.normalize(KPoint(inst.n(), inst.k));
  KsubConstraints cons;
  cons.type_budgets = inst.budgets;
  DcgReport report = dcg_max_ksub(f, inst.k, cons, cfg, /*oracle_is_monotone=*/true);
  SensorPlan out;
  out.report = report;
  out.plan = KPoint(inst.n(), inst.k);
  for (int q = 0; q < inst.k; ++q)
    for (int i = 0; i < inst.n(); ++i)
      if (!report.incumbent.empty() && report.incumbent[q * inst.n() + i] > 0.5)
        out.plan.assign(i, q);
  out.entropy = f(out.plan);
  return out;
}

// ---------------------------------------------------------------------------
// Robust coupled placement.

struct RobustInstance {
  SensorInstance base;  // k = 2
  int b1 = 0, b2 = 0;     // outer plan sizes, |S1| = B1, |S2| = B2
  int b1_min = 0, b2_min = 0;  // surviving sensors per type
  int switch_budget = 0;       // W

  void check() const {
    base.check();
    require(base.k == 2, "RobustInstance: coupled placement needs k = 2");
    require(b1 >= 0 && b2 >= 0 && b1 + b2 <= base.n(), "RobustInstance: outer sizes infeasible");
    require(b1_min <= b1 && b2_min <= b2, "RobustInstance: inner lower bounds exceed plan");
    require(switch_budget >= 0, "RobustInstance: negative switch budget");
  }
};

struct RobustPlan {
  SetPoint s1, s2;
  double value = -kInf;  // worst-case entropy of the best plan
  TernaryPoint worst_case;
  long outer_plans = 0;
  long nodes = 0;
  std::map<CutFamily, long> cuts_added;
  double time_s = 0.0;
};

/// Constraints of the inner adversarial problem for a fixed outer plan:
/// support restriction, per-type lower bounds, and the wrong-type switch
/// budget.
inline BisubConstraints robust_inner_constraints(const RobustInstance& inst, const SetPoint& s1,
                                                 const SetPoint& s2) {
  const int n = inst.base.n();
  BisubConstraints cons;
  for (int i = 0; i < n; ++i)
    if (!s1.test(i) && !s2.test(i)) cons.fixed_zero.push_back(i);
  LinearRow low1;
  for (int i = 0; i < n; ++i) low1.terms.emplace_back(i, 1.0);
  low1.relation = 'G';
  low1.rhs = inst.b1_min;
  low1.name = "surviving_type1";
  cons.rows_y.push_back(std::move(low1));
  LinearRow low2;
  for (int i = 0; i < n; ++i) low2.terms.emplace_back(n + i, 1.0);
  low2.relation = 'G';
  low2.rhs = inst.b2_min;
  low2.name = "surviving_type2";
  cons.rows_y.push_back(std::move(low2));
  LinearRow switches;
  for (int i = 0; i < n; ++i) {
    if (s1.test(i)) switches.terms.emplace_back(n + i, 1.0);  // y2 on an S1 site
    if (s2.test(i)) switches.terms.emplace_back(i, 1.0);      // y1 on an S2 site
  }
  switches.relation = 'L';
  switches.rhs = inst.switch_budget;
  switches.name = "switch_budget";
  cons.rows_y.push_back(std::move(switches));
  return cons;
}

/// Max-min robust coupled placement: outer plans by exhaustive enumeration,
/// inner adversary by exact bisubmodular minimization.
inline RobustPlan solve_robust_coupled(const RobustInstance& inst, const DcgConfig& cfg = {},
                                       double outer_cap = 1e6) {
  inst.check();
  detail::Stopwatch clock;
  const int n = inst.base.n();
  require(binomial(n, inst.b1) * binomial(n - inst.b1, inst.b2) <= outer_cap,
          "solve_robust_coupled: outer enumeration above cap");
  BisetOracle f = make_entropy_biset_oracle(inst.base.readings);
  f.normalize(TernaryPoint(n));

  RobustPlan best;
  best.worst_case = TernaryPoint(n);
  for_each_combination(n, inst.b1, [&](const std::vector<int>& s1_items) {
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
      if (std::find(s1_items.begin(), s1_items.end(), i) == s1_items.end()) rest.push_back(i);
    for_each_combination(static_cast<int>(rest.size()), inst.b2,
                         [&](const std::vector<int>& pick) {
                           std::vector<int> s2_items;
                           for (int idx : pick) s2_items.push_back(rest[idx]);
                           SetPoint s1 = SetPoint::from_items(n, s1_items);
                           SetPoint s2 = SetPoint::from_items(n, s2_items);
                           ++best.outer_plans;
                           DcgReport inner =
                               dcg_min_bisub(f, robust_inner_constraints(inst, s1, s2), cfg);
                           best.nodes += inner.nodes;
                           for (auto [fam, c] : inner.cuts_added) best.cuts_added[fam] += c;
                           if (inner.termination == "infeasible") return;
                           if (inner.incumbent_value > best.value) {
                             best.value = inner.incumbent_value;
                             best.s1 = s1;
                             best.s2 = s2;
                             best.worst_case = TernaryPoint(n);
                             for (int i = 0; i < n; ++i) {
                               if (inner.incumbent[i] > 0.5) best.worst_case.set(i, 1);
                               if (inner.incumbent[i] < -0.5) best.worst_case.set(i, -1);
                             }
                           }
                         });
  });
  best.time_s = clock.seconds();
  return best;
}

// ---------------------------------------------------------------------------
// Mean-risk portfolio selection.

struct MeanRiskResult {
  SetPoint portfolio;
  double value = kInf;
  DcgReport report;
};

/// Cardinality-constrained mean-risk minimization with diagonal covariance,
/// via branch and cut on the risk epigraph plus the modular loss term. The
/// returned value re-evaluates the incumbent through the shared oracle.
inline MeanRiskResult solve_mean_risk(const MeanRiskSpec& spec, const SetOracle& oracle,
                                      const DcgConfig& cfg = {}) {
  spec.check();
  CcminProblem prob;
  prob.spec = spec.risk_part();
  prob.modular.resize(spec.n());
  for (int i = 0; i < spec.n(); ++i) prob.modular[i] = -spec.mu[i];
  prob.k = spec.k;
  DcgReport report = ccmin_branch_and_cut(prob, cfg);
  MeanRiskResult out;
  out.report = report;
  out.portfolio = SetPoint(spec.n());
  for (int i = 0; i < spec.n(); ++i)
    if (!report.incumbent.empty() && report.incumbent[i] > 0.5)
      out.portfolio = out.portfolio.with(i);
  out.value = oracle(out.portfolio);
  out.report.incumbent_value = out.value;
  return out;
}

inline MeanRiskResult solve_mean_risk(const MeanRiskSpec& spec, const DcgConfig& cfg = {}) {
  return solve_mean_risk(spec, make_mean_risk_oracle(spec), cfg);
}

// ---------------------------------------------------------------------------
// Coupled feature selection.

struct FeatureSelection {
  TernaryPoint selection;
  double mutual_information = 0.0;
  DcgReport report;
};

/// Maximizes the coupled mutual information under per-class cardinality caps,
/// treating the bisubmodular objective as a 2-set function. The xi table is
/// computed exactly; monotonicity is not assumed.
inline FeatureSelection solve_feature_selection(const FeatureTable& table, int cap1, int cap2,
                                                const DcgConfig& cfg = {}) {
  const int n = table.n_features;
  BisetOracle mi = make_mutual_information_oracle(table);
  mi.normalize(TernaryPoint(n));
  KSetOracle two_set = as_two_set_oracle(mi);
  two_set.normalize(KPoint(n, 2));
  KsubConstraints cons;
  cons.type_budgets = {static_cast<double>(cap1), static_cast<double>(cap2)};
  DcgReport report = dcg_max_ksub(two_set, 2, cons, cfg, /*oracle_is_monotone=*/false);
  FeatureSelection out;
  out.report = report;
  out.selection = TernaryPoint(n);
  for (int i = 0; i < n; ++i) {
    if (!report.incumbent.empty() && report.incumbent[i] > 0.5) out.selection.set(i, 1);
    if (!report.incumbent.empty() && report.incumbent[n + i] > 0.5) out.selection.set(i, -1);
  }
  out.mutual_information = mi(out.selection);
  return out;
}

}  // namespace gso
