#pragma once

#include "gso/cuts.hpp"
#include "gso/milp.hpp"

namespace gso {

/// Relative optimality gap, (UB - LB) / UB with a guard for tiny values.
/// Reported gaps are clamped to zero once the bounds cross within roundoff.
inline double relative_gap(double lb, double ub) {
  if (ub <= lb) return 0.0;
  return (ub - lb) / std::max(std::fabs(ub), 1e-10);
}

struct DcgConfig {
  double eps = 1e-6;  // must be > 0
  long max_iterations = 5000;
  double time_limit_s = 0;  // 0: none
  enum class Mode { automatic, iterative, single_tree } mode = Mode::automatic;
  // engine knobs
  int cut_rounds_per_node = 40;
  long node_limit = 0;
  // enumeration caps
  std::uint64_t xi_assignment_cap = 1ULL << 20;
  double lift_budget_cap = 2e6;

  void check() const { require(eps > 0, "DcgConfig: eps must be positive"); }

  MilpOptions milp_options() const {
    MilpOptions opt;
    opt.rel_gap = std::min(eps, 1e-9);  // masters are solved tight; eps governs the outer loop
    opt.node_limit = node_limit;
    opt.time_limit_s = time_limit_s;
    opt.cut_rounds_per_node = cut_rounds_per_node;
    return opt;
  }
};

struct DcgReport {
  std::vector<std::pair<double, double>> trace;  // (LB, UB) per iteration
  std::map<CutFamily, long> cuts_added;
  long nodes = 0;
  long simplex_iterations = 0;
  std::string termination;  // gap | no_violation | max_iterations | time_limit | ...
  std::vector<double> incumbent;
  double incumbent_value = std::numeric_limits<double>::quiet_NaN();
  double lower_bound = -kInf;
  double upper_bound = kInf;
  double gap = kInf;
  double time_s = 0.0;

  long total_cuts() const {
    long total = 0;
    for (const auto& [fam, cnt] : cuts_added) total += cnt;
    return total;
  }
};

namespace detail {

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

inline void count_cut(DcgReport& report, CutFamily family) { ++report.cuts_added[family]; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Submodular minimization.

/// Exact minimization of a normalized submodular oracle over {0,1}^n points
/// satisfying the extra linear rows.
///
/// Unconstrained instances run the iterative LP master: by the convex-closure
/// property the extension's minimum is attained at a binary point, so no
/// integrality is needed and the incumbent is read off the greedy chain.
/// With extra constraints the driver switches to a single-tree branch-and-cut
/// with lazy EPI separation.
inline DcgReport dcg_min_submodular(const SetOracle& f, const std::vector<LinearRow>& extra,
                                    const DcgConfig& cfg = {}) {
  cfg.check();
  require(std::fabs(f(SetPoint(f.n()))) <= 1e-12, "dcg_min_submodular: oracle must be normalized");
  detail::Stopwatch clock;
  const int n = f.n();
  DcgReport report;

  // Rigorous w bounds from the submodular telescoping estimates:
  // f(X) >= sum_i min(0, rho_i(N\{i})) and f(X) <= f(N) - same sum.
  const SetPoint full(n, (1ULL << n) - 1);
  double tail_sum = 0.0;
  for (int i = 0; i < n; ++i) tail_sum += std::min(0.0, f(full) - f(full.without(i)));
  const double w_lo = tail_sum - 1.0;
  const double w_hi = f(full) - tail_sum + 1.0;

  const bool single_tree = (cfg.mode == DcgConfig::Mode::single_tree) ||
                           (cfg.mode == DcgConfig::Mode::automatic && !extra.empty());

  MilpModel master;
  master.sense = ObjSense::minimize;
  for (int i = 0; i < n; ++i) master.add_col("x" + std::to_string(i), 0.0, 1.0, 0.0, single_tree);
  const int w_col = master.add_col("w", w_lo, w_hi, 1.0, false);
  for (const auto& row : extra) master.add_row(row);

  CutPool pool;
  auto add_cut = [&](const Cut& cut) {
    if (!pool.add(cut)) return false;
    master.add_row(cut_to_row(cut, w_col, 0));
    detail::count_cut(report, cut.family);
    return true;
  };

  if (!single_tree) {
    double lb = -kInf, ub = kInf;
    std::vector<double> best_x;
    for (long it = 0; it < cfg.max_iterations; ++it) {
      if (cfg.time_limit_s > 0 && clock.seconds() > cfg.time_limit_s) {
        report.termination = "time_limit";
        break;
      }
      SolveResult lp = lp_solve(master);
      require(lp.status == SolveStatus::optimal,
              std::string("dcg_min_submodular: master failed: ") + to_string(lp.status));
      report.simplex_iterations += lp.simplex_iterations;
      lb = std::max(lb, lp.objective);  // relaxation value never regresses the bound
      std::vector<double> xbar(lp.x.begin(), lp.x.begin() + n);
      LovaszChain chain = lovasz_chain(f, xbar);
      // the best chain prefix is a feasible binary point
      SetPoint prefix(n), best_prefix(n);
      double prefix_best = chain.prefix_val[0];
      for (int i = 0; i < n; ++i) {
        prefix = prefix.with(chain.delta[i]);
        if (chain.prefix_val[i + 1] < prefix_best) {
          prefix_best = chain.prefix_val[i + 1];
          best_prefix = prefix;
        }
      }
      if (prefix_best < ub) {
        ub = prefix_best;
        best_x = best_prefix.to_vector();
      }
      report.trace.emplace_back(lb, ub);
      if (relative_gap(lb, ub) <= cfg.eps) {
        report.termination = "gap";
        break;
      }
      Cut cut = epi_separate(f, xbar);
      const double viol = cut_violation(cut, xbar, lp.objective);
      if (viol <= 1e-9 || !add_cut(cut)) {
        // no violated cut: the master value certifies the extension minimum,
        // so the residual LP roundoff closes
        if (ub - lb <= 1e-7 * std::max(1.0, std::fabs(ub))) lb = ub;
        report.termination = "no_violation";
        report.trace.emplace_back(lb, ub);
        break;
      }
    }
    if (report.termination.empty()) report.termination = "max_iterations";
    report.lower_bound = lb;
    report.upper_bound = ub;
    report.incumbent = best_x;
    report.incumbent_value = ub;
    report.gap = relative_gap(lb, ub);
    report.time_s = clock.seconds();
    return report;
  }

  // single tree: lazy EPIs at integer candidates, greedy EPIs at fractional
  // node solutions
  add_cut(epi_from_permutation(f, Permutation::identity(n)));
  double best_val = kInf;
  std::vector<double> best_x;
  master.candidate_objective = [&](std::span<const double> cand) {
    SetPoint point(n);
    for (int i = 0; i < n; ++i)
      if (cand[i] > 0.5) point = point.with(i);
    return f(point);
  };
  master.lazy_callback = [&](std::span<const double> cand) {
    std::vector<double> xbar(cand.begin(), cand.begin() + n);
    SetPoint point = SetPoint::from_indicator([&] {
      std::vector<int> bits(n);
      for (int i = 0; i < n; ++i) bits[i] = cand[i] > 0.5 ? 1 : 0;
      return bits;
    }());
    const double fx = f(point);
    if (fx < best_val) {
      best_val = fx;
      best_x = point.to_vector();
    }
    std::vector<LinearRow> out;
    if (cand[w_col] < fx - 1e-7 * std::max(1.0, std::fabs(fx))) {
      Cut cut = epi_separate(f, point.to_vector());
      if (pool.add(cut)) {
        detail::count_cut(report, cut.family);
        out.push_back(cut_to_row(cut, w_col, 0));
      } else {
        out.push_back(cut_to_row(cut, w_col, 0));  // re-add: still violated at this candidate
      }
    }
    return out;
  };
  master.cut_callback = [&](std::span<const double> x) {
    std::vector<double> xbar(x.begin(), x.begin() + n);
    std::vector<LinearRow> out;
    Cut cut = epi_separate(f, xbar);
    if (cut_violation(cut, xbar, x[w_col]) > 1e-7 && pool.add(cut)) {
      detail::count_cut(report, cut.family);
      out.push_back(cut_to_row(cut, w_col, 0));
    }
    return out;
  };

  SolveResult res = milp_solve(master, cfg.milp_options());
  report.nodes = res.nodes;
  report.simplex_iterations = res.simplex_iterations;
  report.termination = to_string(res.status);
  if (res.status == SolveStatus::optimal) report.termination = "gap";
  report.lower_bound = std::min(res.dual_bound, best_val);
  report.upper_bound = best_val;
  report.incumbent = best_x;
  report.incumbent_value = best_val;
  report.gap = relative_gap(report.lower_bound, report.upper_bound);
  report.trace.emplace_back(report.lower_bound, report.upper_bound);
  report.time_s = clock.seconds();
  return report;
}

// ---------------------------------------------------------------------------
// Submodular maximization.

/// Exact maximization via submodular (hypograph) inequalities. Monotonicity
/// is not required. Initial cuts at S = empty and S = N keep the master
/// bounded; separation generates the cut anchored at the incumbent support.
inline DcgReport dcg_max_submodular(const SetOracle& f, const std::vector<LinearRow>& extra,
                                    const DcgConfig& cfg = {}) {
  cfg.check();
  require(std::fabs(f(SetPoint(f.n()))) <= 1e-12, "dcg_max_submodular: oracle must be normalized");
  detail::Stopwatch clock;
  const int n = f.n();
  DcgReport report;

  const SetPoint empty(n);
  const SetPoint full(n, (1ULL << n) - 1);
  double hi = 1.0, lo = -1.0;
  for (int i = 0; i < n; ++i) {
    hi += std::max(0.0, f(empty.with(i)));
    lo += std::min(0.0, f(full) - f(full.without(i)));
  }
  lo = std::min(lo, 0.0);

  MilpModel master;
  master.sense = ObjSense::maximize;
  for (int i = 0; i < n; ++i) master.add_col("x" + std::to_string(i), 0.0, 1.0, 0.0, true);
  const int w_col = master.add_col("w", lo, hi, 1.0, false);
  for (const auto& row : extra) master.add_row(row);

  CutPool pool;
  auto add_cut = [&](const Cut& cut, std::vector<LinearRow>* out) {
    if (!pool.add(cut)) return false;
    detail::count_cut(report, cut.family);
    if (out)
      out->push_back(cut_to_row(cut, w_col, 0));
    else
      master.add_row(cut_to_row(cut, w_col, 0));
    return true;
  };
  add_cut(submax_cut_generate(f, empty), nullptr);
  add_cut(submax_cut_generate(f, full), nullptr);

  const bool iterative = cfg.mode == DcgConfig::Mode::iterative;
  double best_val = -kInf;
  std::vector<double> best_x;

  if (iterative) {
    double ub = kInf;
    for (long it = 0; it < cfg.max_iterations; ++it) {
      if (cfg.time_limit_s > 0 && clock.seconds() > cfg.time_limit_s) {
        report.termination = "time_limit";
        break;
      }
      SolveResult mip = milp_solve(master, cfg.milp_options());
      require(mip.status == SolveStatus::optimal,
              std::string("dcg_max_submodular: master failed: ") + to_string(mip.status));
      report.nodes += mip.nodes;
      report.simplex_iterations += mip.simplex_iterations;
      ub = std::min(ub, mip.objective);
      SetPoint point(n);
      for (int i = 0; i < n; ++i)
        if (mip.x[i] > 0.5) point = point.with(i);
      const double fx = f(point);
      if (fx > best_val) {
        best_val = fx;
        best_x = point.to_vector();
      }
      report.trace.emplace_back(best_val, ub);
      if (relative_gap(best_val, ub) <= cfg.eps) {
        report.termination = "gap";
        break;
      }
      if (!add_cut(submax_cut_generate(f, point), nullptr)) {
        if (ub - best_val <= 1e-7 * std::max(1.0, std::fabs(ub))) ub = best_val;
        report.termination = "no_violation";
        report.trace.emplace_back(best_val, ub);
        break;
      }
    }
    if (report.termination.empty()) report.termination = "max_iterations";
  } else {
    master.candidate_objective = [&](std::span<const double> cand) {
      SetPoint point(n);
      for (int i = 0; i < n; ++i)
        if (cand[i] > 0.5) point = point.with(i);
      return f(point);
    };
    master.lazy_callback = [&](std::span<const double> cand) {
      SetPoint point(n);
      for (int i = 0; i < n; ++i)
        if (cand[i] > 0.5) point = point.with(i);
      const double fx = f(point);
      if (fx > best_val) {
        best_val = fx;
        best_x = point.to_vector();
      }
      std::vector<LinearRow> out;
      if (cand[w_col] > fx + 1e-7 * std::max(1.0, std::fabs(fx))) {
        Cut cut = submax_cut_generate(f, point);
        add_cut(cut, &out);
        if (out.empty()) out.push_back(cut_to_row(cut, w_col, 0));
      }
      return out;
    };
    SolveResult res = milp_solve(master, cfg.milp_options());
    report.nodes = res.nodes;
    report.simplex_iterations = res.simplex_iterations;
    report.termination = res.status == SolveStatus::optimal ? "gap" : to_string(res.status);
    report.trace.emplace_back(best_val, res.dual_bound);
  }

  report.lower_bound = best_val;
  report.upper_bound = report.trace.empty() ? best_val : report.trace.back().second;
  report.upper_bound = std::max(report.upper_bound, best_val);
  report.incumbent = best_x;
  report.incumbent_value = best_val;
  report.gap = relative_gap(best_val, report.upper_bound);
  report.time_s = clock.seconds();
  return report;
}

// ---------------------------------------------------------------------------
// k-submodular maximization.

struct KsubConstraints {
  std::vector<double> type_budgets;     // sum_i x_i^q <= B_q (empty: none)
  std::vector<LinearRow> extra;         // over the kn layout q*n + i
};

/// Master over the kn binary block variables with disjointness rows and
/// k-submodular inequalities.
///
/// `oracle_is_monotone` switches the xi table to zeros: valid (true xi >= 0
/// under monotonicity) and the only affordable option beyond the enumeration
/// cap.
inline DcgReport dcg_max_ksub(const KSetOracle& f, int k, const KsubConstraints& cons,
                              const DcgConfig& cfg = {}, bool oracle_is_monotone = false) {
  cfg.check();
  const int n = f.n();
  require(std::fabs(f(KPoint(n, k))) <= 1e-12, "dcg_max_ksub: oracle must be normalized");
  detail::Stopwatch clock;
  DcgReport report;

  XiTable xi = oracle_is_monotone ? XiTable::zeros(f, k)
                                  : XiTable(f, k, XiCap{cfg.xi_assignment_cap});

  const KPoint empty(n, k);
  // orthant submodularity: f(X) is at most the sum of its items' empty-set
  // marginals, and budgets cap how many items contribute
  std::vector<double> best_gain(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int q = 0; q < k; ++q) best_gain[i] = std::max(best_gain[i], f(empty.with(i, q)));
  std::sort(best_gain.begin(), best_gain.end(), std::greater<>());
  std::size_t takeable = best_gain.size();
  if (!cons.type_budgets.empty()) {
    double total = 0.0;
    for (double b : cons.type_budgets) total += b;
    takeable = std::min<std::size_t>(takeable, static_cast<std::size_t>(total));
  }
  double hi = 1.0;
  for (std::size_t i = 0; i < takeable; ++i) hi += std::max(0.0, best_gain[i]);

  MilpModel master;
  master.sense = ObjSense::maximize;
  for (int q = 0; q < k; ++q)
    for (int i = 0; i < n; ++i)
      master.add_col("x" + std::to_string(i) + "_" + std::to_string(q), 0.0, 1.0, 0.0, true);
  double lo = -1.0;
  if (!oracle_is_monotone)
    for (int i = 0; i < n; ++i) {
      double worst = 0.0;
      for (int q = 0; q < k; ++q) worst = std::min(worst, xi.xi(i, q));
      lo += worst;
    }
  const int w_col = master.add_col("w", lo, hi, 1.0, false);

  for (int i = 0; i < n; ++i) {
    LinearRow disjoint;
    for (int q = 0; q < k; ++q) disjoint.terms.emplace_back(q * n + i, 1.0);
    disjoint.relation = 'L';
    disjoint.rhs = 1.0;
    disjoint.name = "disjoint" + std::to_string(i);
    master.add_row(std::move(disjoint));
  }
  if (!cons.type_budgets.empty()) {
    require(static_cast<int>(cons.type_budgets.size()) == k, "dcg_max_ksub: budget size mismatch");
    for (int q = 0; q < k; ++q) {
      LinearRow budget;
      for (int i = 0; i < n; ++i) budget.terms.emplace_back(q * n + i, 1.0);
      budget.relation = 'L';
      budget.rhs = cons.type_budgets[q];
      budget.name = "budget" + std::to_string(q);
      master.add_row(std::move(budget));
    }
  }
  for (const auto& row : cons.extra) master.add_row(row);

  CutPool pool;
  auto add_cut = [&](const Cut& cut, std::vector<LinearRow>* out) {
    if (!pool.add(cut)) return false;
    detail::count_cut(report, cut.family);
    if (out)
      out->push_back(cut_to_row(cut, w_col, 0));
    else
      master.add_row(cut_to_row(cut, w_col, 0));
    return true;
  };
  // boundedness seeds: the empty k-set and the complete one-type assignments
  add_cut(ksub_cut_generate(f, xi, empty), nullptr);
  for (int q = 0; q < k; ++q) {
    KPoint all_q(n, k);
    for (int i = 0; i < n; ++i) all_q.assign(i, q);
    add_cut(ksub_cut_generate(f, xi, all_q), nullptr);
  }

  auto point_from = [&](std::span<const double> x) {
    KPoint p(n, k);
    for (int q = 0; q < k; ++q)
      for (int i = 0; i < n; ++i)
        if (x[q * n + i] > 0.5) p.assign(i, q);
    return p;
  };

  double best_val = -kInf;
  std::vector<double> best_x;
  const bool iterative = cfg.mode == DcgConfig::Mode::iterative;

  if (iterative) {
    double ub = kInf;
    for (long it = 0; it < cfg.max_iterations; ++it) {
      if (cfg.time_limit_s > 0 && clock.seconds() > cfg.time_limit_s) {
        report.termination = "time_limit";
        break;
      }
      SolveResult mip = milp_solve(master, cfg.milp_options());
      require(mip.status == SolveStatus::optimal,
              std::string("dcg_max_ksub: master failed: ") + to_string(mip.status));
      report.nodes += mip.nodes;
      report.simplex_iterations += mip.simplex_iterations;
      ub = std::min(ub, mip.objective);
      KPoint point = point_from(mip.x);
      const double fx = f(point);
      if (fx > best_val) {
        best_val = fx;
        best_x = point.to_vector();
      }
      report.trace.emplace_back(best_val, ub);
      if (relative_gap(best_val, ub) <= cfg.eps) {
        report.termination = "gap";
        break;
      }
      if (!add_cut(ksub_cut_generate(f, xi, point), nullptr)) {
        if (ub - best_val <= 1e-7 * std::max(1.0, std::fabs(ub))) ub = best_val;
        report.termination = "no_violation";
        report.trace.emplace_back(best_val, ub);
        break;
      }
    }
    if (report.termination.empty()) report.termination = "max_iterations";
  } else {
    master.candidate_objective = [&](std::span<const double> cand) {
      return f(point_from(cand));
    };
    master.lazy_callback = [&](std::span<const double> cand) {
      KPoint point = point_from(cand);
      const double fx = f(point);
      if (fx > best_val) {
        best_val = fx;
        best_x = point.to_vector();
      }
      std::vector<LinearRow> out;
      if (cand[w_col] > fx + 1e-7 * std::max(1.0, std::fabs(fx))) {
        Cut cut = ksub_cut_generate(f, xi, point);
        add_cut(cut, &out);
        if (out.empty()) out.push_back(cut_to_row(cut, w_col, 0));
      }
      return out;
    };
    SolveResult res = milp_solve(master, cfg.milp_options());
    report.nodes = res.nodes;
    report.simplex_iterations = res.simplex_iterations;
    report.termination = res.status == SolveStatus::optimal ? "gap" : to_string(res.status);
    report.trace.emplace_back(best_val, res.dual_bound);
  }

  report.lower_bound = best_val;
  report.upper_bound = report.trace.empty() ? best_val : report.trace.back().second;
  report.upper_bound = std::max(report.upper_bound, best_val);
  report.incumbent = best_x;
  report.incumbent_value = best_val;
  report.gap = relative_gap(best_val, report.upper_bound);
  report.time_s = clock.seconds();
  return report;
}

// ---------------------------------------------------------------------------
// Bisubmodular minimization.

struct BisubConstraints {
  // Rows over the 2n+0 layout: y1 at columns 0..n-1, y2 at n..2n-1.
  std::vector<LinearRow> rows_y;
  // Items forced to y1 = y2 = 0 (support restrictions).
  std::vector<int> fixed_zero;

  bool empty() const { return rows_y.empty() && fixed_zero.empty(); }
};

struct BisubChain {
  Cut cut;
  TernaryPoint best_prefix;
  double best_prefix_value = kInf;
};

namespace detail {

inline BisubChain bisub_chain(const BisetOracle& f, const std::vector<double>& xbar) {
  BisubChain out;
  out.cut = bisub_separate(f, xbar);
  const int n = f.n();
  Permutation delta = Permutation::by_descending_abs(xbar);
  TernaryPoint s(n), best(n);
  double best_val = f(s);
  for (int pos = 0; pos < n; ++pos) {
    const int i = delta[pos];
    s.set(i, xbar[i] >= 0.0 ? 1 : -1);
    const double v = f(s);
    if (v < best_val) {
      best_val = v;
      best = s;
    }
  }
  out.best_prefix = best;
  out.best_prefix_value = best_val;
  return out;
}

}  // namespace detail

/// Exact constrained bisubmodular minimization over ternary points encoded as
/// x = y1 - y2 with binary y and disjointness y1 + y2 <= 1. Extremal
/// poly-bimatroid cuts are separated at fractional relaxation points and at
/// integer candidates.
inline DcgReport dcg_min_bisub(const BisetOracle& f, const BisubConstraints& cons,
                               const DcgConfig& cfg = {}) {
  cfg.check();
  const int n = f.n();
  require(std::fabs(f(TernaryPoint(n))) <= 1e-12, "dcg_min_bisub: oracle must be normalized");
  detail::Stopwatch clock;
  DcgReport report;

  // w bounds: any extremal cut under-estimates f on the box, and orthant
  // submodularity caps f by the empty-set marginals.
  const std::vector<double> pi_plus = signed_greedy(f, Permutation::identity(n), std::vector<int>(n, 1));
  const std::vector<double> pi_minus = signed_greedy(f, Permutation::identity(n), std::vector<int>(n, -1));
  double lo_plus = 0.0, lo_minus = 0.0, hi = 1.0;
  TernaryPoint empty(n);
  for (int i = 0; i < n; ++i) {
    lo_plus -= std::fabs(pi_plus[i]);
    lo_minus -= std::fabs(pi_minus[i]);
    hi += std::max({0.0, f(empty.with(i, 1)), f(empty.with(i, -1))});
  }
  const double w_lo = std::max(lo_plus, lo_minus) - 1.0;

  const bool single_tree = (cfg.mode == DcgConfig::Mode::single_tree) ||
                           (cfg.mode == DcgConfig::Mode::automatic && !cons.empty());

  MilpModel master;
  master.sense = ObjSense::minimize;
  for (int i = 0; i < n; ++i) master.add_col("y1_" + std::to_string(i), 0.0, 1.0, 0.0, single_tree);
  for (int i = 0; i < n; ++i) master.add_col("y2_" + std::to_string(i), 0.0, 1.0, 0.0, single_tree);
  const int w_col = master.add_col("w", w_lo, hi, 1.0, false);
  for (int i : cons.fixed_zero) {
    master.ub[i] = 0.0;
    master.ub[n + i] = 0.0;
  }
  for (int i = 0; i < n; ++i) {
    LinearRow disjoint;
    disjoint.terms = {{i, 1.0}, {n + i, 1.0}};
    disjoint.relation = 'L';
    disjoint.rhs = 1.0;
    disjoint.name = "disjoint" + std::to_string(i);
    master.add_row(std::move(disjoint));
  }
  for (const auto& row : cons.rows_y) master.add_row(row);

  CutPool pool;
  auto add_cut = [&](const Cut& cut, std::vector<LinearRow>* out) {
    if (!pool.add(cut)) return false;
    detail::count_cut(report, cut.family);
    if (out)
      out->push_back(cut_to_row_split(cut, w_col, 0, n));
    else
      master.add_row(cut_to_row_split(cut, w_col, 0, n));
    return true;
  };
  add_cut(bisub_separate(f, std::vector<double>(n, 0.0)), nullptr);

  auto xbar_from = [&](std::span<const double> v) {
    std::vector<double> xbar(n);
    for (int i = 0; i < n; ++i) xbar[i] = std::clamp(v[i] - v[n + i], -1.0, 1.0);
    return xbar;
  };

  double best_val = kInf;
  std::vector<double> best_x;  // ternary values
  auto offer = [&](const TernaryPoint& p, double value) {
    if (value < best_val) {
      best_val = value;
      best_x = p.to_vector();
    }
  };

  if (!single_tree) {
    double lb = -kInf;
    for (long it = 0; it < cfg.max_iterations; ++it) {
      if (cfg.time_limit_s > 0 && clock.seconds() > cfg.time_limit_s) {
        report.termination = "time_limit";
        break;
      }
      SolveResult lp = lp_solve(master);
      require(lp.status == SolveStatus::optimal,
              std::string("dcg_min_bisub: master failed: ") + to_string(lp.status));
      report.simplex_iterations += lp.simplex_iterations;
      lb = std::max(lb, lp.objective);
      const std::vector<double> xbar = xbar_from(lp.x);
      BisubChain chain = detail::bisub_chain(f, xbar);
      offer(chain.best_prefix, chain.best_prefix_value);
      report.trace.emplace_back(lb, best_val);
      if (relative_gap(lb, best_val) <= cfg.eps) {
        report.termination = "gap";
        break;
      }
      const double viol = cut_violation(chain.cut, xbar, lp.objective);
      if (viol <= 1e-9 || !add_cut(chain.cut, nullptr)) {
        if (best_val - lb <= 1e-7 * std::max(1.0, std::fabs(best_val))) lb = best_val;
        report.termination = "no_violation";
        report.trace.emplace_back(lb, best_val);
        break;
      }
    }
    if (report.termination.empty()) report.termination = "max_iterations";
    report.lower_bound = report.trace.empty() ? -kInf : report.trace.back().first;
  } else {
    master.candidate_objective = [&](std::span<const double> cand) {
      TernaryPoint p(n);
      for (int i = 0; i < n; ++i) {
        if (cand[i] > 0.5) p.set(i, 1);
        if (cand[n + i] > 0.5) p.set(i, -1);
      }
      return f(p);
    };
    master.lazy_callback = [&](std::span<const double> cand) {
      TernaryPoint p(n);
      for (int i = 0; i < n; ++i) {
        if (cand[i] > 0.5) p.set(i, 1);
        if (cand[n + i] > 0.5) p.set(i, -1);
      }
      const double fx = f(p);
      offer(p, fx);
      std::vector<LinearRow> out;
      if (cand[w_col] < fx - 1e-7 * std::max(1.0, std::fabs(fx))) {
        Cut cut = bisub_separate(f, p.to_vector());
        add_cut(cut, &out);
        if (out.empty()) out.push_back(cut_to_row_split(cut, w_col, 0, n));
      }
      return out;
    };
    master.cut_callback = [&](std::span<const double> x) {
      const std::vector<double> xbar = xbar_from(x);
      std::vector<LinearRow> out;
      Cut cut = bisub_separate(f, xbar);
      if (cut_violation(cut, xbar, x[w_col]) > 1e-7 && pool.add(cut)) {
        detail::count_cut(report, cut.family);
        out.push_back(cut_to_row_split(cut, w_col, 0, n));
      }
      return out;
    };
    SolveResult res = milp_solve(master, cfg.milp_options());
    report.nodes = res.nodes;
    report.simplex_iterations = res.simplex_iterations;
    report.termination = res.status == SolveStatus::optimal ? "gap" : to_string(res.status);
    if (res.status == SolveStatus::infeasible) {
      report.termination = "infeasible";
      report.time_s = clock.seconds();
      return report;
    }
    report.lower_bound = std::min(res.dual_bound, best_val);
    report.trace.emplace_back(report.lower_bound, best_val);
  }

  report.upper_bound = best_val;
  report.incumbent = best_x;
  report.incumbent_value = best_val;
  report.gap = relative_gap(report.lower_bound, report.upper_bound);
  report.time_s = clock.seconds();
  return report;
}

// ---------------------------------------------------------------------------
// Cardinality-constrained concave-of-linear minimization (branch and cut).

struct CcminProblem {
  ConcaveOfLinear spec;
  std::vector<double> modular;  // added to the objective; empty means zero
  int k = 1;
  std::vector<LinearRow> extra;
};

/// min c'x + g(a'x) subject to sum x <= k and the extra rows, by branch and
/// cut over the lifted-EPI / ALI / SI families. Lifting enumerates exactly
/// below the budget cap and falls back to the ALI beyond it.
inline DcgReport ccmin_branch_and_cut(const CcminProblem& prob, const DcgConfig& cfg = {}) {
  cfg.check();
  const int n = prob.spec.n();
  require(prob.k >= 1 && prob.k <= n, "ccmin: k out of range");
  require(prob.modular.empty() || static_cast<int>(prob.modular.size()) == n,
          "ccmin: modular term dimension mismatch");
  detail::Stopwatch clock;
  DcgReport report;

  const auto& a = prob.spec.weights;
  auto G = [&](double t) { return prob.spec.g(t) - prob.spec.g(0.0); };
  auto modular_at = [&](const SetPoint& p) {
    double v = 0.0;
    if (!prob.modular.empty())
      for (int i = 0; i < n; ++i)
        if (p.test(i)) v += prob.modular[i];
    return v;
  };

  // w spans the concave range over feasible prefix weights
  std::vector<double> sorted_a = a;
  std::sort(sorted_a.begin(), sorted_a.end(), std::greater<>());
  double t_max = 0.0;
  for (int i = 0; i < prob.k; ++i) t_max += sorted_a[i];
  double g_hi = std::max(G(0.0), G(t_max));
  {  // concave: ternary search for the interior maximum
    double lo = 0.0, hi = t_max;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (G(m1) < G(m2))
        lo = m1;
      else
        hi = m2;
      g_hi = std::max({g_hi, G(m1), G(m2)});
    }
  }
  const double w_lo = std::min(0.0, G(t_max)) - 1.0;
  const double w_hi = g_hi + 1.0;

  const bool all_equal =
      std::all_of(a.begin(), a.end(), [&](double v) { return std::fabs(v - a[0]) <= 1e-12; });

  MilpModel master;
  master.sense = ObjSense::minimize;
  for (int i = 0; i < n; ++i)
    master.add_col("x" + std::to_string(i), 0.0, 1.0,
                   prob.modular.empty() ? 0.0 : prob.modular[i], true);
  const int w_col = master.add_col("w", w_lo, w_hi, 1.0, false);
  {
    LinearRow card;
    for (int i = 0; i < n; ++i) card.terms.emplace_back(i, 1.0);
    card.relation = 'L';
    card.rhs = prob.k;
    card.name = "cardinality";
    master.add_row(std::move(card));
  }
  for (const auto& row : prob.extra) master.add_row(row);

  CutPool pool;
  auto add_cut = [&](const Cut& cut, std::vector<LinearRow>* out) {
    if (!pool.add(cut)) return false;
    detail::count_cut(report, cut.family);
    if (out)
      out->push_back(cut_to_row(cut, w_col, 0));
    else
      master.add_row(cut_to_row(cut, w_col, 0));
    return true;
  };

  const bool lift_affordable = n * binomial(n - 1, prob.k - 1) <= cfg.lift_budget_cap;
  auto strongest_cut_along = [&](const Permutation& delta) {
    if (lift_affordable) {
      SetPoint seed(n);
      for (int pos = 0; pos < prob.k; ++pos) seed = seed.with(delta[pos]);
      return lift_epi_exact(prob.spec, prob.k, seed, delta, LiftOptions{cfg.lift_budget_cap});
    }
    return ali_generate(prob.spec, prob.k, delta);
  };

  // initial pool: the identity-permutation cut, plus the SI ladder when the
  // weights are all equal
  add_cut(strongest_cut_along(Permutation::identity(n)), nullptr);
  if (all_equal)
    for (int i0 = 0; i0 < prob.k; ++i0)
      add_cut(si_generate(prob.spec.g, a[0], n, prob.k, i0, Permutation::identity(n)), nullptr);

  double best_val = kInf;
  std::vector<double> best_x;
  auto weight_of = [&](const SetPoint& point) {
    double t = 0.0;
    for (int i = 0; i < n; ++i)
      if (point.test(i)) t += a[i];
    return t;
  };
  master.candidate_objective = [&](std::span<const double> cand) {
    SetPoint point(n);
    for (int i = 0; i < n; ++i)
      if (cand[i] > 0.5) point = point.with(i);
    return modular_at(point) + G(weight_of(point));
  };
  master.lazy_callback = [&](std::span<const double> cand) {
    SetPoint point(n);
    for (int i = 0; i < n; ++i)
      if (cand[i] > 0.5) point = point.with(i);
    const double gx = G(weight_of(point));
    const double total = modular_at(point) + gx;
    if (total < best_val) {
      best_val = total;
      best_x = point.to_vector();
    }
    std::vector<LinearRow> out;
    if (cand[w_col] < gx - 1e-7 * std::max(1.0, std::fabs(gx))) {
      // delta: the candidate's items first (by index), then the rest
      Cut cut = strongest_cut_along(Permutation::by_descending(point.to_vector()));
      add_cut(cut, &out);
      if (out.empty()) out.push_back(cut_to_row(cut, w_col, 0));
    }
    return out;
  };
  master.cut_callback = [&](std::span<const double> x) {
    std::vector<double> xbar(x.begin(), x.begin() + n);
    std::vector<LinearRow> out;
    Permutation delta = Permutation::by_descending(xbar);
    Cut cut = strongest_cut_along(delta);
    if (cut_violation(cut, xbar, x[w_col]) > 1e-7 && pool.add(cut)) {
      detail::count_cut(report, cut.family);
      out.push_back(cut_to_row(cut, w_col, 0));
    }
    if (out.empty() && all_equal) {
      for (int i0 = 0; i0 < prob.k; ++i0) {
        Cut si = si_generate(prob.spec.g, a[0], n, prob.k, i0, delta);
        if (cut_violation(si, xbar, x[w_col]) > 1e-7 && pool.add(si)) {
          detail::count_cut(report, si.family);
          out.push_back(cut_to_row(si, w_col, 0));
          break;
        }
      }
    }
    return out;
  };

  SolveResult res = milp_solve(master, cfg.milp_options());
  report.nodes = res.nodes;
  report.simplex_iterations = res.simplex_iterations;
  report.termination = res.status == SolveStatus::optimal ? "gap" : to_string(res.status);
  if (res.status == SolveStatus::infeasible) {
    report.termination = "infeasible";
    report.time_s = clock.seconds();
    return report;
  }
  report.lower_bound = std::min(res.dual_bound, best_val);
  report.upper_bound = best_val;
  report.incumbent = best_x;
  report.incumbent_value = best_val;
  report.gap = relative_gap(report.lower_bound, report.upper_bound);
  report.trace.emplace_back(report.lower_bound, report.upper_bound);
  report.time_s = clock.seconds();
  return report;
}

}  // namespace gso
