#pragma once

#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <span>

#include "gso/simplex.hpp"

namespace gso {

/// Mixed-integer linear model over box-bounded variables with an optional
/// lazy-cut callback slot.
///
/// The lazy callback runs at every integer-feasible candidate and may reject
/// it by returning violated rows, which are added globally. The user-cut
/// callback (optional) runs at fractional node solutions; returned rows are
/// also added globally.
struct MilpModel {
  ObjSense sense = ObjSense::minimize;
  std::vector<double> obj;
  std::vector<double> lb, ub;
  std::vector<bool> integer;
  std::vector<std::string> col_names;
  std::vector<LinearRow> rows;

  using CutCallback = std::function<std::vector<LinearRow>(std::span<const double>)>;
  CutCallback lazy_callback;
  CutCallback cut_callback;
  // Exact objective of an integer candidate (user sense). When set, incumbent
  // bookkeeping uses it instead of the LP objective, so the auxiliary-variable
  // slack inside the LP feasibility tolerance cannot distort pruning.
  std::function<double(std::span<const double>)> candidate_objective;

  int num_cols() const { return static_cast<int>(obj.size()); }

  int add_col(const std::string& name, double lower, double upper, double cost,
              bool is_integer) {
    col_names.push_back(name);
    lb.push_back(lower);
    ub.push_back(upper);
    obj.push_back(cost);
    integer.push_back(is_integer);
    return num_cols() - 1;
  }

  void add_row(LinearRow row) { rows.push_back(std::move(row)); }

  void check() const {
    for (int j = 0; j < num_cols(); ++j) {
      require(std::isfinite(lb[j]) && std::isfinite(ub[j]),
              "MilpModel: all variables need finite bounds");
      require(lb[j] <= ub[j] + 1e-12, "MilpModel: empty variable domain");
    }
    for (const auto& r : rows)
      for (auto [c, v] : r.terms) {
        (void)v;
        require(c >= 0 && c < num_cols(), "MilpModel: row references unknown column");
      }
  }
};

struct SolveResult {
  SolveStatus status = SolveStatus::numerical_failure;
  std::vector<double> x;
  double objective = 0.0;
  double dual_bound = 0.0;
  long nodes = 0;
  long simplex_iterations = 0;
};

struct MilpOptions {
  double rel_gap = 1e-6;
  double int_tol = kIntTol;
  long node_limit = 0;       // 0: none
  double time_limit_s = 0;   // 0: none
  int cut_rounds_per_node = 40;
  long lazy_rounds_limit = 100000;  // hard stop against a stalled callback
  // Fix-and-solve rounding heuristic: integer columns fixed to a rounding of
  // the node LP solution, continuous columns re-optimized. Feeds candidates
  // to the lazy callback early, which matters when the formulation lives in
  // lazily generated cuts.
  bool rounding_heuristic = true;
  int heuristic_rounds_per_node = 8;
};

/// Solves the continuous relaxation (integrality marks ignored).
inline SolveResult lp_solve(const MilpModel& model, const SimplexOptions& opt = {}) {
  model.check();
  DenseSimplex simplex(model.sense, model.obj, model.lb, model.ub, model.rows, opt);
  LpResult lp = simplex.solve();
  SolveResult res;
  res.status = lp.status;
  res.x = std::move(lp.x);
  res.objective = lp.objective;
  res.dual_bound = lp.objective;
  res.simplex_iterations = lp.iterations;
  return res;
}

namespace detail {

struct BnbNode {
  long id = 0;
  double bound = 0.0;  // in minimize terms
  std::vector<double> lb, ub;
};

struct NodeOrder {
  bool operator()(const BnbNode& a, const BnbNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.id > b.id;                                // FIFO among ties
  }
};

}  // namespace detail

/// Branch and bound: best-bound node selection, branching on the most
/// fractional integer variable (ties to the lowest index). Deterministic for
/// identical inputs whenever no time limit is set.
inline SolveResult milp_solve(const MilpModel& model, const MilpOptions& opt = {}) {
  model.check();
  const auto t_start = std::chrono::steady_clock::now();
  const bool maximize = model.sense == ObjSense::maximize;
  const int ncols = model.num_cols();

  // All node LPs minimize; flip the sign once here.
  std::vector<double> min_obj = model.obj;
  if (maximize)
    for (double& c : min_obj) c = -c;

  std::vector<LinearRow> cut_rows;  // global, grows via callbacks
  long next_id = 0;
  std::priority_queue<detail::BnbNode, std::vector<detail::BnbNode>, detail::NodeOrder> open;
  open.push({next_id++, -kInf, model.lb, model.ub});

  SolveResult res;
  res.status = SolveStatus::infeasible;
  double incumbent_obj = kInf;  // minimize terms
  std::vector<double> incumbent_x;
  long lazy_rounds = 0;

  auto all_rows = [&]() {
    std::vector<LinearRow> rows = model.rows;
    rows.insert(rows.end(), cut_rows.begin(), cut_rows.end());
    return rows;
  };

  auto elapsed_s = [&]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  auto finish = [&](SolveStatus status) {
    res.status = status;
    res.x = incumbent_x;
    res.objective = maximize ? -incumbent_obj : incumbent_obj;
    double lb_global = incumbent_obj;
    if (!open.empty()) lb_global = std::min(lb_global, open.top().bound);
    res.dual_bound = maximize ? -lb_global : lb_global;
    return res;
  };

  while (!open.empty()) {
    if (opt.node_limit > 0 && res.nodes >= opt.node_limit)
      return finish(SolveStatus::node_limit);
    if (opt.time_limit_s > 0 && elapsed_s() > opt.time_limit_s)
      return finish(SolveStatus::time_limit);

    detail::BnbNode node = open.top();
    open.pop();
    if (node.bound >= incumbent_obj - 1e-12) continue;  // pruned by bound
    // global gap termination; keep the node so the dual bound stays honest
    if (!incumbent_x.empty()) {
      const double gap =
          (incumbent_obj - node.bound) / std::max(std::fabs(incumbent_obj), 1e-10);
      if (gap <= opt.rel_gap) {
        open.push(std::move(node));
        break;
      }
    }
    ++res.nodes;

    // Solve the node LP; callbacks may force re-solves.
    std::vector<double> x;
    double node_obj = 0.0;
    bool node_done = false;
    int cut_rounds = 0;
    int heur_rounds = 0;

    // Offers an integer candidate to the lazy callback; returns true when the
    // callback rejected it with new rows (node must re-solve).
    auto offer_candidate = [&](std::vector<double> cand) {
      for (int j = 0; j < ncols; ++j)
        if (model.integer[j]) cand[j] = std::round(cand[j]);
      std::vector<LinearRow> rejected;
      if (model.lazy_callback) {
        require(++lazy_rounds <= opt.lazy_rounds_limit, "milp: lazy callback did not converge");
        rejected = model.lazy_callback(cand);
      }
      if (!rejected.empty()) {
        for (auto& r : rejected) cut_rows.push_back(std::move(r));
        return true;
      }
      double cand_obj;
      if (model.candidate_objective) {
        const double user = model.candidate_objective(cand);
        cand_obj = maximize ? -user : user;
      } else {
        cand_obj = 0.0;
        for (int j = 0; j < ncols; ++j) cand_obj += min_obj[j] * cand[j];
      }
      if (cand_obj < incumbent_obj - 1e-12) {
        incumbent_obj = cand_obj;
        incumbent_x = cand;
      }
      return false;
    };

    while (!node_done) {
      DenseSimplex simplex(ObjSense::minimize, min_obj, node.lb, node.ub, all_rows());
      LpResult lp = simplex.solve();
      res.simplex_iterations += lp.iterations;
      if (lp.status == SolveStatus::infeasible) {
        node_done = true;
        x.clear();
        break;
      }
      require(lp.status == SolveStatus::optimal,
              std::string("milp: node relaxation failed: ") + to_string(lp.status));
      x = lp.x;
      node_obj = lp.objective;
      if (node_obj >= incumbent_obj - 1e-12) {
        x.clear();
        break;
      }

      int frac_var = -1;
      double frac_score = opt.int_tol;
      for (int j = 0; j < ncols; ++j) {
        if (!model.integer[j]) continue;
        const double f = x[j] - std::floor(x[j]);
        const double dist = std::min(f, 1.0 - f);
        if (dist > frac_score) {
          frac_score = dist;
          frac_var = j;
        }
      }

      if (frac_var < 0) {
        if (offer_candidate(x)) continue;  // rejected with cuts; re-solve
        x.clear();                         // candidate consumed; nothing to branch on
        break;
      }

      if (opt.rounding_heuristic && heur_rounds < opt.heuristic_rounds_per_node) {
        ++heur_rounds;
        bool resolve = false;
        for (int mode = 0; mode < 2 && !resolve; ++mode) {
          std::vector<double> flb = node.lb, fub = node.ub;
          bool fixable = true;
          for (int j = 0; j < ncols && fixable; ++j) {
            if (!model.integer[j]) continue;
            double v = (mode == 0) ? std::floor(x[j] + opt.int_tol) : std::round(x[j]);
            v = std::clamp(v, node.lb[j], node.ub[j]);
            flb[j] = fub[j] = v;
          }
          DenseSimplex fixed(ObjSense::minimize, min_obj, flb, fub, all_rows());
          LpResult sub = fixed.solve();
          res.simplex_iterations += sub.iterations;
          if (sub.status != SolveStatus::optimal) continue;  // rounding infeasible
          if (sub.objective >= incumbent_obj - 1e-12) continue;
          if (offer_candidate(sub.x)) resolve = true;
        }
        if (resolve) continue;  // heuristic candidate bought new cuts
      }

      if (model.cut_callback && cut_rounds < opt.cut_rounds_per_node) {
        std::vector<LinearRow> extra = model.cut_callback(x);
        if (!extra.empty()) {
          ++cut_rounds;
          for (auto& r : extra) cut_rows.push_back(std::move(r));
          continue;
        }
      }

      // branch on frac_var
      detail::BnbNode down{next_id++, node_obj, node.lb, node.ub};
      down.ub[frac_var] = std::floor(x[frac_var]);
      detail::BnbNode up{next_id++, node_obj, node.lb, node.ub};
      up.lb[frac_var] = std::ceil(x[frac_var]);
      open.push(std::move(down));
      open.push(std::move(up));
      node_done = true;
    }
  }

  if (incumbent_x.empty()) {
    res.status = SolveStatus::infeasible;
    res.dual_bound = maximize ? -kInf : kInf;
    return res;
  }
  SolveResult out = finish(SolveStatus::optimal);
  if (open.empty()) out.dual_bound = out.objective;
  return out;
}

// ---------------------------------------------------------------------------
// Plain-text model dump/load for debugging.

inline void dump_model(const MilpModel& model, std::ostream& os) {
  os << "gso-lp 1\n";
  os << (model.sense == ObjSense::minimize ? "minimize\n" : "maximize\n");
  os << "obj:";
  for (int j = 0; j < model.num_cols(); ++j)
    if (model.obj[j] != 0.0) os << " " << format_real(model.obj[j], 17) << " " << model.col_names[j];
  os << "\nsubject_to\n";
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    const auto& row = model.rows[r];
    os << (row.name.empty() ? "r" + std::to_string(r) : row.name) << ":";
    for (auto [c, v] : row.terms)
      os << " " << format_real(v, 17) << " " << model.col_names[c];
    os << " " << (row.relation == 'L' ? "<=" : row.relation == 'G' ? ">=" : "=") << " "
       << format_real(row.rhs, 17) << "\n";
  }
  os << "bounds\n";
  for (int j = 0; j < model.num_cols(); ++j)
    os << format_real(model.lb[j], 17) << " <= " << model.col_names[j]
       << " <= " << format_real(model.ub[j], 17) << "\n";
  os << "integers\n";
  for (int j = 0; j < model.num_cols(); ++j)
    if (model.integer[j]) os << model.col_names[j] << "\n";
  os << "end\n";
}

inline MilpModel load_model(std::istream& is) {
  MilpModel model;
  std::string tok;
  is >> tok;
  require(tok == "gso-lp", "load_model: bad magic");
  int version;
  is >> version;
  require(version == 1, "load_model: unsupported version");
  is >> tok;
  model.sense = (tok == "minimize") ? ObjSense::minimize : ObjSense::maximize;
  std::map<std::string, int> col_of;
  auto col = [&](const std::string& name) {
    auto it = col_of.find(name);
    if (it != col_of.end()) return it->second;
    const int j = model.add_col(name, -kInf, kInf, 0.0, false);
    col_of.emplace(name, j);
    return j;
  };
  is >> tok;
  require(tok == "obj:", "load_model: expected objective");
  std::string line;
  std::getline(is, line);
  {
    std::istringstream ls(line);
    double coef;
    std::string name;
    while (ls >> coef >> name) model.obj[col(name)] = coef;
  }
  is >> tok;
  require(tok == "subject_to", "load_model: expected subject_to");
  is >> std::ws;
  while (std::getline(is, line)) {
    if (line == "bounds") break;
    std::istringstream ls(line);
    LinearRow row;
    std::string head;
    ls >> head;
    require(!head.empty() && head.back() == ':', "load_model: bad row header");
    row.name = head.substr(0, head.size() - 1);
    std::string a, b;
    while (ls >> a) {
      if (a == "<=" || a == ">=" || a == "=") {
        row.relation = (a == "<=") ? 'L' : (a == ">=") ? 'G' : 'E';
        ls >> row.rhs;
        break;
      }
      ls >> b;
      row.terms.emplace_back(col(b), std::stod(a));
    }
    model.rows.push_back(std::move(row));
  }
  while (std::getline(is, line)) {
    if (line == "integers") break;
    if (line.empty()) continue;
    std::istringstream ls(line);
    double lo, hi;
    std::string le1, name, le2;
    ls >> lo >> le1 >> name >> le2 >> hi;
    const int j = col(name);
    model.lb[j] = lo;
    model.ub[j] = hi;
  }
  while (std::getline(is, line)) {
    if (line == "end") break;
    if (line.empty()) continue;
    model.integer[col(line)] = true;
  }
  return model;
}

}  // namespace gso
