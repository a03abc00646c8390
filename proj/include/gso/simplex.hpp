#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "gso/common.hpp"

namespace gso {

enum class ObjSense { minimize, maximize };

enum class SolveStatus {
  optimal,
  infeasible,
  unbounded,
  iteration_limit,
  node_limit,
  time_limit,
  numerical_failure
};

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::iteration_limit: return "iteration_limit";
    case SolveStatus::node_limit: return "node_limit";
    case SolveStatus::time_limit: return "time_limit";
    case SolveStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

/// One linear constraint: sum of terms (col, coef) `relation` rhs.
/// relation is 'L' (<=), 'G' (>=) or 'E' (=).
struct LinearRow {
  std::vector<std::pair<int, double>> terms;
  char relation = 'L';
  double rhs = 0.0;
  std::string name;
};

struct SimplexOptions {
  long max_iterations = 0;  // 0: derive from size
  double feas_tol = kFeasTol;
  double opt_tol = kOptTol;
};

struct LpResult {
  SolveStatus status = SolveStatus::numerical_failure;
  std::vector<double> x;  // structural columns only
  double objective = 0.0;
  long iterations = 0;
};

/// Dense bounded-variable primal simplex, two phases with artificials.
///
/// Geared to desk-scale models (at most a few hundred columns): the full
/// tableau B^{-1}A is kept explicitly and refactorized from scratch at fixed
/// intervals. Dantzig pricing with a Bland's-rule fallback once a run of
/// degenerate pivots trips the cycle heuristic.
class DenseSimplex {
 public:
  DenseSimplex(ObjSense sense, std::vector<double> obj, std::vector<double> lb,
               std::vector<double> ub, const std::vector<LinearRow>& rows,
               SimplexOptions opt = {})
      : opt_(opt), sense_(sense), nstruct_(static_cast<int>(obj.size())) {
    require(lb.size() == obj.size() && ub.size() == obj.size(),
            "simplex: bound/objective size mismatch");
    cost_ = std::move(obj);
    if (sense_ == ObjSense::maximize)
      for (double& c : cost_) c = -c;
    lb_ = std::move(lb);
    ub_ = std::move(ub);
    m_ = static_cast<int>(rows.size());
    build(rows);
  }

  LpResult solve() {
    LpResult res;
    for (int j = 0; j < nstruct_; ++j) {
      if (lb_[j] > ub_[j] + opt_.feas_tol) {
        res.status = SolveStatus::infeasible;
        return res;
      }
    }
    initial_basis();
    if (nartificial_ > 0) {
      run_phase(/*phase1=*/true);
      if (status_ == SolveStatus::iteration_limit || status_ == SolveStatus::numerical_failure) {
        res.status = status_;
        res.iterations = iterations_;
        return res;
      }
      double infeas = phase1_objective();
      if (infeas > 1e-6 * std::max(1.0, rhs_scale_)) {
        res.status = SolveStatus::infeasible;
        res.iterations = iterations_;
        return res;
      }
      retire_artificials();
    }
    run_phase(/*phase1=*/false);
    res.iterations = iterations_;
    if (status_ != SolveStatus::optimal) {
      res.status = status_;
      return res;
    }
    res.x.assign(nstruct_, 0.0);
    for (int j = 0; j < nstruct_; ++j) res.x[j] = xval_[j];
    double obj = 0.0;
    for (int j = 0; j < nstruct_; ++j) obj += cost_[j] * xval_[j];
    res.objective = (sense_ == ObjSense::maximize) ? -obj : obj;
    res.status = SolveStatus::optimal;
    return res;
  }

 private:
  enum class ColStatus : std::uint8_t { basic, at_lower, at_upper, nb_free };

  SimplexOptions opt_;
  ObjSense sense_;
  int nstruct_ = 0;
  int m_ = 0;
  int ncols_ = 0;        // structurals + slacks (+ artificials)
  int nartificial_ = 0;  // appended after slacks
  double rhs_scale_ = 1.0;

  std::vector<double> cost_;  // structural costs, minimize
  std::vector<double> lb_, ub_;
  std::vector<double> a_;    // original matrix, m x ncols, row-major
  std::vector<double> b_;    // row rhs
  std::vector<double> tab_;  // B^{-1} A, m x ncols
  std::vector<double> beta_;
  std::vector<double> xval_;
  std::vector<int> basis_;
  std::vector<ColStatus> stat_;
  std::vector<double> phase_cost_;

  SolveStatus status_ = SolveStatus::numerical_failure;
  long iterations_ = 0;
  int pivots_since_refactor_ = 0;
  int degenerate_run_ = 0;
  bool bland_ = false;

  double at(const std::vector<double>& mat, int r, int c) const {
    return mat[static_cast<std::size_t>(r) * ncols_ + c];
  }
  double& at(std::vector<double>& mat, int r, int c) const {
    return mat[static_cast<std::size_t>(r) * ncols_ + c];
  }

  void build(const std::vector<LinearRow>& rows) {
    ncols_ = nstruct_ + m_;
    a_.assign(static_cast<std::size_t>(m_) * ncols_, 0.0);
    b_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      for (auto [c, v] : rows[r].terms) {
        require(c >= 0 && c < nstruct_, "simplex: column index out of range");
        at(a_, r, c) += v;
      }
      b_[r] = rows[r].rhs;
      rhs_scale_ = std::max(rhs_scale_, std::fabs(b_[r]));
      at(a_, r, nstruct_ + r) = 1.0;  // slack
      switch (rows[r].relation) {
        case 'L':
          lb_.push_back(0.0);
          ub_.push_back(kInf);
          break;
        case 'G':
          lb_.push_back(-kInf);
          ub_.push_back(0.0);
          break;
        case 'E':
          lb_.push_back(0.0);
          ub_.push_back(0.0);
          break;
        default:
          throw GsoError("simplex: unknown relation");
      }
      cost_.push_back(0.0);
    }
  }

  void initial_basis() {
    xval_.assign(ncols_, 0.0);
    stat_.assign(ncols_, ColStatus::at_lower);
    basis_.assign(m_, -1);
    for (int j = 0; j < ncols_; ++j) {
      if (lb_[j] == -kInf && ub_[j] == kInf) {
        stat_[j] = ColStatus::nb_free;
        xval_[j] = 0.0;
      } else if (lb_[j] == -kInf) {
        stat_[j] = ColStatus::at_upper;
        xval_[j] = ub_[j];
      } else if (ub_[j] == kInf) {
        stat_[j] = ColStatus::at_lower;
        xval_[j] = lb_[j];
      } else {
        // both finite: the bound closer to zero, ties to lower
        stat_[j] = (std::fabs(ub_[j]) < std::fabs(lb_[j])) ? ColStatus::at_upper
                                                           : ColStatus::at_lower;
        xval_[j] = (stat_[j] == ColStatus::at_upper) ? ub_[j] : lb_[j];
      }
    }
    // Slack basis; rows whose slack value falls outside the slack bounds get
    // an artificial carrying the residual.
    std::vector<double> resid(m_);
    for (int r = 0; r < m_; ++r) {
      double v = b_[r];
      for (int j = 0; j < nstruct_; ++j) v -= at(a_, r, j) * xval_[j];
      resid[r] = v;
    }
    std::vector<int> needs_artificial;
    for (int r = 0; r < m_; ++r) {
      const int s = nstruct_ + r;
      if (resid[r] >= lb_[s] - opt_.feas_tol && resid[r] <= ub_[s] + opt_.feas_tol) {
        basis_[r] = s;
        stat_[s] = ColStatus::basic;
        xval_[s] = resid[r];
      } else {
        needs_artificial.push_back(r);
      }
    }
    nartificial_ = static_cast<int>(needs_artificial.size());
    if (nartificial_ > 0) {
      const int old_cols = ncols_;
      ncols_ += nartificial_;
      grow_matrix(a_, old_cols);
      cost_.resize(ncols_, 0.0);
      lb_.resize(ncols_);
      ub_.resize(ncols_);
      xval_.resize(ncols_, 0.0);
      stat_.resize(ncols_, ColStatus::at_lower);
      for (int t = 0; t < nartificial_; ++t) {
        const int r = needs_artificial[t];
        const int s = nstruct_ + r;
        const int z = old_cols + t;
        // clamp slack to its nearest bound, artificial absorbs the rest
        const double s0 = (resid[r] < lb_[s]) ? lb_[s] : ub_[s];
        stat_[s] = (s0 == lb_[s]) ? ColStatus::at_lower : ColStatus::at_upper;
        if (lb_[s] == ub_[s]) stat_[s] = ColStatus::at_lower;
        xval_[s] = s0;
        const double residual = resid[r] - s0;
        at(a_, r, z) = 1.0;
        if (residual >= 0.0) {
          lb_[z] = 0.0;
          ub_[z] = kInf;
        } else {
          lb_[z] = -kInf;
          ub_[z] = 0.0;
        }
        basis_[r] = z;
        stat_[z] = ColStatus::basic;
        xval_[z] = residual;
      }
    }
    phase_cost_.assign(ncols_, 0.0);
    refactorize();
  }

  void grow_matrix(std::vector<double>& mat, int old_cols) {
    std::vector<double> next(static_cast<std::size_t>(m_) * ncols_, 0.0);
    for (int r = 0; r < m_; ++r)
      for (int c = 0; c < old_cols; ++c)
        next[static_cast<std::size_t>(r) * ncols_ + c] =
            mat[static_cast<std::size_t>(r) * old_cols + c];
    mat.swap(next);
  }

  double phase1_objective() const {
    double v = 0.0;
    for (int j = nstruct_ + m_; j < ncols_; ++j) v += std::fabs(xval_[j]);
    return v;
  }

  // Phase-1 cost: minimize signed artificial mass.
  void set_phase_costs(bool phase1) {
    phase_cost_.assign(ncols_, 0.0);
    if (phase1) {
      for (int j = nstruct_ + m_; j < ncols_; ++j)
        phase_cost_[j] = (lb_[j] == 0.0) ? 1.0 : -1.0;
    } else {
      for (int j = 0; j < nstruct_; ++j) phase_cost_[j] = cost_[j];
    }
  }

  void retire_artificials() {
    // Artificials at zero stay in the basis only if their row pivoted out to
    // nothing (redundant row); either way they are fixed at zero from here on.
    for (int t = 0; t < nartificial_; ++t) {
      const int z = nstruct_ + m_ + t;
      if (stat_[z] == ColStatus::basic) {
        int r = -1;
        for (int i = 0; i < m_; ++i)
          if (basis_[i] == z) r = i;
        if (r >= 0 && std::fabs(beta_[r]) <= 1e-7) {
          int enter = -1;
          double best = 1e-9;
          for (int j = 0; j < nstruct_ + m_; ++j) {
            if (stat_[j] == ColStatus::basic) continue;
            if (std::fabs(at(tab_, r, j)) > best) {
              best = std::fabs(at(tab_, r, j));
              enter = j;
            }
          }
          if (enter >= 0) degenerate_swap(r, enter);
        }
      }
      lb_[z] = 0.0;
      ub_[z] = 0.0;
      if (stat_[z] != ColStatus::basic) {
        stat_[z] = ColStatus::at_lower;
        xval_[z] = 0.0;
      }
    }
  }

  // Zero-step basis change used only to drive an artificial out.
  void degenerate_swap(int row, int enter) {
    const int leave = basis_[row];
    const double entering_val = xval_[enter];
    pivot(row, enter, entering_val);
    stat_[leave] = ColStatus::at_lower;
    xval_[leave] = 0.0;
  }

  void refactorize() {
    // Gauss-Jordan with partial pivoting on [B | A | v] where v reconstructs
    // the basic values from the nonbasic bound activities.
    const std::size_t width = static_cast<std::size_t>(ncols_) + 1;
    std::vector<double> work(static_cast<std::size_t>(m_) * width, 0.0);
    std::vector<double> bm(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      for (int c = 0; c < ncols_; ++c) work[r * width + c] = at(a_, r, c);
      double v = b_[r];
      for (int j = 0; j < ncols_; ++j)
        if (stat_[j] != ColStatus::basic) v -= at(a_, r, j) * xval_[j];
      work[r * width + ncols_] = v;
      for (int c = 0; c < m_; ++c) bm[static_cast<std::size_t>(r) * m_ + c] = at(a_, r, basis_[c]);
    }
    // eliminate on the basis columns
    std::vector<int> rowperm(m_);
    for (int i = 0; i < m_; ++i) rowperm[i] = i;
    for (int k = 0; k < m_; ++k) {
      int prow = -1;
      double pbest = 1e-11;
      for (int r = k; r < m_; ++r) {
        const double v = std::fabs(bm[static_cast<std::size_t>(r) * m_ + k]);
        if (v > pbest) {
          pbest = v;
          prow = r;
        }
      }
      require(prow >= 0, "simplex: singular basis during refactorization");
      if (prow != k) {
        for (int c = 0; c < m_; ++c)
          std::swap(bm[static_cast<std::size_t>(prow) * m_ + c],
                    bm[static_cast<std::size_t>(k) * m_ + c]);
        for (std::size_t c = 0; c < width; ++c)
          std::swap(work[prow * width + c], work[k * width + c]);
        std::swap(rowperm[prow], rowperm[k]);
      }
      const double piv = bm[static_cast<std::size_t>(k) * m_ + k];
      for (int c = 0; c < m_; ++c) bm[static_cast<std::size_t>(k) * m_ + c] /= piv;
      for (std::size_t c = 0; c < width; ++c) work[k * width + c] /= piv;
      for (int r = 0; r < m_; ++r) {
        if (r == k) continue;
        const double f = bm[static_cast<std::size_t>(r) * m_ + k];
        if (f == 0.0) continue;
        for (int c = 0; c < m_; ++c)
          bm[static_cast<std::size_t>(r) * m_ + c] -= f * bm[static_cast<std::size_t>(k) * m_ + c];
        for (std::size_t c = 0; c < width; ++c) work[r * width + c] -= f * work[k * width + c];
      }
    }
    // rows of `work` are now aligned with basis slots 0..m-1
    tab_.assign(static_cast<std::size_t>(m_) * ncols_, 0.0);
    beta_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      for (int c = 0; c < ncols_; ++c) at(tab_, r, c) = work[r * width + c];
      beta_[r] = work[r * width + ncols_];
      xval_[basis_[r]] = beta_[r];
    }
    pivots_since_refactor_ = 0;
  }

  void pivot(int row, int enter, double entering_val) {
    const double piv = at(tab_, row, enter);
    const double inv = 1.0 / piv;
    double* prow = &tab_[static_cast<std::size_t>(row) * ncols_];
    for (int c = 0; c < ncols_; ++c) prow[c] *= inv;
    for (int r = 0; r < m_; ++r) {
      if (r == row) continue;
      const double f = at(tab_, r, enter);
      if (f == 0.0) continue;
      double* rr = &tab_[static_cast<std::size_t>(r) * ncols_];
      for (int c = 0; c < ncols_; ++c) rr[c] -= f * prow[c];
    }
    basis_[row] = enter;
    stat_[enter] = ColStatus::basic;
    beta_[row] = entering_val;
    xval_[enter] = entering_val;
    if (++pivots_since_refactor_ >= 256) refactorize();
  }

  void run_phase(bool phase1) {
    set_phase_costs(phase1);
    bland_ = false;
    degenerate_run_ = 0;
    const long max_iter =
        opt_.max_iterations > 0 ? opt_.max_iterations : 20000 + 200L * (m_ + ncols_);
    std::vector<double> y(m_);
    for (long it = 0;; ++it) {
      if (it >= max_iter) {
        status_ = SolveStatus::iteration_limit;
        return;
      }
      ++iterations_;
      // reduced costs d_j = c_j - y'A_j with y' = c_B' B^{-1}
      for (int r = 0; r < m_; ++r) y[r] = phase_cost_[basis_[r]];
      int enter = -1;
      int dir = 0;
      double best_score = opt_.opt_tol;
      for (int j = 0; j < ncols_; ++j) {
        if (stat_[j] == ColStatus::basic) continue;
        if (lb_[j] == ub_[j] && stat_[j] != ColStatus::nb_free) continue;  // fixed
        double d = phase_cost_[j];
        for (int r = 0; r < m_; ++r) d -= y[r] * at(tab_, r, j);
        int cand_dir = 0;
        if ((stat_[j] == ColStatus::at_lower || stat_[j] == ColStatus::nb_free) &&
            d < -opt_.opt_tol)
          cand_dir = +1;
        else if ((stat_[j] == ColStatus::at_upper || stat_[j] == ColStatus::nb_free) &&
                 d > opt_.opt_tol)
          cand_dir = -1;
        if (cand_dir == 0) continue;
        if (bland_) {
          enter = j;
          dir = cand_dir;
          break;
        }
        if (std::fabs(d) > best_score) {
          best_score = std::fabs(d);
          enter = j;
          dir = cand_dir;
        }
      }
      if (enter < 0) {
        status_ = SolveStatus::optimal;
        return;
      }

      // ratio test
      double own_range = ub_[enter] - lb_[enter];  // inf for free/one-sided
      double t_best = kInf;
      int leave_row = -1;
      double leave_piv = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double alpha = dir * at(tab_, r, enter);
        const int bc = basis_[r];
        double limit = kInf;
        if (alpha > 1e-10) {
          if (lb_[bc] != -kInf) limit = (beta_[r] - lb_[bc]) / alpha;
        } else if (alpha < -1e-10) {
          if (ub_[bc] != kInf) limit = (beta_[r] - ub_[bc]) / alpha;
        }
        if (limit < -1e-9) limit = 0.0;  // basic already at/over bound
        if (limit < 0.0) limit = 0.0;
        const bool improves =
            limit < t_best - 1e-12 ||
            (limit <= t_best + 1e-12 && leave_row >= 0 &&
             (bland_ ? basis_[r] < basis_[leave_row]
                     : std::fabs(at(tab_, r, enter)) > std::fabs(leave_piv) + 1e-12));
        if (limit < kInf && (leave_row < 0 ? limit < t_best : improves)) {
          t_best = std::min(t_best, limit);
          leave_row = r;
          leave_piv = at(tab_, r, enter);
        }
      }

      if (own_range <= t_best + 1e-12 && own_range < kInf) {
        // bound flip, no basis change
        const double t = own_range;
        for (int r = 0; r < m_; ++r) {
          beta_[r] -= dir * t * at(tab_, r, enter);
          xval_[basis_[r]] = beta_[r];
        }
        stat_[enter] =
            (stat_[enter] == ColStatus::at_lower) ? ColStatus::at_upper : ColStatus::at_lower;
        xval_[enter] = (stat_[enter] == ColStatus::at_lower) ? lb_[enter] : ub_[enter];
        note_step(t);
        continue;
      }
      if (leave_row < 0) {
        status_ = phase1 ? SolveStatus::numerical_failure : SolveStatus::unbounded;
        return;
      }
      const double t = t_best;
      const int leave_col = basis_[leave_row];
      const double alpha_leave = dir * at(tab_, leave_row, enter);
      for (int r = 0; r < m_; ++r) {
        if (r == leave_row) continue;
        beta_[r] -= dir * t * at(tab_, r, enter);
        xval_[basis_[r]] = beta_[r];
      }
      // leaving variable lands on the bound it ran into
      if (alpha_leave > 0.0) {
        stat_[leave_col] = ColStatus::at_lower;
        xval_[leave_col] = lb_[leave_col];
      } else {
        stat_[leave_col] = ColStatus::at_upper;
        xval_[leave_col] = ub_[leave_col];
      }
      const double entering_val = xval_[enter] + dir * t;
      pivot(leave_row, enter, entering_val);
      note_step(t);
    }
  }

  void note_step(double t) {
    if (t <= 1e-10) {
      if (++degenerate_run_ > 64 + 2 * m_) bland_ = true;
    } else {
      degenerate_run_ = 0;
      bland_ = false;
    }
  }
};

}  // namespace gso
