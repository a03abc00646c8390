#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "gso/milp.hpp"

using namespace gso;

namespace {

MilpModel small_model() {
  MilpModel m;
  m.sense = ObjSense::maximize;
  m.add_col("x0", 0, 1, 3.0, false);
  m.add_col("x1", 0, 1, 2.0, false);
  LinearRow r;
  r.terms = {{0, 1.0}, {1, 1.0}};
  r.relation = 'L';
  r.rhs = 1.0;
  m.add_row(r);
  return m;
}

// Brute force over all candidate vertex bases: every choice of n active
// constraints among rows-at-equality and variables-at-bound.
double enumerate_lp_optimum(const MilpModel& m) {
  const int n = m.num_cols();
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> planes;
  for (const auto& row : m.rows) {
    Plane p{std::vector<double>(n, 0.0), row.rhs};
    for (auto [c, v] : row.terms) p.a[c] += v;
    planes.push_back(p);
  }
  for (int j = 0; j < n; ++j) {
    Plane lo{std::vector<double>(n, 0.0), m.lb[j]};
    lo.a[j] = 1.0;
    planes.push_back(lo);
    Plane hi{std::vector<double>(n, 0.0), m.ub[j]};
    hi.a[j] = 1.0;
    planes.push_back(hi);
  }
  const int p = static_cast<int>(planes.size());
  double best = m.sense == ObjSense::maximize ? -kInf : kInf;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      // solve the n x n system
      std::vector<double> a(n * n), b(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i * n + j] = planes[pick[i]].a[j];
        b[i] = planes[pick[i]].b;
      }
      // gaussian elimination
      for (int k = 0; k < n; ++k) {
        int piv = -1;
        double mx = 1e-9;
        for (int i = k; i < n; ++i)
          if (std::fabs(a[i * n + k]) > mx) {
            mx = std::fabs(a[i * n + k]);
            piv = i;
          }
        if (piv < 0) return;
        for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
        std::swap(b[k], b[piv]);
        for (int i = 0; i < n; ++i) {
          if (i == k) continue;
          const double f = a[i * n + k] / a[k * n + k];
          for (int j = 0; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
          b[i] -= f * b[k];
        }
      }
      std::vector<double> x(n);
      for (int k = 0; k < n; ++k) x[k] = b[k] / a[k * n + k];
      // feasibility
      for (int j = 0; j < n; ++j)
        if (x[j] < m.lb[j] - 1e-7 || x[j] > m.ub[j] + 1e-7) return;
      for (const auto& row : m.rows) {
        double lhs = 0.0;
        for (auto [c, v] : row.terms) lhs += v * x[c];
        if (row.relation == 'L' && lhs > row.rhs + 1e-7) return;
        if (row.relation == 'G' && lhs < row.rhs - 1e-7) return;
        if (row.relation == 'E' && std::fabs(lhs - row.rhs) > 1e-7) return;
      }
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += m.obj[j] * x[j];
      if (m.sense == ObjSense::maximize)
        best = std::max(best, obj);
      else
        best = std::min(best, obj);
      return;
    }
    for (int i = start; i < p; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("lp_solve on a 2-variable toy") {
  SolveResult r = lp_solve(small_model());
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.objective == Catch::Approx(3.0));
  CHECK(r.x[0] == Catch::Approx(1.0));
  CHECK(r.x[1] == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("lp_solve: single epigraph cut pins w") {
  MilpModel m;
  m.sense = ObjSense::minimize;
  m.add_col("w", -100, 100, 1.0, false);
  m.add_col("x0", 1, 1, 0.0, false);
  m.add_col("x1", 0.5, 0.5, 0.0, false);
  LinearRow r;  // w >= 2 x0 + 1 x1
  r.terms = {{0, 1.0}, {1, -2.0}, {2, -1.0}};
  r.relation = 'G';
  r.rhs = 0.0;
  m.add_row(r);
  SolveResult res = lp_solve(m);
  REQUIRE(res.status == SolveStatus::optimal);
  CHECK(res.objective == Catch::Approx(2.5));
}

TEST_CASE("lp_solve agrees with vertex enumeration on random LPs") {
  std::mt19937_64 rng = make_rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int rows = 1 + static_cast<int>(rng() % 4);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    MilpModel m;
    m.sense = (rng() & 1) ? ObjSense::maximize : ObjSense::minimize;
    for (int j = 0; j < n; ++j) m.add_col("x" + std::to_string(j), 0.0, 1.0 + (rng() % 3), coef(rng), false);
    for (int r = 0; r < rows; ++r) {
      LinearRow row;
      for (int j = 0; j < n; ++j) {
        const double v = coef(rng);
        if (std::fabs(v) > 0.4) row.terms.emplace_back(j, v);
      }
      row.relation = (rng() % 3 == 0) ? 'G' : 'L';
      row.rhs = coef(rng) + ((row.relation == 'L') ? 2.0 : -2.0);
      m.add_row(row);
    }
    const double expect = enumerate_lp_optimum(m);
    SolveResult res = lp_solve(m);
    if (expect == -kInf || expect == kInf) {
      CHECK(res.status == SolveStatus::infeasible);
    } else {
      REQUIRE(res.status == SolveStatus::optimal);
      INFO("trial " << trial);
      CHECK(res.objective == Catch::Approx(expect).margin(1e-6));
    }
  }
}

TEST_CASE("milp_solve: tiny knapsack") {
  MilpModel m = small_model();
  m.integer[0] = m.integer[1] = true;
  SolveResult r = milp_solve(m);
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.objective == Catch::Approx(3.0));
}

TEST_CASE("milp_solve: integrality changes the optimum") {
  MilpModel m;
  m.sense = ObjSense::maximize;
  m.add_col("x0", 0, 1, 1.0, true);
  m.add_col("x1", 0, 1, 1.0, true);
  LinearRow r;
  r.terms = {{0, 2.0}, {1, 2.0}};
  r.relation = 'L';
  r.rhs = 3.0;
  m.add_row(r);
  SolveResult res = milp_solve(m);
  REQUIRE(res.status == SolveStatus::optimal);
  CHECK(res.objective == Catch::Approx(1.0));  // LP relaxation would give 1.5
}

TEST_CASE("milp_solve: lazy callback rejects candidates until a cut closes") {
  // max x0 + x1 with a lazy rule x0 + x1 <= 1 supplied only via callback.
  MilpModel m;
  m.sense = ObjSense::maximize;
  m.add_col("x0", 0, 1, 1.0, true);
  m.add_col("x1", 0, 1, 1.0, true);
  int calls = 0;
  m.lazy_callback = [&calls](std::span<const double> x) {
    ++calls;
    std::vector<LinearRow> out;
    if (x[0] + x[1] > 1.0 + 1e-9) {
      LinearRow r;
      r.terms = {{0, 1.0}, {1, 1.0}};
      r.relation = 'L';
      r.rhs = 1.0;
      out.push_back(r);
    }
    return out;
  };
  SolveResult res = milp_solve(m);
  REQUIRE(res.status == SolveStatus::optimal);
  CHECK(res.objective == Catch::Approx(1.0));
  CHECK(calls >= 2);
}

TEST_CASE("milp_solve is deterministic") {
  MilpModel m;
  m.sense = ObjSense::minimize;
  std::mt19937_64 rng = make_rng(7);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int j = 0; j < 8; ++j) m.add_col("x" + std::to_string(j), 0, 3, coef(rng), true);
  for (int r = 0; r < 4; ++r) {
    LinearRow row;
    for (int j = 0; j < 8; ++j) row.terms.emplace_back(j, coef(rng));
    row.relation = 'G';
    row.rhs = -4.0;
    m.add_row(row);
  }
  SolveResult a = milp_solve(m);
  SolveResult b = milp_solve(m);
  REQUIRE(a.status == b.status);
  CHECK(a.objective == b.objective);
  CHECK(a.nodes == b.nodes);
  CHECK(a.simplex_iterations == b.simplex_iterations);
  CHECK(a.x == b.x);
}

TEST_CASE("model dump/load round-trip") {
  MilpModel m = small_model();
  m.integer[1] = true;
  std::ostringstream os;
  dump_model(m, os);
  std::istringstream is(os.str());
  MilpModel back = load_model(is);
  REQUIRE(back.num_cols() == m.num_cols());
  CHECK(back.sense == m.sense);
  CHECK(back.obj == m.obj);
  CHECK(back.lb == m.lb);
  CHECK(back.ub == m.ub);
  CHECK(back.integer == m.integer);
  REQUIRE(back.rows.size() == m.rows.size());
  CHECK(back.rows[0].terms == m.rows[0].terms);
  CHECK(back.rows[0].rhs == m.rows[0].rhs);
  std::ostringstream os2;
  dump_model(back, os2);
  CHECK(os2.str() == os.str());
}
