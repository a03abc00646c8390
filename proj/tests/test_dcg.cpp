#include <catch2/catch_amalgamated.hpp>

#include "gso/apps.hpp"

using namespace gso;

namespace {

SetOracle coverage_minus_modular(int n, std::uint64_t seed) {
  Coverage cov = gen_coverage(n, seed);
  std::vector<double> costs = gen_modular(n, splitmix64(seed), 0.2, 1.4);
  SetOracle f(GroundSet(n), [cov, costs, n](const SetPoint& p) {
    double v = cov.eval(p);
    for (int i = 0; i < n; ++i)
      if (p.test(i)) v -= costs[i];
    return v;
  });
  normalize_set_oracle(f);
  return f;
}

LinearRow cardinality_row(int n, char rel, double rhs) {
  LinearRow row;
  for (int i = 0; i < n; ++i) row.terms.emplace_back(i, 1.0);
  row.relation = rel;
  row.rhs = rhs;
  return row;
}

}  // namespace

TEST_CASE("unconstrained submodular min: graph cut optimum is zero") {
  SetOracle f = make_graph_cut_oracle(GraphCut{2, {{0, 1, 1.0}}});
  normalize_set_oracle(f);
  DcgReport rep = dcg_min_submodular(f, {}, {});
  CHECK(rep.incumbent_value == 0.0);
  CHECK(rep.gap <= 1e-6);
  // LP-only master already lands on a binary incumbent
  CHECK(rep.nodes == 0);
  for (double v : rep.incumbent) CHECK((v == 0.0 || v == 1.0));
}

TEST_CASE("submodular min matches brute force, unconstrained and constrained") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const int n = 5 + static_cast<int>(seed % 4);
    SetOracle f = coverage_minus_modular(n, seed);
    DcgReport rep = dcg_min_submodular(f, {}, {});
    EsResult es = es_set_optimum(f, {}, /*maximize=*/false);
    INFO("seed " << seed << " unconstrained");
    REQUIRE(rep.incumbent_value == es.value);

    std::vector<LinearRow> card{cardinality_row(n, 'G', 2.0)};
    DcgReport rep2 = dcg_min_submodular(f, card, {});
    EsResult es2 = es_set_optimum(f, card, false);
    INFO("seed " << seed << " with cardinality lower bound");
    REQUIRE(rep2.incumbent_value == es2.value);
    // trace invariants
    double prev_lb = -kInf, prev_ub = kInf;
    for (auto [lb, ub] : rep.trace) {
      CHECK(lb >= prev_lb - 1e-12);
      CHECK(ub <= prev_ub + 1e-12);
      prev_lb = lb;
      prev_ub = ub;
    }
  }
}

TEST_CASE("iterative and single-tree submodular min agree") {
  for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
    SetOracle f = coverage_minus_modular(6, seed);
    DcgConfig it_cfg;
    it_cfg.mode = DcgConfig::Mode::iterative;
    DcgConfig st_cfg;
    st_cfg.mode = DcgConfig::Mode::single_tree;
    DcgReport a = dcg_min_submodular(f, {}, it_cfg);
    DcgReport b = dcg_min_submodular(f, {}, st_cfg);
    CHECK(std::fabs(a.incumbent_value - b.incumbent_value) <= 1e-6);
  }
}

TEST_CASE("submodular max on the coverage example with a cardinality cap") {
  SetOracle f = make_coverage_oracle(Coverage{3, {0b011, 0b110}});
  normalize_set_oracle(f);
  std::vector<LinearRow> card{cardinality_row(2, 'L', 1.0)};
  DcgReport rep = dcg_max_submodular(f, card, {});
  CHECK(rep.incumbent_value == 2.0);
}

TEST_CASE("modular max picks the whole ground set") {
  SetOracle f(GroundSet(5), [](const SetPoint& p) { return 2.0 * p.count(); });
  DcgReport rep = dcg_max_submodular(f, {}, {});
  CHECK(rep.incumbent_value == 10.0);
}

TEST_CASE("submodular max matches brute force") {
  for (std::uint64_t seed = 21; seed <= 28; ++seed) {
    const int n = 5 + static_cast<int>(seed % 3);
    SetOracle f = coverage_minus_modular(n, seed);
    DcgReport rep = dcg_max_submodular(f, {}, {});
    EsResult es = es_set_optimum(f, {}, true);
    INFO("seed " << seed);
    REQUIRE(rep.incumbent_value == es.value);

    std::vector<LinearRow> card{cardinality_row(n, 'L', 2.0)};
    DcgReport rep2 = dcg_max_submodular(f, card, {});
    EsResult es2 = es_set_optimum(f, card, true);
    REQUIRE(rep2.incumbent_value == es2.value);
  }
}

TEST_CASE("iterative and single-tree submodular max agree") {
  for (std::uint64_t seed : {31ULL, 32ULL}) {
    SetOracle f = coverage_minus_modular(6, seed);
    DcgConfig it_cfg;
    it_cfg.mode = DcgConfig::Mode::iterative;
    DcgReport a = dcg_max_submodular(f, {}, it_cfg);
    DcgReport b = dcg_max_submodular(f, {}, {});
    CHECK(std::fabs(a.incumbent_value - b.incumbent_value) <= 1e-6);
  }
}

TEST_CASE("k-submodular max: entropy with per-type budgets matches enumeration") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const int n = 6, k = 2;
    ReadingsTable t = gen_readings_table(n, k, 60, 3, seed);
    KSetOracle f = make_entropy_oracle(t, k);
    f.normalize(KPoint(n, k));
    KsubConstraints cons;
    cons.type_budgets = {1.0, 1.0};
    DcgReport rep = dcg_max_ksub(f, k, cons, {}, /*oracle_is_monotone=*/true);
    EsResult es = es_kset_max(f, k, cons.type_budgets, {});
    INFO("seed " << seed);
    REQUIRE(rep.incumbent_value == es.value);
  }
}

TEST_CASE("k-submodular max with exact xi handles non-monotone oracles") {
  // coverage over the support plus a signed per-type modular term
  for (std::uint64_t seed : {5ULL, 6ULL}) {
    const int n = 5, k = 2;
    Coverage cov = gen_coverage(n, seed);
    std::vector<double> bonus = gen_modular(2 * n, seed + 1, -0.3, 1.2);
    KSetOracle f(GroundSet(n), [cov, bonus, n](const KPoint& p) {
      SetPoint support(n);
      double v = 0.0;
      for (int i = 0; i < n; ++i) {
        if (p.assigned(i)) {
          support = support.with(i);
          v += bonus[p.type_of(i) * n + i];
        }
      }
      return cov.eval(support) + v;
    });
    f.normalize(KPoint(n, k));
    if (!verify_k_submodular(f, k).pass) continue;  // only meaningful on k-submodular draws
    DcgReport rep = dcg_max_ksub(f, k, {}, {}, false);
    EsResult es = es_kset_max(f, k, {}, {});
    REQUIRE(rep.incumbent_value == es.value);
  }
}

TEST_CASE("unconstrained k-sub max of a monotone oracle fills every slot") {
  const int n = 5, k = 2;
  ReadingsTable t = gen_readings_table(n, k, 40, 3, 9);
  KSetOracle f = make_entropy_oracle(t, k);
  f.normalize(KPoint(n, k));
  DcgReport rep = dcg_max_ksub(f, k, {}, {}, true);
  EsResult es = es_kset_max(f, k, {}, {});
  REQUIRE(rep.incumbent_value == es.value);
  int assigned = 0;
  for (double v : rep.incumbent)
    if (v > 0.5) ++assigned;
  CHECK(assigned == n);  // monotone: some complete assignment is optimal
}

TEST_CASE("per-item best type is optimal for modular-per-type oracles") {
  const int n = 6, k = 3;
  std::vector<double> w = gen_modular(k * n, 77, 0.0, 2.0);
  KSetOracle f(GroundSet(n), [w, n](const KPoint& p) {
    double v = 0.0;
    for (int i = 0; i < n; ++i)
      if (p.assigned(i)) v += w[p.type_of(i) * n + i];
    return v;
  });
  DcgReport rep = dcg_max_ksub(f, k, {}, {}, true);
  double expect = 0.0;
  for (int i = 0; i < n; ++i) {
    double best = 0.0;
    for (int q = 0; q < k; ++q) best = std::max(best, w[q * n + i]);
    expect += best;
  }
  CHECK(rep.incumbent_value == Catch::Approx(expect).margin(1e-9));
}

TEST_CASE("bisubmodular min: signed sum goes all negative") {
  const int n = 4;
  BisetOracle f(GroundSet(n), [n](const TernaryPoint& x) {
    double v = 0.0;
    for (int i = 0; i < n; ++i) v += x[i];
    return v;
  });
  DcgReport rep = dcg_min_bisub(f, {}, {});
  CHECK(rep.incumbent_value == Catch::Approx(-4.0));
  for (double v : rep.incumbent) CHECK(v == -1.0);
}

TEST_CASE("bisubmodular min matches ternary enumeration") {
  for (std::uint64_t seed = 41; seed <= 48; ++seed) {
    const int n = 5 + static_cast<int>(seed % 2);
    BisetOracle f = make_bisub_oracle(gen_bisubmodular(n, seed));
    f.normalize(TernaryPoint(n));
    DcgReport rep = dcg_min_bisub(f, {}, {});
    EsResult es = es_ternary_min(f, {});
    INFO("seed " << seed);
    REQUIRE(rep.incumbent_value == es.value);
  }
}

TEST_CASE("bisubmodular min with support and cardinality constraints") {
  for (std::uint64_t seed : {51ULL, 52ULL, 53ULL}) {
    const int n = 6;
    BisetOracle f = make_bisub_oracle(gen_bisubmodular(n, seed));
    f.normalize(TernaryPoint(n));
    BisubConstraints cons;
    cons.fixed_zero = {0};
    LinearRow low;
    for (int i = 0; i < n; ++i) low.terms.emplace_back(i, 1.0);
    low.relation = 'G';
    low.rhs = 2.0;
    cons.rows_y.push_back(low);
    DcgReport rep = dcg_min_bisub(f, cons, {});
    EsResult es = es_ternary_min(f, cons);
    INFO("seed " << seed);
    REQUIRE(es.found);
    REQUIRE(rep.incumbent_value == es.value);
  }
}

TEST_CASE("infeasible bisub constraints are reported") {
  const int n = 3;
  BisetOracle f = make_bisub_oracle(gen_bisubmodular(n, 3));
  f.normalize(TernaryPoint(n));
  BisubConstraints cons;
  cons.fixed_zero = {0, 1, 2};
  LinearRow low;
  for (int i = 0; i < n; ++i) low.terms.emplace_back(i, 1.0);
  low.relation = 'G';
  low.rhs = 1.0;
  cons.rows_y.push_back(low);
  DcgReport rep = dcg_min_bisub(f, cons, {});
  CHECK(rep.termination == "infeasible");
}

TEST_CASE("ccmin: monotone objective stays at the empty set") {
  CcminProblem prob;
  prob.spec = ConcaveOfLinear({4, 100, 100, 100, 4, 4}, Concave::sqrt_fn());
  prob.k = 2;
  DcgReport rep = ccmin_branch_and_cut(prob);
  CHECK(rep.incumbent_value == 0.0);
}

TEST_CASE("ccmin on the three-item mean-risk toy") {
  MeanRiskSpec spec;
  spec.mu = {1.0, 1.0, 0.0};
  spec.a = {4.0, 4.0, 4.0};
  spec.omega = 1.0;
  spec.k = 2;
  SetOracle oracle = make_mean_risk_oracle(spec);
  // under sum x <= 2 the empty portfolio wins: enumeration of all 7 points
  MeanRiskResult res = solve_mean_risk(spec, oracle, {});
  EsResult es = es_set_optimum(oracle, {cardinality_row(3, 'L', 2.0)}, false);
  CHECK(es.value == 0.0);
  CHECK(res.value == es.value);
  // forcing sum x = 2 lands on {0,1} with value -2 + sqrt(8)
  CcminProblem forced;
  forced.spec = spec.risk_part();
  forced.modular = {-1.0, -1.0, 0.0};
  forced.k = 2;
  forced.extra.push_back(cardinality_row(3, 'E', 2.0));
  DcgReport rep = ccmin_branch_and_cut(forced);
  CHECK(rep.incumbent_value == Catch::Approx(-2.0 + std::sqrt(8.0)).margin(1e-9));
}

TEST_CASE("mean-risk branch and cut matches brute force") {
  for (std::uint64_t seed = 61; seed <= 70; ++seed) {
    const int n = 8 + static_cast<int>(seed % 5);
    const int k = 2 + static_cast<int>(seed % 4);
    MeanRiskSpec spec = gen_mean_risk(n, k, seed);
    SetOracle oracle = make_mean_risk_oracle(spec);
    MeanRiskResult res = solve_mean_risk(spec, oracle, {});
    std::vector<LinearRow> card{cardinality_row(n, 'L', static_cast<double>(k))};
    EsResult es = es_set_optimum(oracle, card, false);
    INFO("seed " << seed << " n " << n << " k " << k);
    REQUIRE(res.value == es.value);
  }
}

TEST_CASE("disabling the SI family never changes the ccmin optimum") {
  // equal weights so the SI ladder is active by default
  MeanRiskSpec spec;
  spec.mu = {0.5, 1.5, 0.9, 0.1, 1.1};
  spec.a.assign(5, 3.0);
  spec.omega = 1.3;
  spec.k = 3;
  SetOracle oracle = make_mean_risk_oracle(spec);
  MeanRiskResult with_si = solve_mean_risk(spec, oracle, {});
  // a tiny weight perturbation turns the SI ladder off but leaves the
  // enumeration optimum unchanged at this scale
  MeanRiskSpec no_si = spec;
  no_si.a = {3.0, 3.0 + 1e-13, 3.0, 3.0, 3.0};
  MeanRiskResult without_si = solve_mean_risk(no_si, oracle, {});
  CHECK(with_si.value == Catch::Approx(without_si.value).margin(1e-9));
}

TEST_CASE("dcg reports carry consistent bookkeeping") {
  SetOracle f = coverage_minus_modular(6, 5);
  DcgReport rep = dcg_min_submodular(f, {}, {});
  CHECK(rep.termination != "");
  CHECK(rep.upper_bound >= rep.lower_bound - 1e-9);
  CHECK(rep.gap <= 1e-6);
  CHECK(rep.total_cuts() >= 1);
  CHECK(rep.cuts_added.count(CutFamily::EPI) == 1);
  // final incumbent evaluates to the reported upper bound
  SetPoint x(6);
  for (int i = 0; i < 6; ++i)
    if (rep.incumbent[i] > 0.5) x = x.with(i);
  CHECK(f(x) == rep.incumbent_value);
}
