#include <catch2/catch_amalgamated.hpp>

#include "gso/functions.hpp"
#include "gso/verify.hpp"

using namespace gso;

TEST_CASE("concave-of-linear on the two-weight example") {
  ConcaveOfLinear spec({4, 100, 100, 100, 4, 4}, Concave::sqrt_fn());
  // x = e2 + e5 in one-based terms
  SetPoint x = SetPoint::from_items(6, {1, 4});
  CHECK(spec.eval(x) == Catch::Approx(std::sqrt(104.0)).epsilon(1e-12));
  CHECK(spec.eval(SetPoint(6)) == 0.0);
}

TEST_CASE("generated concave-of-linear oracles are submodular") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
    SetOracle f = make_concave_of_linear_oracle(gen_concave_of_linear(7, seed));
    CHECK(verify_submodular(f, SubmodularForm::intersect_union, 8).pass);
  }
}

TEST_CASE("piecewise-linear concave validates slopes") {
  CHECK_THROWS(Concave::piecewise({{0.0, 0.0}, {1.0, 1.0}, {2.0, 3.0}}));  // slope increases
  Concave g = Concave::piecewise({{0.0, 0.0}, {1.0, 2.0}, {3.0, 3.0}});
  CHECK(g(0.5) == Catch::Approx(1.0));
  CHECK(g(2.0) == Catch::Approx(2.5));
  CHECK(g(5.0) == Catch::Approx(4.0));  // extrapolates the last slope
}

TEST_CASE("coverage evaluation and verdict") {
  Coverage cov{3, {0b011, 0b110}};
  SetOracle f = make_coverage_oracle(cov);
  CHECK(f(SetPoint(2)) == 0.0);
  CHECK(f(SetPoint::from_items(2, {0, 1})) == 3.0);
  CHECK(verify_submodular(f).pass);
}

TEST_CASE("graph cut evaluation") {
  GraphCut g{2, {{0, 1, 1.0}}};
  SetOracle f = make_graph_cut_oracle(g);
  CHECK(f(SetPoint(2)) == 0.0);
  CHECK(f(SetPoint::from_items(2, {0})) == 1.0);
  CHECK(f(SetPoint::from_items(2, {0, 1})) == 0.0);
  CHECK_THROWS(make_graph_cut_oracle(GraphCut{2, {{0, 1, -1.0}}}));
}

TEST_CASE("entropy basics") {
  // one location, one type, two equally frequent bins
  ReadingsTable t;
  t.n_locations = 1;
  t.n_types = 1;
  t.bin_count = 2;
  t.cells = {0, 1, 0, 1};
  KPoint empty(1, 1);
  CHECK(eval_entropy(t, empty) == 0.0);
  CHECK(eval_entropy(t, empty.with(0, 0)) == Catch::Approx(std::log(2.0)));
}

TEST_CASE("duplicated columns add no entropy") {
  ReadingsTable t;
  t.n_locations = 2;
  t.n_types = 1;
  t.bin_count = 3;
  // two identical columns
  t.cells = {0, 0, 1, 1, 2, 2, 0, 0};
  KPoint one(2, 1);
  one.assign(0, 0);
  KPoint both = one.with(1, 0);
  CHECK(eval_entropy(t, both) == Catch::Approx(eval_entropy(t, one)));
}

TEST_CASE("entropy is invariant to row permutation") {
  ReadingsTable t = gen_readings_table(3, 2, 40, 4, 11);
  ReadingsTable shuffled = t;
  std::mt19937_64 rng = make_rng(4);
  const int cols = t.n_cols();
  std::vector<int> order(t.n_rows());
  for (int i = 0; i < t.n_rows(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int r = 0; r < t.n_rows(); ++r)
    for (int c = 0; c < cols; ++c)
      shuffled.cells[static_cast<std::size_t>(r) * cols + c] = t.cell(order[r], c);
  KSetOracle f = make_entropy_oracle(t, 2);
  KSetOracle g = make_entropy_oracle(shuffled, 2);
  for (std::uint64_t key = 0; key < pow_u64(3, 3); ++key) {
    KPoint p = KPoint::from_key(key, 3, 2);
    REQUIRE(f(p) == Catch::Approx(g(p)).margin(1e-12));
  }
}

TEST_CASE("entropy grows monotonically with the plan") {
  ReadingsTable t = gen_readings_table(5, 2, 50, 3, 23);
  KSetOracle f = make_entropy_oracle(t, 2);
  CHECK(verify_k_monotone(f, 2).pass);
  CHECK(eval_entropy(t, KPoint(5, 2)) == 0.0);
  // single column entropy is bounded by ln(bins)
  for (int i = 0; i < 5; ++i)
    for (int q = 0; q < 2; ++q)
      CHECK(eval_entropy(t, KPoint(5, 2).with(i, q)) <= std::log(3.0) + 1e-12);
}

TEST_CASE("mutual information basics") {
  FeatureTable t = gen_feature_table(3, 17);
  BisetOracle f = make_mutual_information_oracle(t);
  CHECK(f(TernaryPoint(3)) == 0.0);
  CHECK(verify_bisubmodular(f).pass);
}

TEST_CASE("a feature equal to the class carries its own entropy") {
  FeatureTable t;
  t.n_features = 1;
  t.class1 = {0, 1, 0, 1};
  t.class2 = {0, 0, 1, 1};
  t.cells = {0, 1, 0, 1};  // copies class1
  const double h_f = t.entropy({0}, false, false);
  TernaryPoint s(1);
  s.set(0, 1);
  CHECK(eval_mutual_information(t, s) == Catch::Approx(h_f));
}

TEST_CASE("ad influence closed form") {
  AdInfluence ad{{{0.5}}};
  CHECK(ad.eval({0.0}) == 0.0);
  CHECK(ad.eval({2.0}) == Catch::Approx(0.75));
  AdInfluence bad{{{1.0}}};
  CHECK_THROWS(bad.eval({1.0}));
}

TEST_CASE("mean-risk evaluation and decomposition") {
  MeanRiskSpec spec;
  spec.mu = {1.0, 0.0};
  spec.a = {4.0, 0.0};
  spec.omega = 1.0;
  spec.k = 1;
  SetOracle f = make_mean_risk_oracle(spec);
  CHECK(f(SetPoint(2)) == 0.0);
  CHECK(f(SetPoint::from_items(2, {0})) == Catch::Approx(1.0));  // -1 + 2
  // objective = modular + concave-of-linear
  ConcaveOfLinear risk = spec.risk_part();
  for (std::uint64_t m = 0; m < 4; ++m) {
    SetPoint p(2, m);
    double mod = 0.0;
    for (int i = 0; i < 2; ++i)
      if (p.test(i)) mod -= spec.mu[i];
    CHECK(f(p) == Catch::Approx(mod + risk.eval(p)));
  }
  // concave part passes the submodularity check
  SetOracle risk_oracle = make_concave_of_linear_oracle(risk);
  CHECK(verify_submodular(risk_oracle).pass);
}

TEST_CASE("generators are deterministic in the seed") {
  Coverage a = gen_coverage(6, 123), b = gen_coverage(6, 123), c = gen_coverage(6, 124);
  CHECK(a.sets == b.sets);
  CHECK(a.sets != c.sets);
  ReadingsTable t1 = gen_readings_table(4, 2, 30, 4, 9);
  ReadingsTable t2 = gen_readings_table(4, 2, 30, 4, 9);
  CHECK(t1.cells == t2.cells);
  MeanRiskSpec m1 = gen_mean_risk(8, 3, 77), m2 = gen_mean_risk(8, 3, 77);
  CHECK(m1.mu == m2.mu);
  CHECK(m1.a == m2.a);
  // different seeds disagree on probe evaluations
  SetOracle f1 = make_mean_risk_oracle(gen_mean_risk(8, 3, 1));
  SetOracle f2 = make_mean_risk_oracle(gen_mean_risk(8, 3, 2));
  bool differ = false;
  for (std::uint64_t mask = 1; mask < 100; ++mask)
    if (f1(SetPoint(8, mask & 0xff)) != f2(SetPoint(8, mask & 0xff))) differ = true;
  CHECK(differ);
}
