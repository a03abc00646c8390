#include <catch2/catch_amalgamated.hpp>

#include "gso/functions.hpp"
#include "gso/verify.hpp"

using namespace gso;

TEST_CASE("modular functions are submodular under both definitions") {
  SetOracle f(GroundSet(5), [](const SetPoint& p) { return 1.5 * p.count(); });
  CHECK(verify_submodular(f, SubmodularForm::intersect_union).pass);
  CHECK(verify_submodular(f, SubmodularForm::marginal).pass);
}

TEST_CASE("graph cut on 2 nodes is submodular but not monotone") {
  GraphCut g{2, {{0, 1, 1.0}}};
  SetOracle f = make_graph_cut_oracle(g);
  CHECK(f(SetPoint::from_items(2, {0})) == 1.0);
  CHECK(f(SetPoint::from_items(2, {0, 1})) == 0.0);
  CHECK(verify_submodular(f).pass);
  VerifyResult mono = verify_monotone(f);
  CHECK_FALSE(mono.pass);
  // the drop happens when item 1 joins {0}
  CHECK(mono.counterexample.find("i=1") != std::string::npos);
}

TEST_CASE("the two submodularity definitions agree across oracle catalog") {
  for (std::uint64_t seed : {5ULL, 17ULL, 23ULL}) {
    SetOracle cov = make_coverage_oracle(gen_coverage(6, seed));
    SetOracle cut = make_graph_cut_oracle(gen_graph_cut(5, seed));
    SetOracle col = make_concave_of_linear_oracle(gen_concave_of_linear(6, seed));
    for (const auto& f : {cov, cut, col}) {
      const bool a = verify_submodular(f, SubmodularForm::intersect_union).pass;
      const bool b = verify_submodular(f, SubmodularForm::marginal).pass;
      CHECK(a == b);
      CHECK(a);
    }
    // and on a non-submodular function
    SetOracle bad(GroundSet(3), [](const SetPoint& p) { return p.count() * p.count(); });
    CHECK(verify_submodular(bad, SubmodularForm::intersect_union).pass ==
          verify_submodular(bad, SubmodularForm::marginal).pass);
    CHECK_FALSE(verify_submodular(bad).pass);
  }
}

TEST_CASE("entropy oracle is k-submodular and monotone") {
  ReadingsTable t = gen_readings_table(4, 2, 60, 3, 7);
  KSetOracle f = make_entropy_oracle(t, 2);
  CHECK(verify_k_submodular(f, 2).pass);
  CHECK(verify_k_monotone(f, 2).pass);
}

TEST_CASE("per-type modular with nonnegative weights is k-submodular") {
  KSetOracle f(GroundSet(4), [](const KPoint& p) {
    return 1.0 * p.count_type(0) + 2.0 * p.count_type(1) + 0.5 * p.count_type(2);
  });
  CHECK(verify_k_submodular(f, 3).pass);
}

TEST_CASE("a signed modular with a negative conflict sum is not bisubmodular") {
  BisetOracle f(GroundSet(3), [](const TernaryPoint& x) {
    double v = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (x[i] == 1) v += -1.0;
      if (x[i] == -1) v += -2.0;  // c_plus + c_minus < 0
    }
    return v;
  });
  CHECK_FALSE(verify_bisubmodular(f).pass);
}

TEST_CASE("generated bisubmodular instances pass the checker") {
  for (std::uint64_t seed : {3ULL, 8ULL, 21ULL}) {
    BisetOracle f = make_bisub_oracle(gen_bisubmodular(5, seed));
    CHECK(verify_bisubmodular(f).pass);
  }
}

TEST_CASE("sum over signs is bisubmodular") {
  BisetOracle f(GroundSet(4), [](const TernaryPoint& x) {
    double v = 0.0;
    for (int i = 0; i < 4; ++i) v += x[i];
    return v;
  });
  CHECK(verify_bisubmodular(f).pass);
}

TEST_CASE("ad influence is DR-submodular on an integer box") {
  AdInfluence ad = gen_ad_influence(3, 4, 13);
  LatticeOracle f = make_ad_influence_oracle(ad);
  LatticeBox box{{2.0, 2.0, 2.0}, {true, true, true}, 4};
  CHECK(verify_dr_lattice(f, box).pass);
}

TEST_CASE("a supermodular lattice function fails the DR check") {
  LatticeOracle f(GroundSet(2),
                  [](const LatticePoint& p) { return p.vals[0] * p.vals[1]; });
  LatticeBox box{{3.0, 3.0}, {true, true}, 4};
  CHECK_FALSE(verify_dr_lattice(f, box).pass);
}

TEST_CASE("hessian check on the bilinear saddle example") {
  // f = -x1^2 - 13 x1 x2 + 50 x1 + 30 x2: Hessian [[-2,-13],[-13,0]]
  auto f = [](const std::vector<double>& x) {
    return -x[0] * x[0] - 13.0 * x[0] * x[1] + 50.0 * x[0] + 30.0 * x[1];
  };
  CHECK(hessian_dr_check(f, {0.0, 0.0}, {10.0, 10.0}).pass);
}

TEST_CASE("hessian check rejects a positive cross-partial") {
  auto f = [](const std::vector<double>& x) { return x[0] * x[1]; };
  VerifyResult r = hessian_dr_check(f, {0.0, 0.0}, {5.0, 5.0});
  CHECK_FALSE(r.pass);
}

TEST_CASE("hessian check accepts the influence function") {
  AdInfluence ad = gen_ad_influence(3, 5, 29);
  auto f = [ad](const std::vector<double>& x) { return ad.eval(x); };
  CHECK(hessian_dr_check(f, {0.0, 0.0, 0.0}, {4.0, 4.0, 4.0}).pass);
}

TEST_CASE("verifier caps reject oversized domains") {
  SetOracle f(GroundSet(20), [](const SetPoint& p) { return static_cast<double>(p.count()); });
  CHECK_THROWS(verify_submodular(f, SubmodularForm::intersect_union, 14));
  KSetOracle g(GroundSet(12), [](const KPoint& p) { return static_cast<double>(p.count()); });
  CHECK_THROWS(verify_k_submodular(g, 3));
}
