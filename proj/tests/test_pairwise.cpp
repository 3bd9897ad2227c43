#include <gtest/gtest.h>

#include <cmath>

#include "support/fixtures.hpp"
#include "support/toy.hpp"

using namespace smx;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Contract;
}

class ToyPairwise : public ::testing::Test {
 protected:
  TaxonomyView t = fixture::toy_a();
  ThetaEstimator ic = ThetaEstimator::make(ThetaKind::ICSeco, t);
  ClassUsage usage = class_usage(t, fixture::annotations(t, "g1\tE\ng2\tD\ng3\tF\n"));

  double eval(PairwiseKind k, const char* u, const char* v) { return eval(PairwiseMeasureSpec::make(k), u, v); }
  double eval(const PairwiseMeasureSpec& s, const char* u, const char* v) {
    return eval_pairwise(s, t, t.at(u), t.at(v), {&ic, &usage}).value;
  }
};

}  // namespace

// Spec constants first, then the same value from the oracle.
TEST_F(ToyPairwise, GoldenValues) {
  EXPECT_NEAR(eval(PairwiseKind::RadaDist, "E", "D"), 3.0, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::RadaSim, "E", "D"), 0.25, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::WuPalmer, "E", "D"), 0.4, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::Lin, "E", "D"), 0.2876, 1e-3);
  EXPECT_NEAR(eval(PairwiseKind::JiangConrathDist, "E", "D"), 1.4248, 1e-3);
  EXPECT_NEAR(eval(PairwiseKind::Faith, "E", "D"), 0.1680, 1e-3);
  EXPECT_NEAR(eval(PairwiseKind::LeacockChodorow, "E", "D"), 0.405, 1e-3);
  EXPECT_NEAR(eval(PairwiseKind::CMatchJaccard, "E", "D"), 0.4, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::Lin, "C", "E"), 0.7833, 1e-3);
}

TEST_F(ToyPairwise, MatchesOracle) {
  auto d = toy::dag();
  const double a = toy::ic("A");
  EXPECT_NEAR(eval(PairwiseKind::RadaDist, "E", "D"), oracle::via_lca_path(d, toy::idx("E"), toy::idx("D")), 0);
  EXPECT_NEAR(eval(PairwiseKind::Lin, "E", "D"), toy::lin("E", "D"), 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::Lin, "C", "E"), toy::lin("C", "E"), 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::JiangConrathDist, "E", "D"), toy::ic("E") + toy::ic("D") - 2 * a, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::Faith, "E", "D"), a / (toy::ic("E") + toy::ic("D") - a), 1e-12);
  // LC: -ln(N / 2D) with N the node count of the E..D path
  EXPECT_NEAR(eval(PairwiseKind::LeacockChodorow, "E", "D"), -std::log(4.0 / 6.0), 1e-12);
}

TEST_F(ToyPairwise, StructuralFamily) {
  EXPECT_NEAR(eval(PairwiseKind::ResnikEdgeBounded, "E", "D"), 3.0, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::PekarStaab, "E", "D"), 0.25, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::Zhong, "E", "D"), 0.5 - 1.0 / 16 - 1.0 / 8, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::LiParametric, "E", "D"), std::exp(-0.2 * 3) * std::tanh(0.6 * 1), 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::SlimaniTBK, "E", "D"), 0.4 / 6.0, 1e-12);
  auto slim0 = PairwiseMeasureSpec::make(PairwiseKind::SlimaniTBK);
  slim0.params.lambda = 0;
  EXPECT_NEAR(eval(slim0, "E", "D"), 0.4 * (2.0 - 3.0), 1e-12);
  // E up C up A down D: three edges, one reversal
  EXPECT_NEAR(eval(PairwiseKind::Shenoy, "E", "D"), 2.0 * 3 * std::exp(-4.0 / 3.0) / 5.0, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::RadaDist, "E", "E"), 0.0, 0);
}

TEST_F(ToyPairwise, InformationFamily) {
  const double a = toy::ic("A"), c = toy::ic("C");
  EXPECT_NEAR(eval(PairwiseKind::ResnikIC, "E", "D"), a, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::Nunivers, "E", "D"), a, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::PSec, "E", "D"), 3 * a - 2, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::RelSchlicker, "E", "D"), a * (1 - std::exp(-a)), 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::SimDICAncestorSum, "E", "D"), 2 * a / (2 * a + 1 + c + 1), 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::JacAnc, "E", "D"), a / (a + 1 + c + 1), 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::LinGraSM, "E", "D"), eval(PairwiseKind::Lin, "E", "D"), 1e-12);
  // one DCA (A, depth 1); root..E through A has length 3, root..D length 2
  EXPECT_NEAR(eval(PairwiseKind::WangDCA, "E", "D"), 2.0 / 6.0, 1e-12);
  // beta = 1, alpha = 0: the hybrid weights reduce to IC differences
  EXPECT_NEAR(eval(PairwiseKind::JCHybridDist, "E", "D"), eval(PairwiseKind::JiangConrathDist, "E", "D"), 1e-12);
}

TEST_F(ToyPairwise, FeatureFamily) {
  EXPECT_NEAR(eval(PairwiseKind::DiceAncestors, "E", "D"), 4.0 / 7.0, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::Bulskov, "E", "D"), 0.5 * 2 / 4 + 0.5 * 2 / 3, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::RodriguezEgenhofer, "E", "D"), 2.0 / (0.5 * 2 + 0.5 * 1 + 2), 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::SanchezDist, "E", "D"), std::log2(1.0 + 3.0 / 5.0), 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::TverskyRatio, "E", "D"), 0.4, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::TverskyContrast, "E", "D"), 2 - 0.5 * 2 - 0.5 * 1, 1e-12);
  EXPECT_NEAR(eval(PairwiseKind::JaccardExtensional, "E", "D"), 0.0, 0);
  EXPECT_NEAR(eval(PairwiseKind::JaccardExtensional, "C", "E"), 1.0, 0);
  EXPECT_NEAR(eval(PairwiseKind::DAmatoExtensional, "E", "D"), 0.5 * (1 - 2.0 / 3) * 0.5, 1e-12);
}

TEST_F(ToyPairwise, RootRootIsDegenerate) {
  auto mv = eval_pairwise(PairwiseMeasureSpec::make(PairwiseKind::Lin), t, t.root(), t.root(), {&ic});
  EXPECT_TRUE(mv.degenerate);
  EXPECT_EQ(mv.value, 0.0);
  EXPECT_FALSE(eval_pairwise(PairwiseMeasureSpec::make(PairwiseKind::Lin), t, t.at("E"), t.at("D"), {&ic}).degenerate);
}

TEST_F(ToyPairwise, BindingAndParameterErrors) {
  EXPECT_EQ(kind_of([&] { PairwiseEvaluator(PairwiseMeasureSpec::make(PairwiseKind::Lin), t); }), ErrorKind::Usage);
  EXPECT_EQ(kind_of([&] { PairwiseEvaluator(PairwiseMeasureSpec::make(PairwiseKind::JaccardExtensional), t); }),
            ErrorKind::Usage);
  auto zhong = PairwiseMeasureSpec::make(PairwiseKind::Zhong);
  zhong.params.k = 1.0;
  EXPECT_EQ(kind_of([&] { PairwiseEvaluator(zhong, t); }), ErrorKind::Contract);
  auto slim = PairwiseMeasureSpec::make(PairwiseKind::SlimaniTBK);
  slim.params.lambda = 0.5;
  EXPECT_EQ(kind_of([&] { PairwiseEvaluator(slim, t); }), ErrorKind::Contract);

  std::vector<double> v(t.size(), 1.0);
  v[t.at("E").index()] = 0.0;
  auto bent = ThetaEstimator::from_values(t, v, "bent");
  EXPECT_EQ(kind_of([&] { PairwiseEvaluator(PairwiseMeasureSpec::make(PairwiseKind::JCHybridDist), t, {&bent}); }),
            ErrorKind::Contract);

  auto sparse = class_usage(t, fixture::annotations(t, "g1\tD\n"));
  PairwiseEvaluator jac(PairwiseMeasureSpec::make(PairwiseKind::JaccardExtensional), t, {nullptr, &sparse});
  EXPECT_EQ(kind_of([&] { (void)jac(t.at("E"), t.at("D")); }), ErrorKind::Usage);
}

TEST(PairwiseRedundancy, PathBasedMeasuresRefuseUnreducedTaxonomy) {
  auto raw = taxonomic_reduction(fixture::load_graph("chain_skip.tsv"));
  for (auto k : kAllPairwiseKinds) {
    if (!is_path_based(k)) continue;
    ThetaEstimator ic = ThetaEstimator::make(ThetaKind::ICSeco, raw);
    try {
      PairwiseEvaluator(PairwiseMeasureSpec::make(k), raw, {&ic});
      ADD_FAILURE() << pairwise_name(k) << " accepted a redundant taxonomy";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Redundancy);
      EXPECT_NE(std::string(e.what()).find("bottom -> top"), std::string::npos) << e.what();
    }
  }
  // the raw path still exists and is the shortcut
  EXPECT_EQ(taxonomic_shortest_path(raw, raw.at("bottom"), raw.at("top"), AncestorConstraint::ViaLCA), 1);
  auto reduced = transitive_reduction(raw).first;
  EXPECT_EQ(eval_pairwise(PairwiseMeasureSpec::make(PairwiseKind::RadaDist), reduced, reduced.at("bottom"),
                          reduced.at("top")).value,
            4.0);
  // non-path measures still run on the raw view
  EXPECT_NO_THROW(PairwiseEvaluator(PairwiseMeasureSpec::make(PairwiseKind::CMatchJaccard), raw));
}

TEST(PairwiseNames, RoundTrip) {
  for (auto k : kAllPairwiseKinds) {
    auto back = pairwise_kind_from_name(pairwise_name(k));
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, k);
  }
  EXPECT_FALSE(pairwise_kind_from_name("nope"));
  EXPECT_EQ(kAllPairwiseKinds.size(), 31U);
}

TEST(PairwiseWang, PathCapEnforced) {
  // a ladder of diamonds multiplies the number of root paths
  std::string text;
  std::string prev = "r";
  for (int i = 0; i < 12; ++i) {
    const std::string a = "a" + std::to_string(i), b = "b" + std::to_string(i), m = "m" + std::to_string(i);
    text += a + "\tsubClassOf\t" + prev + "\n" + b + "\tsubClassOf\t" + prev + "\n";
    text += m + "\tsubClassOf\t" + a + "\n" + m + "\tsubClassOf\t" + b + "\n";
    prev = m;
  }
  text += "x\tsubClassOf\t" + prev + "\ny\tsubClassOf\t" + prev + "\n";
  auto t = taxonomic_reduction(fixture::graph_from_string(text));
  auto spec = PairwiseMeasureSpec::make(PairwiseKind::WangDCA);
  spec.params.path_cap = 100;
  PairwiseEvaluator capped(spec, t);
  EXPECT_EQ(kind_of([&] { (void)capped(t.at("x"), t.at("y")); }), ErrorKind::Contract);
  PairwiseEvaluator open(PairwiseMeasureSpec::make(PairwiseKind::WangDCA), t);
  EXPECT_GT(open(t.at("x"), t.at("y")).value, 0.0);
}
