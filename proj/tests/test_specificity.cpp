#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"

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

constexpr ThetaKind kIntrinsic[] = {ThetaKind::DepthRaw,          ThetaKind::DepthNormalized, ThetaKind::DepthNonLinear,
                                    ThetaKind::ICResnikIntrinsic, ThetaKind::ICSeco,          ThetaKind::ICZhou,
                                    ThetaKind::ICSanchezLeaves,   ThetaKind::ICSanchezRefined};

}  // namespace

TEST(Usage, InclusiveCounts) {
  auto t = fixture::toy_a();
  auto u = class_usage(t, fixture::annotations(t, "g1\tE\ng2\tD\ng3\tF\n"));
  EXPECT_EQ(u.total(), 3U);
  EXPECT_EQ(u.count(t.at("A")), 2U);
  EXPECT_EQ(u.count(t.at("root")), 3U);
  EXPECT_EQ(u.count(t.at("B")), 1U);
  EXPECT_EQ(u.count(t.at("E")), 1U);

  auto same = class_usage(t, fixture::annotations(t, "g1\tE\ng2\tE\n"));
  for (auto c : {"E", "C", "A", "root"}) EXPECT_EQ(same.count(t.at(c)), 2U) << c;
}

TEST(Usage, EmptyAnnotationsRejected) {
  auto t = fixture::toy_a();
  EXPECT_EQ(kind_of([&] { (void)class_usage(t, AnnotationSet{}); }), ErrorKind::Usage);
}

TEST(Theta, SecoOnToyA) {
  auto t = fixture::toy_a();
  auto ic = ThetaEstimator::make(ThetaKind::ICSeco, t);
  // independent evaluation: 1 - ln|D(c)| / ln 7
  EXPECT_DOUBLE_EQ(ic(t.at("root")), 0.0);
  EXPECT_NEAR(ic(t.at("A")), 1.0 - std::log(4.0) / std::log(7.0), 1e-12);
  EXPECT_NEAR(ic(t.at("A")), 0.2876, 1e-4);
  EXPECT_NEAR(ic(t.at("C")), 0.6438, 1e-4);
  EXPECT_DOUBLE_EQ(ic(t.at("E")), 1.0);
  EXPECT_DOUBLE_EQ(ic(t.at("D")), 1.0);
  EXPECT_TRUE(ic.monotone());
}

TEST(Theta, ResnikExtrinsic) {
  auto t = fixture::toy_a();
  auto u = class_usage(t, fixture::annotations(t, "g1\tE\ng2\tD\ng3\tF\ng4\tB\n"));
  auto ic = ThetaEstimator::make(ThetaKind::ICResnikExtrinsic, t, {}, &u);
  EXPECT_NEAR(ic(t.at("E")), std::log(4.0), 1e-12);
  EXPECT_NEAR(ic(t.at("E")), 1.3863, 1e-4);
  EXPECT_DOUBLE_EQ(ic(t.at("root")), 0.0);
  auto sparse = class_usage(t, fixture::annotations(t, "g1\tD\n"));
  auto partial = ThetaEstimator::make(ThetaKind::ICResnikExtrinsic, t, {}, &sparse);
  EXPECT_EQ(kind_of([&] { (void)partial(t.at("C")); }), ErrorKind::InfiniteIC);
  EXPECT_TRUE(validate_monotonicity(partial).empty());

  ThetaOptions smooth;
  smooth.add_one_smoothing = true;
  auto s = ThetaEstimator::make(ThetaKind::ICResnikExtrinsic, t, smooth, &u);
  // (|I(C)| + |D(C)|) / (|I| + |C|) = (1 + 2) / (4 + 7)
  EXPECT_NEAR(s(t.at("C")), -std::log(3.0 / 11.0), 1e-12);

  ThetaOptions two;
  two.log_base = LogBase::Two;
  auto b2 = ThetaEstimator::make(ThetaKind::ICResnikExtrinsic, t, two, &u);
  EXPECT_NEAR(b2(t.at("E")), 2.0, 1e-12);
  EXPECT_NEAR(b2.probability(t.at("E")), 0.25, 1e-12);
}

TEST(Theta, Errors) {
  auto t = fixture::toy_a();
  EXPECT_EQ(kind_of([&] { (void)ThetaEstimator::make(ThetaKind::IDF, t); }), ErrorKind::Usage);
  ThetaOptions bad;
  bad.zhou_k = 1.5;
  EXPECT_EQ(kind_of([&] { (void)ThetaEstimator::make(ThetaKind::ICZhou, t, bad); }), ErrorKind::Contract);
  auto single = TaxonomyView::build({"only"}, {});
  EXPECT_EQ(kind_of([&] { (void)ThetaEstimator::make(ThetaKind::ICSeco, single); }), ErrorKind::Degenerate);
  EXPECT_EQ(kind_of([&] { (void)ThetaEstimator::from_values(t, std::vector<double>(7, -1.0), "neg"); }),
            ErrorKind::Contract);
}

TEST(Theta, OtherIntrinsicFormulas) {
  auto t = fixture::toy_a();
  const auto C = t.at("C");
  auto zhou = ThetaEstimator::make(ThetaKind::ICZhou, t);
  EXPECT_NEAR(zhou(C), 0.6 * (1.0 - std::log(2.0) / std::log(7.0)) + 0.4 * std::log(3.0) / std::log(4.0), 1e-12);
  auto leaves = ThetaEstimator::make(ThetaKind::ICSanchezLeaves, t);
  EXPECT_NEAR(leaves(t.at("A")), std::log(3.0) - std::log(2.0), 1e-12);
  auto refined = ThetaEstimator::make(ThetaKind::ICSanchezRefined, t);
  // leaves below C = {E}, |A(C)| = 3, |leaves| = 3
  EXPECT_NEAR(refined(C), -std::log((1.0 / 3.0 + 1.0) / 4.0), 1e-12);
  auto intrinsic = ThetaEstimator::make(ThetaKind::ICResnikIntrinsic, t);
  EXPECT_NEAR(intrinsic(C), std::log(7.0 / 2.0), 1e-12);
  auto depth = ThetaEstimator::make(ThetaKind::DepthNormalized, t);
  EXPECT_NEAR(depth(C), 2.0 / 3.0, 1e-12);
  auto nonlinear = ThetaEstimator::make(ThetaKind::DepthNonLinear, t);
  EXPECT_NEAR(nonlinear(C), std::log(3.0) / std::log(4.0), 1e-12);
}

TEST(Theta, EveryIntrinsicEstimatorMonotoneOnToyA) {
  auto t = fixture::toy_a();
  for (auto k : kIntrinsic) EXPECT_TRUE(validate_monotonicity(ThetaEstimator::make(k, t)).empty());
}

TEST(Theta, NonMonotoneValuesDetected) {
  auto t = fixture::toy_a();
  std::vector<double> v(t.size(), 1.0);
  v[t.at("E").index()] = 0.5;  // below its parent C
  auto est = ThetaEstimator::from_values(t, v, "custom");
  auto bad = validate_monotonicity(est);
  ASSERT_EQ(bad.size(), 1U);
  EXPECT_EQ(t.name(bad[0].first), "E");
  EXPECT_EQ(t.name(bad[0].second), "C");
  EXPECT_FALSE(est.monotone());
}

TEST(Connotation, SecoEdgeWeight) {
  auto t = fixture::toy_a();
  auto ic = ThetaEstimator::make(ThetaKind::ICSeco, t);
  EXPECT_NEAR(connotation_weight(ic, t.at("E"), t.at("C")), 0.3562, 1e-4);
  EXPECT_NEAR(connotation_weight(ic, t.at("E"), t.at("E")), 0.0, 1e-15);
  EXPECT_EQ(kind_of([&] { (void)connotation_weight(ic, t.at("C"), t.at("E")); }), ErrorKind::Ordering);
}

TEST(ThetaProperty, MonotoneOnRandomDags) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 48);
    auto d = oracle::random_dag(rng, n);
    auto t = oracle::to_view(d);
    AnnotationSet a;
    for (int g = 0; g < 6; ++g) a.entries["g" + std::to_string(g)] = {ClassId{static_cast<std::size_t>(rng() % n)}};
    auto usage = class_usage(t, a);
    for (auto k : kIntrinsic) ASSERT_TRUE(validate_monotonicity(ThetaEstimator::make(k, t)).empty());
    for (bool smooth : {false, true}) {
      ThetaOptions o;
      o.add_one_smoothing = smooth;
      ASSERT_TRUE(validate_monotonicity(ThetaEstimator::make(ThetaKind::ICResnikExtrinsic, t, o, &usage)).empty());
      ASSERT_TRUE(validate_monotonicity(ThetaEstimator::make(ThetaKind::IDF, t, o, &usage)).empty());
    }
    auto seco = ThetaEstimator::make(ThetaKind::ICSeco, t);
    for (int c = 0; c < n; ++c) ASSERT_NEAR(seco(oracle::cid(c)), oracle::seco(d, c), 1e-12);
  }
}
