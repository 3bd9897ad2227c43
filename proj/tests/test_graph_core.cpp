#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace smx;

namespace {

std::set<std::string> names(const TaxonomyView& t, std::span<const ClassId> ids) {
  std::set<std::string> out;
  for (auto c : ids) out.emplace(t.name(c));
  return out;
}

std::set<std::string> names(const TaxonomyView& t, const std::vector<ClassId>& ids) {
  return names(t, std::span<const ClassId>(ids));
}

TaxonomyView view_of(const std::string& text) { return taxonomic_reduction(fixture::graph_from_string(text)); }

}  // namespace

TEST(ToyA, Shape) {
  auto t = fixture::toy_a();
  EXPECT_EQ(t.size(), 7U);
  EXPECT_EQ(t.max_depth(), 3);
  EXPECT_EQ(t.name(t.root()), "root");
  EXPECT_FALSE(t.inserted_root());
  EXPECT_EQ(names(t, t.leaves()), (std::set<std::string>{"D", "E", "F"}));
  EXPECT_TRUE(t.is_transitively_reduced());
  EXPECT_TRUE(t.is_tree());
}

TEST(ToyA, Closures) {
  auto t = fixture::toy_a();
  EXPECT_EQ(names(t, t.ancestors(t.at("E"))), (std::set<std::string>{"E", "C", "A", "root"}));
  EXPECT_EQ(names(t, t.ancestors(t.at("D"))), (std::set<std::string>{"D", "A", "root"}));
  EXPECT_EQ(names(t, t.descendants(t.at("A"))), (std::set<std::string>{"A", "C", "D", "E"}));
  EXPECT_EQ(t.descendants(t.root()).size(), 7U);
  EXPECT_EQ(t.depth(t.at("E")), 3);
  EXPECT_EQ(t.depth(t.root()), 0);
}

TEST(ToyA, CommonAncestorsAndMica) {
  auto t = fixture::toy_a();
  const auto E = t.at("E"), D = t.at("D"), F = t.at("F");
  EXPECT_EQ(names(t, ncca(t, E, D)), (std::set<std::string>{"A"}));
  auto theta = ThetaEstimator::make(ThetaKind::ICSeco, t);
  EXPECT_EQ(t.name(mica(t, theta, E, D)), "A");
  EXPECT_EQ(t.name(mica(t, theta, E, F)), "root");
  EXPECT_EQ(taxonomic_shortest_path(t, E, D, AncestorConstraint::ViaLCA), 3);
  EXPECT_EQ(taxonomic_shortest_path(t, E, E, AncestorConstraint::ViaLCA), 0);
}

TEST(Taxonomy, DepthIsLongestPath) {
  // root; X,Y < root; Z < X,Y; Z2 < Z; X < Y
  auto t = view_of("X\tsubClassOf\troot\nY\tsubClassOf\troot\nZ\tsubClassOf\tX\nZ\tsubClassOf\tY\n"
                   "Z2\tsubClassOf\tZ\nX\tsubClassOf\tY\n");
  EXPECT_EQ(t.depth(t.at("Z")), 3);
  EXPECT_EQ(t.depth(t.at("Z2")), 4);
}

TEST(Taxonomy, NccaOnDiamond) {
  auto t = view_of("X\tsubClassOf\troot\nY\tsubClassOf\troot\nZ\tsubClassOf\tX\nZ\tsubClassOf\tY\n"
                   "W\tsubClassOf\tX\nW\tsubClassOf\tY\n");
  EXPECT_EQ(names(t, ncca(t, t.at("Z"), t.at("W"))), (std::set<std::string>{"X", "Y"}));
}

TEST(Taxonomy, MicaTieGoesToSmallestName) {
  auto t = view_of("X\tsubClassOf\troot\nY\tsubClassOf\troot\nZ\tsubClassOf\tX\nZ\tsubClassOf\tY\n"
                   "W\tsubClassOf\tX\nW\tsubClassOf\tY\n");
  auto constant = [](ClassId) { return 1.0; };
  EXPECT_EQ(t.name(mica(t, constant, t.at("Z"), t.at("W"))), "X");
  auto depth_theta = [&](ClassId c) { return static_cast<double>(t.depth(c)); };
  EXPECT_EQ(t.name(mica(t, depth_theta, t.at("Z"), t.at("W"))), "X");
}

TEST(Taxonomy, SideEdgePaths) {
  // root; X,Y < root; Z < X; W < Y; Z < W
  auto t = view_of("X\tsubClassOf\troot\nY\tsubClassOf\troot\nZ\tsubClassOf\tX\nW\tsubClassOf\tY\n"
                   "Z\tsubClassOf\tW\n");
  EXPECT_EQ(taxonomic_shortest_path(t, t.at("Z"), t.at("W"), AncestorConstraint::Unconstrained), 1);
  EXPECT_EQ(taxonomic_shortest_path(t, t.at("Z"), t.at("W"), AncestorConstraint::ViaLCA), 1);
}

TEST(Taxonomy, VirtualRootForSeveralRoots) {
  auto t = view_of("C\tsubClassOf\tA\nC\tsubClassOf\tB\n");
  ASSERT_TRUE(t.inserted_root());
  EXPECT_EQ(t.name(*t.inserted_root()), "__root__");
  EXPECT_EQ(t.root(), *t.inserted_root());
  EXPECT_EQ(t.size(), 4U);
  EXPECT_EQ(t.depth(t.at("C")), 2);
}

TEST(Taxonomy, CycleIsRejected) {
  try {
    (void)view_of("A\tsubClassOf\tB\nB\tsubClassOf\tC\nC\tsubClassOf\tA\nD\tsubClassOf\tA\n");
    FAIL() << "cycle accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Cycle);
  }
}

TEST(Taxonomy, UnknownClassIsLookupError) {
  auto t = fixture::toy_a();
  EXPECT_FALSE(t.find("nope"));
  try {
    (void)t.at("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Lookup);
  }
}

TEST(Taxonomy, UpwardPathOrdering) {
  auto t = fixture::toy_a();
  try {
    (void)upward_path_length(t, t.at("A"), t.at("E"), PathLength::Shortest);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Ordering);
  }
  EXPECT_EQ(upward_path_length(t, t.at("E"), t.at("root"), PathLength::Longest), 3);
}

// Random DAG checks against the brute-force oracle.
TEST(TaxonomyProperty, ClosuresDepthAndPathsMatchOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 30);
    auto d = oracle::random_dag(rng, n);
    auto t = oracle::to_view(d);
    for (int u = 0; u < n; ++u) {
      std::set<int> anc, desc;
      for (auto c : t.ancestors(oracle::cid(u))) anc.insert(static_cast<int>(c.index()));
      for (auto c : t.descendants(oracle::cid(u))) desc.insert(static_cast<int>(c.index()));
      ASSERT_EQ(anc, oracle::ancestors(d, u));
      ASSERT_EQ(desc, oracle::descendants(d, u));
      ASSERT_EQ(t.depth(oracle::cid(u)), oracle::depth(d, u));
      for (int v = 0; v < n; v += 3) {
        std::set<int> nc;
        for (auto c : ncca(t, oracle::cid(u), oracle::cid(v))) nc.insert(static_cast<int>(c.index()));
        ASSERT_EQ(nc, oracle::ncca(d, u, v));
        ASSERT_EQ(taxonomic_shortest_path(t, oracle::cid(u), oracle::cid(v), AncestorConstraint::ViaLCA),
                  oracle::via_lca_path(d, u, v));
        ASSERT_EQ(taxonomic_shortest_path(t, oracle::cid(u), oracle::cid(v), AncestorConstraint::Unconstrained),
                  oracle::undirected_path(d, u, v));
      }
    }
  }
}

TEST(TaxonomyProperty, ParentsAreAncestorsAndDepthGrows) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    auto t = oracle::to_view(oracle::random_dag(rng, 40));
    for (std::size_t i = 0; i < t.size(); ++i) {
      const ClassId c{i};
      for (auto p : t.parents(c)) {
        EXPECT_TRUE(t.subsumes(p, c));
        EXPECT_GT(t.depth(c), t.depth(p));
        EXPECT_LT(t.topological_position(p), t.topological_position(c));
      }
      EXPECT_TRUE(t.subsumes(t.root(), c));
    }
  }
}
