#include <gtest/gtest.h>

#include <algorithm>

#include "collatz_lab/certificates.hpp"
#include "collatz_lab/collatz_tree.hpp"
#include "collatz_lab/trajectories.hpp"

using namespace collatz_lab;

namespace {

std::vector<std::uint64_t> sorted_u64(std::vector<Nat> xs) {
  std::vector<std::uint64_t> out;
  for (const auto& x : xs) out.push_back(x.to_u64());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Children, Examples) {
  EXPECT_EQ(sorted_u64(tree_children(Nat(16))), (std::vector<std::uint64_t>{5, 32}));
  EXPECT_EQ(sorted_u64(tree_children(Nat(4))), (std::vector<std::uint64_t>{8}));
  EXPECT_EQ(sorted_u64(tree_children(Nat(10))), (std::vector<std::uint64_t>{3, 20}));
  EXPECT_EQ(sorted_u64(tree_children(Nat(1))), (std::vector<std::uint64_t>{2}));
}

TEST(Tree, DepthFiveLevels) {
  const auto t = build_tree(5);
  EXPECT_EQ(sorted_u64(t.level(4)), (std::vector<std::uint64_t>{16}));
  EXPECT_EQ(sorted_u64(t.level(5)), (std::vector<std::uint64_t>{5, 32}));
  EXPECT_EQ(t.size(), 7u);
}

TEST(Tree, DepthLimitEnforced) {
  EXPECT_THROW(build_tree(31), PreconditionError);
  EXPECT_THROW(build_tree(6, 5), PreconditionError);
}

TEST(Tree, StructureAndDepthToTwenty) {
  const auto t = build_tree(20);
  EXPECT_EQ(t.duplicates(), 0u);
  const auto report = check_tree_structure(t);
  EXPECT_TRUE(report.acyclic);
  EXPECT_TRUE(report.connected);
  EXPECT_EQ(report.edges + 1, report.nodes);
  for (std::uint32_t d = 0; d <= 20; ++d) {
    for (const Nat& v : t.level(d)) {
      const auto run = run_cl(v, 1000);
      ASSERT_EQ(run.outcome, RunOutcome(Halted{d})) << v.str();
      const auto path = tree_path(v, 1000);
      ASSERT_TRUE(path.has_value()) << v.str();
      ASSERT_EQ(path->size(), d + 1u);
    }
  }
}

TEST(Strata, Examples) {
  EXPECT_EQ(stratum(Nat(16)), 0u);
  EXPECT_EQ(stratum(Nat(5)), 1u);
  EXPECT_EQ(stratum(Nat(11)), 4u);
  EXPECT_EQ(stratum(Nat(1)), 0u);
  EXPECT_THROW(stratum(Nat(0)), PreconditionError);
  EXPECT_TRUE(in_stratum(Nat(11), 4));
  EXPECT_FALSE(in_stratum(Nat(1), 3));
  EXPECT_FALSE(in_stratum(Nat(11), 3));
}

TEST(Strata, BoundReported) {
  StrataMemo memo(3);
  EXPECT_FALSE(memo.stratum(Nat(27)).has_value());
  EXPECT_EQ(memo.stratum(Nat(13)), 2u);
}

TEST(Strata, AgreesWithCertificate) {
  StrataMemo memo;
  for (std::uint64_t n = 1; n <= 4096; ++n) {
    const auto c = certify(Nat(n), 1'000'000).certificate;
    ASSERT_TRUE(c) << n;
    ASSERT_EQ(memo.stratum(Nat(n)), c->x) << n;
  }
}

TEST(Strata, PropertyChecks) {
  const auto r = check_strata_properties(4096);
  EXPECT_TRUE(r.ok());
  for (const char* name : {"doubling", "4a+1", "disjoint", "3n+1 descends (j>1)", "3n+1 descends (j>=1)", "partition"}) {
    EXPECT_TRUE(r.get(name).ok()) << name;
    EXPECT_GT(r.get(name).checked, 0u) << name;
  }
}

TEST(Hotel, Coordinates) {
  const auto c = hotel_coordinates(Nat(12));
  EXPECT_EQ(c.floor, 2u);
  EXPECT_EQ(c.tower, 1u);
  EXPECT_EQ(hotel_coordinates(Nat(1)).tower, 0u);
  EXPECT_EQ(hotel_coordinates(Nat(1)).floor, 0u);
}

TEST(Hotel, SixteenVertices) {
  const auto g = build_hotel(16);
  EXPECT_EQ(g.vertices.size(), 16u);
  EXPECT_TRUE(std::none_of(g.edges.begin(), g.edges.end(), [](const GraphEdge& e) { return e.from == Nat(1); }));
  auto has = [&](std::uint64_t a, std::uint64_t b, EdgeColor c) {
    return std::any_of(g.edges.begin(), g.edges.end(),
                       [&](const GraphEdge& e) { return e.from == Nat(a) && e.to == Nat(b) && e.color == c; });
  };
  EXPECT_TRUE(has(8, 4, EdgeColor::Green));
  EXPECT_TRUE(has(5, 16, EdgeColor::Red));
  EXPECT_EQ(g.edges.size(), 15u);
}

TEST(Export, FormatsAndDeterminism) {
  EXPECT_THROW(parse_graph_format("svg"), PreconditionError);
  const auto t = build_tree(6);
  const std::string dot = export_tree(t, GraphFormat::Dot);
  EXPECT_EQ(dot, export_tree(build_tree(6), GraphFormat::Dot));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  const std::string hotel = export_hotel(build_hotel(16), GraphFormat::Json);
  EXPECT_NE(hotel.find("\"adjacency\""), std::string::npos);
  EXPECT_NE(hotel.find("tower"), std::string::npos);
}

TEST(StrataTable, CsvHeader) {
  const auto csv = strata_csv(build_strata_table(4));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,stratum,tower,floor");
  EXPECT_NE(csv.find("3,2,1,0"), std::string::npos);
}
