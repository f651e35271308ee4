#include "hyperforge/hypergraph.h"

#include <gtest/gtest.h>

namespace hyperforge {
namespace {

using P = PhasePolynomial;

std::vector<ModeId> ids(std::initializer_list<const char*> labels) {
  std::vector<ModeId> out;
  for (const char* l : labels) out.emplace_back(l);
  return out;
}

const P kSeed = P::from_terms({{"A*B*C", 1.0}, {"A*D", 2.0}});

TEST(DecomposeGraph, StandardState) {
  auto d = decompose_graph(kSeed);
  ASSERT_EQ(d.edges.size(), 2u);
  EXPECT_EQ(d.edges[0], (Hyperedge{ids({"A", "B", "C"}), 1.0}));
  EXPECT_EQ(d.edges[1], (Hyperedge{ids({"A", "D"}), 2.0}));
  EXPECT_TRUE(d.decorations.is_zero());
  EXPECT_EQ(d.order, 3u);
  EXPECT_TRUE(d.is_standard());
}

TEST(DecomposeGraph, Decoration) {
  auto d = decompose_graph(P::from_terms({{"A*B*C", 1.0}, {"A*D", 2.0}, {"B^2", 1.0}}));
  EXPECT_EQ(d.edges.size(), 2u);
  EXPECT_EQ(d.decorations, P::from_terms({{"B^2", 1.0}}));
  EXPECT_FALSE(d.is_standard());
}

TEST(DecomposeGraph, Empty) {
  auto d = decompose_graph(P{});
  EXPECT_TRUE(d.edges.empty());
  EXPECT_EQ(d.order, 0u);
  EXPECT_TRUE(d.is_standard());
}

TEST(DecomposeGraph, GlobalPhaseIsNotStandard) {
  EXPECT_FALSE(decompose_graph(P::from_terms({}, 0.3)).is_standard());
  EXPECT_TRUE(decompose_graph(P::from_terms({}, 6.283185307179586)).is_standard());
}

TEST(DecomposeGraph, SingleVertexEdgesHaveOrderOne) {
  auto d = decompose_graph(P::from_terms({{"B", -2.0}}));
  EXPECT_EQ(d.order, 1u);
}

TEST(DecomposeGraph, Reassembles) {
  auto f = P::from_terms({{"A*B*C", 1.0}, {"B^2*C^2", 0.5}, {"D", -2.0}}, 0.25);
  EXPECT_EQ(reassemble(decompose_graph(f)), f);
}

TEST(EdgesContaining, SeedState) {
  auto d = decompose_graph(kSeed);
  auto ea = edges_containing(d, ModeId("A"));
  ASSERT_EQ(ea.size(), 2u);
  EXPECT_EQ(ea[0].weight, 1.0);
  EXPECT_EQ(ea[1].weight, 2.0);
  auto eb = edges_containing(d, ModeId("B"));
  ASSERT_EQ(eb.size(), 1u);
  EXPECT_EQ(eb[0], (Hyperedge{ids({"A", "B", "C"}), 1.0}));
  EXPECT_TRUE(edges_containing(decompose_graph(P{}), ModeId("A")).empty());
}

TEST(AdjacencySet, SeedState) {
  auto adj = adjacency_set(decompose_graph(kSeed), ModeId("A"));
  ASSERT_EQ(adj.size(), 2u);
  EXPECT_EQ(adj[0], (AdjacentSet{ids({"B", "C"}), 1.0}));
  EXPECT_EQ(adj[1], (AdjacentSet{ids({"D"}), 2.0}));
}

TEST(AdjacencySet, TwoEdges) {
  auto adj = adjacency_set(decompose_graph(P::from_terms({{"A*B", 1.0}, {"A*C", 1.0}})), ModeId("A"));
  ASSERT_EQ(adj.size(), 2u);
  EXPECT_EQ(adj[0], (AdjacentSet{ids({"B"}), 1.0}));
  EXPECT_EQ(adj[1], (AdjacentSet{ids({"C"}), 1.0}));
}

TEST(AdjacencySet, EmptyRemainderLast) {
  auto adj = adjacency_set(decompose_graph(P::from_terms({{"A*B", 1.0}, {"B", 2.0}})), ModeId("B"));
  ASSERT_EQ(adj.size(), 2u);
  EXPECT_EQ(adj[0], (AdjacentSet{ids({"A"}), 1.0}));
  EXPECT_EQ(adj[1], (AdjacentSet{{}, 2.0}));
}

TEST(UnionSets, SeedState) {
  auto d = decompose_graph(kSeed);
  auto u = union_sets(edges_containing(d, ModeId("A")), edges_containing(d, ModeId("B")));
  ASSERT_EQ(u.size(), 2u);
  EXPECT_EQ(u[0], (Hyperedge{ids({"A", "B", "C"}), 2.0}));
  EXPECT_EQ(u[1], (Hyperedge{ids({"A", "D"}), 2.0}));
}

TEST(UnionSets, IdentityAndCancellation) {
  std::vector<Hyperedge> x{{ids({"A", "B"}), 1.0}};
  EXPECT_EQ(union_sets(x, {}), x);
  EXPECT_TRUE(union_sets(x, {{ids({"A", "B"}), -1.0}}).empty());
}

}  // namespace
}  // namespace hyperforge
