#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <string>

#include "bookex/canonical.hpp"
#include "bookex/graph.hpp"
#include "bookex/graph6.hpp"
#include "support/oracles.hpp"

using namespace bookex;

namespace {

Graph k_bipartite(std::size_t a, std::size_t b) {
  return join(empty_graph(a), empty_graph(b));
}

}  // namespace

TEST(EmptyGraph, HasNoEdges) {
  EXPECT_EQ(empty_graph(0).order(), 0u);
  EXPECT_EQ(empty_graph(0).edge_count(), 0u);
  const Graph g = empty_graph(5);
  EXPECT_EQ(g.order(), 5u);
  EXPECT_EQ(g.edge_count(), 0u);
  for (std::size_t d : empty_graph(3).degrees()) EXPECT_EQ(d, 0u);
}

TEST(AddEdge, BasicAndIdempotent) {
  const Graph k2 = add_edge(empty_graph(2), 0, 1);
  EXPECT_EQ(k2.edge_count(), 1u);
  EXPECT_TRUE(k2.adjacent(0, 1));
  EXPECT_TRUE(k2.adjacent(1, 0));
  EXPECT_EQ(add_edge(k2, 0, 1), k2);
  EXPECT_EQ(add_edge(k2, 1, 0), k2);
}

TEST(AddEdge, RejectsLoopsAndOutOfRange) {
  EXPECT_THROW(add_edge(empty_graph(3), 0, 0), std::invalid_argument);
  EXPECT_THROW(add_edge(empty_graph(3), 0, 3), std::out_of_range);
  EXPECT_THROW(add_edge(empty_graph(0), 0, 1), std::out_of_range);
}

TEST(Graph, ValueSemantics) {
  const Graph g = empty_graph(4);
  const Graph h = g.with_edge(1, 2);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(h.edge_count(), 1u);
  EXPECT_EQ(h.without_edge(1, 2), g);
}

TEST(Graph, VertexRemovalAndAddition) {
  const Graph c5 = oracle::cycle(5);
  const Graph p4 = c5.without_vertex(0);
  EXPECT_EQ(p4.order(), 4u);
  EXPECT_EQ(p4.edge_count(), 3u);
  EXPECT_TRUE(is_isomorphic(p4, oracle::path(4)));

  const Graph back = p4.with_vertex(VertexSet(4, {0, 3}));
  EXPECT_TRUE(is_isomorphic(back, c5));
  EXPECT_THROW(p4.with_vertex(VertexSet(5)), std::invalid_argument);
}

TEST(Graph, InducedKeepsLabelOrder) {
  const Graph k4 = complete_graph(4);
  const Graph tri = k4.induced(VertexSet(4, {0, 2, 3}));
  EXPECT_EQ(tri, complete_graph(3));
}

TEST(Graph, RelabelMapsEdges) {
  const Graph p3 = oracle::path(3);  // 0-1-2
  const std::vector<Vertex> perm{1, 0, 2};
  const Graph q = p3.relabeled(perm);
  EXPECT_TRUE(q.adjacent(1, 0));
  EXPECT_TRUE(q.adjacent(0, 2));
  EXPECT_FALSE(q.adjacent(1, 2));
}

TEST(Graph, HandshakeOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = rng() % 80;
    const Graph g = oracle::random_graph(rng, n, 0.4);
    std::size_t sum = 0;
    for (std::size_t d : g.degrees()) sum += d;
    EXPECT_EQ(sum, 2 * g.edge_count());
    EXPECT_EQ(g.edges().size(), g.edge_count());
  }
}

TEST(Join, Examples) {
  EXPECT_EQ(join(complete_graph(1), complete_graph(1)), complete_graph(2));
  const Graph c5 = oracle::cycle(5);
  EXPECT_EQ(join(c5, empty_graph(0)), c5);
  EXPECT_EQ(join(c5, k_bipartite(3, 3)).edge_count(), 44u);
}

TEST(Join, EdgeIdentityRandom) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const Graph a = oracle::random_graph(rng, rng() % 41, 0.5);
    const Graph b = oracle::random_graph(rng, rng() % 41, 0.3);
    const Graph j = join(a, b);
    EXPECT_EQ(j.order(), a.order() + b.order());
    EXPECT_EQ(j.edge_count(), a.edge_count() + b.edge_count() + a.order() * b.order());
  }
}

TEST(DisjointUnion, Examples) {
  const Graph two_triangles = disjoint_union(complete_graph(3), complete_graph(3));
  EXPECT_EQ(two_triangles.order(), 6u);
  EXPECT_EQ(two_triangles.edge_count(), 6u);
  EXPECT_FALSE(two_triangles.adjacent(0, 3));

  const Graph c5 = oracle::cycle(5);
  EXPECT_EQ(disjoint_union(c5, empty_graph(0)), c5);

  const Graph g = disjoint_union(complete_graph(2), empty_graph(3));
  EXPECT_EQ(g.order(), 5u);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(CommonNeighbors, Examples) {
  EXPECT_EQ(common_neighbors(complete_graph(4), VertexSet(4, {0, 1, 2})), VertexSet(4, {3}));
  EXPECT_EQ(common_neighbors(oracle::cycle(5), VertexSet(5, {0, 2})), VertexSet(5, {1}));
  const Graph g = disjoint_union(complete_graph(2), complete_graph(1));
  EXPECT_TRUE(common_neighbors(g, VertexSet(3, {0, 1})).empty());
  EXPECT_EQ(common_neighbors(g, VertexSet(3)), VertexSet::all(3));
}

TEST(Canonical, Examples) {
  const Graph c5 = oracle::cycle(5);
  Graph::Builder b(5);
  b.add_edge(0, 2).add_edge(2, 4).add_edge(4, 1).add_edge(1, 3).add_edge(3, 0);
  EXPECT_EQ(canonical_form(c5), canonical_form(std::move(b).build()));

  const Graph k3k1 = disjoint_union(complete_graph(3), empty_graph(1));
  EXPECT_NE(canonical_form(k3k1), canonical_form(oracle::path(4)));
}

TEST(Canonical, FormDecodesToIsomorphicGraph) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Graph g = oracle::random_graph(rng, 1 + rng() % 12, 0.5);
    const CanonicalLabeling lab = canonical_labeling(g);
    std::vector<Vertex> position(g.order());
    for (std::size_t i = 0; i < lab.order.size(); ++i) position[lab.order[i]] = i;
    EXPECT_EQ(lab.form.graph(), g.relabeled(position));
    EXPECT_EQ(lab.form.graph().edge_count(), g.edge_count());
  }
}

TEST(Canonical, PermutationInvarianceRandom) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + rng() % 12;
    const Graph g = oracle::random_graph(rng, n, 0.2 + 0.6 * (rng() % 100) / 100.0);
    const auto perm = oracle::random_permutation(rng, n);
    ASSERT_EQ(canonical_form(g), canonical_form(g.relabeled(perm))) << encode_graph6(g);
  }
}

TEST(Canonical, InvariantOnRegularGraphs) {
  // Highly symmetric inputs stress the backtracking rather than refinement.
  std::mt19937_64 rng(8);
  const std::vector<Graph> hard{oracle::cycle(12),
                                disjoint_union(oracle::cycle(6), oracle::cycle(6)),
                                disjoint_union(complete_graph(4), complete_graph(4)),
                                k_bipartite(5, 5),
                                join(oracle::cycle(5), oracle::cycle(5))};
  for (const Graph& g : hard) {
    for (int i = 0; i < 20; ++i) {
      EXPECT_EQ(canonical_form(g), canonical_form(g.relabeled(oracle::random_permutation(rng, g.order()))));
    }
  }
  EXPECT_NE(canonical_form(oracle::cycle(12)), canonical_form(disjoint_union(oracle::cycle(6), oracle::cycle(6))));
}

TEST(Canonical, AgreesWithBruteForceOnOrderSix) {
  // Every labeled graph on 6 vertices maps to one of 156 forms, and the
  // partition into classes matches the permutation-minimum oracle.
  std::map<std::string, std::string> oracle_to_form;
  std::set<std::string> forms;
  for (std::uint64_t code = 0; code < (1U << 15); code += 7) {
    const Graph g = oracle::from_code(6, code);
    const std::string f = canonical_form(g).bytes();
    const std::string o = oracle::brute_canonical(g);
    auto [it, inserted] = oracle_to_form.emplace(o, f);
    if (!inserted) { ASSERT_EQ(it->second, f); }
    forms.insert(f);
  }
  EXPECT_EQ(forms.size(), oracle_to_form.size());
}

TEST(Canonical, DistinctAcrossAllClassesUpToSix) {
  const std::size_t expected[] = {1, 1, 2, 4, 11, 34, 156};
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto reps = oracle::all_classes_brute(n);
    ASSERT_EQ(reps.size(), expected[n]);
    EXPECT_EQ(canonical_set(reps).size(), reps.size()) << "order " << n;
  }
}

TEST(IsIsomorphic, Examples) {
  const Graph c5 = oracle::cycle(5);
  EXPECT_TRUE(is_isomorphic(c5, c5.relabeled(std::vector<Vertex>{3, 0, 4, 1, 2})));
  EXPECT_TRUE(is_isomorphic(k_bipartite(2, 2), oracle::cycle(4)));
  EXPECT_FALSE(is_isomorphic(oracle::cycle(6), disjoint_union(complete_graph(3), complete_graph(3))));
  EXPECT_FALSE(is_isomorphic(empty_graph(3), empty_graph(4)));
}

TEST(Graph6, Examples) {
  EXPECT_EQ(encode_graph6(complete_graph(2)), "A_");
  EXPECT_EQ(decode_graph6("A_"), complete_graph(2));
  EXPECT_EQ(encode_graph6(decode_graph6("A_")), "A_");
  EXPECT_EQ(encode_graph6(empty_graph(0)), "?");
  EXPECT_EQ(decode_graph6(encode_graph6(oracle::cycle(5))), oracle::cycle(5));
  // Published encoding of the 5-cycle 0-1-2-3-4-0.
  EXPECT_EQ(encode_graph6(oracle::cycle(5)), "Dhc");
}

TEST(Graph6, LargeOrderHeader) {
  const Graph g = oracle::path(63);
  const std::string s = encode_graph6(g);
  EXPECT_EQ(s.substr(0, 4), std::string("~") + char(63) + char(63 + 0) + char(63 + 63));
  EXPECT_EQ(decode_graph6(s), g);
  const Graph big = oracle::path(300);
  EXPECT_EQ(decode_graph6(encode_graph6(big)), big);
}

TEST(Graph6, ToleratesHeaderAndNewline) {
  EXPECT_EQ(decode_graph6(">>graph6<<A_\n"), complete_graph(2));
  EXPECT_EQ(decode_graph6("A_\r\n"), complete_graph(2));
}

TEST(Graph6, ErrorsNameOffset) {
  try {
    decode_graph6("D");
    FAIL() << "truncated input accepted";
  } catch (const Graph6Error& e) {
    EXPECT_EQ(e.offset(), 1u);
  }
  try {
    decode_graph6("A_x");
    FAIL() << "trailing byte accepted";
  } catch (const Graph6Error& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
  try {
    decode_graph6("D\x01" "c");
    FAIL() << "non-printable byte accepted";
  } catch (const Graph6Error& e) {
    EXPECT_EQ(e.offset(), 1u);
  }
  EXPECT_THROW(decode_graph6(""), Graph6Error);
}

TEST(Graph6, RoundTripRandom) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = rng() % 33;
    const Graph g = oracle::random_graph(rng, n, (rng() % 101) / 100.0);
    const std::string s = encode_graph6(g);
    ASSERT_EQ(decode_graph6(s), g);
    ASSERT_EQ(encode_graph6(decode_graph6(s)), s);
  }
}
