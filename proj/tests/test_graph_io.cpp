#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "majority/graph.hpp"
#include "majority/instance_io.hpp"

using namespace majority;

namespace {

Graph random_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST(Parse, MinimalUndirected) {
  const auto in = parse_instance("graph undirected\nv 0\nv 1\ne 0 1\n");
  ASSERT_FALSE(in.directed());
  EXPECT_EQ(in.graph().size(), 2);
  EXPECT_EQ(in.graph().edge_count(), 1u);
  EXPECT_TRUE(in.graph().adjacent(1, 0));
}

TEST(Parse, AntiparallelArcsAllowed) {
  const auto in = parse_instance("graph directed\nv 0\nv 1\ne 0 1\ne 1 0\n");
  ASSERT_TRUE(in.directed());
  EXPECT_EQ(in.digraph().arc_count(), 2u);
  EXPECT_TRUE(in.digraph().has_arc(0, 1));
  EXPECT_TRUE(in.digraph().has_arc(1, 0));
}

TEST(Parse, SelfLoopRejected) {
  EXPECT_THROW(parse_instance("graph undirected\nv 0\ne 0 0\n"), ValidationError);
  EXPECT_THROW(parse_instance("graph directed\nv 0\ne 0 0\n"), ValidationError);
}

TEST(Parse, ErrorsCarryLineNumbers) {
  try {
    parse_instance("graph undirected\nv 0\n# comment\nv 1 colour=red\n");
    FAIL() << "unknown key accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse_instance("v 0\n"), ParseError);
  EXPECT_THROW(parse_instance("graph undirected\nv 0\nx 1\n"), ParseError);
  EXPECT_THROW(parse_instance("graph undirected\nv 0\nv 0\n"), ParseError);
  EXPECT_THROW(parse_instance("graph undirected\nv 0\nv 2\n"), ValidationError);
  EXPECT_THROW(parse_instance("graph undirected\nv 0\nv 1\ne 0 1\ne 1 0\n"), ValidationError);
  EXPECT_THROW(parse_instance("graph undirected\nv 0\nl 0 1 1\n"), ValidationError);
}

TEST(Parse, MetadataListsWeightsAndComments) {
  const auto in = parse_instance(
      "graph undirected  # header\n"
      "v 0 deg=infinite class=A\n"
      "v 1 deg=finite complete\n"
      "v 2\n"
      "e 0 1\n"
      "l 1 4 3 2 1\n"
      "r 1 4 1/2\n"
      "r 1 3 2/4\n");
  EXPECT_TRUE(in.meta[0].infinite());
  EXPECT_EQ(in.meta[0].subclass, Subclass::A);
  EXPECT_TRUE(in.meta[1].complete);
  EXPECT_FALSE(in.meta[2].complete);
  EXPECT_EQ(in.lists[1][0], 4);
  EXPECT_EQ(in.weights.at(1, 3), Rational(1, 2));
}

TEST(Parse, MetadataInvariants) {
  EXPECT_THROW(parse_instance("graph undirected\nv 0 deg=infinite\n"), ValidationError);
  EXPECT_THROW(parse_instance("graph undirected\nv 0 class=A\n"), ValidationError);
  EXPECT_THROW(parse_instance("graph undirected\nv 0 deg=infinite class=B complete\n"),
               ValidationError);
}

TEST(Serialize, CanonicalTwoVertexText) {
  const Edge e[] = {{1, 0}};
  const auto text = serialize_instance(make_instance(Graph::from_edges(2, e)));
  EXPECT_EQ(text, "graph undirected\nv 0\nv 1\ne 0 1\n");
}

TEST(Serialize, MetadataFlagsAppear) {
  const Edge e[] = {{0, 1}};
  Prefix<Graph> p(Graph::from_edges(2, e),
                  {{DegreeClass::infinite, Subclass::B, false}, {DegreeClass::finite, {}, true}});
  const auto text = serialize_instance(make_instance(p));
  EXPECT_NE(text.find("v 0 deg=infinite class=B"), std::string::npos);
  EXPECT_NE(text.find("v 1 deg=finite complete"), std::string::npos);
}

TEST(Serialize, RoundTripRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance in = make_instance(random_graph(50, 0.2, seed));
    std::mt19937_64 rng(seed);
    for (Vertex v = 0; v < 50; v += 3) {
      in.lists.set(v, {static_cast<Color>(v % 5), 7, 9});
      in.weights.set(v, 7, Rational(static_cast<long>(rng() % 9), 4));
    }
    in.meta[4] = {DegreeClass::finite, std::nullopt, true};
    in.set_indices = {1, 3};
    in.sets = {{0, 5, 9}, {2}};
    const auto back = parse_instance(serialize_instance(in));
    EXPECT_EQ(back, in);
  }
}

TEST(Serialize, RoundTripDigraph) {
  std::vector<Edge> arcs = {{0, 1}, {1, 0}, {2, 1}, {3, 0}};
  Instance in = make_instance(Digraph::from_arcs(4, arcs));
  EXPECT_EQ(parse_instance(serialize_instance(in)), in);
}

TEST(Induced, TriangleKeepTwo) {
  const Edge e[] = {{0, 1}, {1, 2}, {0, 2}};
  const auto g = Graph::from_edges(3, e);
  const Vertex keep[] = {0, 1};
  const auto sub = induced_subgraph(g, keep);
  EXPECT_EQ(sub.graph.size(), 2);
  EXPECT_EQ(sub.graph.edge_count(), 1u);
}

TEST(Induced, KeepAllIsIdentity) {
  const auto g = random_graph(12, 0.4, 3);
  std::vector<Vertex> all(12);
  for (int v = 0; v < 12; ++v) all[v] = v;
  const auto sub = induced_subgraph(g, all);
  EXPECT_EQ(sub.graph, g);
  for (int v = 0; v < 12; ++v) EXPECT_EQ(sub.to_original[v], v);
}

TEST(Induced, RandomSubsetMatchesEdgeScan) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_graph(10, 0.5, rng());
    std::vector<Vertex> ids(10);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(5);
    const auto sub = induced_subgraph(g, ids);
    const std::set<Vertex> keep(ids.begin(), ids.end());
    std::size_t brute = 0;
    for (auto [u, v] : g.edges()) brute += keep.count(u) && keep.count(v);
    EXPECT_EQ(sub.graph.edge_count(), brute);
    for (Vertex a = 0; a < 5; ++a)
      for (Vertex b = 0; b < 5; ++b)
        if (a != b)
          EXPECT_EQ(sub.graph.adjacent(a, b),
                    g.adjacent(sub.to_original[a], sub.to_original[b]));
  }
  const Vertex bad[] = {0, 10};
  EXPECT_THROW(induced_subgraph(random_graph(10, 0.5, 1), bad), ValidationError);
}

TEST(Graph, DegreesMatchAdjacency) {
  const auto g = random_graph(30, 0.3, 5);
  std::size_t sum = 0;
  for (Vertex v = 0; v < 30; ++v) {
    EXPECT_EQ(g.degree(v), static_cast<int>(g.neighbors(v).size()));
    sum += g.degree(v);
  }
  EXPECT_EQ(sum, 2 * g.edge_count());
}

TEST(Graph, AdjacencyMustBeSymmetric) {
  EXPECT_THROW(Graph::from_adjacency({{1}, {}}), ValidationError);
  EXPECT_THROW(Graph::from_adjacency({{1, 1}, {0}}), ValidationError);
}

TEST(Digraph, OutDegreesAndInNeighbors) {
  std::vector<Edge> arcs = {{0, 1}, {0, 2}, {2, 1}};
  const auto d = Digraph::from_arcs(3, arcs);
  EXPECT_EQ(d.out_degree(0), 2);
  EXPECT_EQ(d.in_degree(1), 2);
  EXPECT_EQ(d.in_neighbors(1).size(), 2u);
  EXPECT_THROW(Digraph::from_arcs(3, std::vector<Edge>{{0, 1}, {0, 1}}), ValidationError);
}

TEST(Coloring, ParseAndSerialize) {
  const auto c = parse_coloring("c 0 3\nc 2 1\n", 3);
  EXPECT_EQ(c[0], 3);
  EXPECT_FALSE(c.colored(1));
  EXPECT_EQ(serialize_coloring(c), "c 0 3\nc 2 1\n");
  EXPECT_THROW(parse_coloring("c 0 1\nc 0 2\n", 1), ParseError);
  EXPECT_THROW(parse_coloring("c 5 1\n", 1), ValidationError);
  EXPECT_THROW(c.at(1), PartialColoringError);
}

TEST(WeightMap, DomainChecks) {
  auto lists = ListAssignment::uniform(2, {0, 1});
  WeightMap w(2);
  w.set(0, 0, Rational(1));
  w.set(0, 1, Rational(1));
  const std::vector<Vertex> zero = {0};
  EXPECT_NO_THROW(w.require_domain(lists, zero));
  w.set(0, 5, Rational(1));
  EXPECT_THROW(w.require_domain(lists, zero), ValidationError);
  const std::vector<Vertex> one = {1};
  EXPECT_THROW(w.require_domain(lists, one), ValidationError);
}
