#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "majority/enumerate.hpp"
#include "majority/generators.hpp"

using namespace majority;

namespace {

std::set<Vertex> nbrs(const Instance& in, Vertex v) {
  if (in.directed()) {
    const auto s = in.digraph().out_neighbors(v);
    return {s.begin(), s.end()};
  }
  const auto s = in.graph().neighbors(v);
  return {s.begin(), s.end()};
}

Instance gen(const std::string& family, int size, std::uint64_t seed = 0) {
  return generate(FamilySpec{family, size, seed, {}});
}

}  // namespace

TEST(Numbering, CantorRoundTrip) {
  for (std::int64_t id = 0; id < 5000; ++id) {
    const auto [x, y] = detail::cantor_inverse(id);
    EXPECT_EQ(detail::cantor(x, y), id);
  }
  EXPECT_EQ(detail::cantor(0, 0), 0);
  EXPECT_EQ(detail::cantor(1, 0), 1);
  EXPECT_EQ(detail::cantor(0, 1), 2);
}

TEST(Numbering, IntegersInterleave) {
  EXPECT_EQ(detail::z_of(0), 0);
  EXPECT_EQ(detail::z_of(1), 1);
  EXPECT_EQ(detail::z_of(2), -1);
  for (std::int64_t id = 0; id < 1000; ++id) EXPECT_EQ(detail::id_of_z(detail::z_of(id)), id);
}

TEST(Families, RayOfFive) {
  const auto in = gen("ray", 5);
  EXPECT_EQ(in.graph().edge_count(), 4u);
  for (Vertex v = 0; v < 5; ++v) EXPECT_FALSE(in.meta[v].infinite());
  // Vertex 0 has its only neighbour in the prefix; the last one does not.
  for (Vertex v = 0; v < 4; ++v) EXPECT_TRUE(in.meta[v].complete) << v;
  EXPECT_FALSE(in.meta[4].complete);
}

TEST(Families, HalfGraphOfTen) {
  const auto in = gen("half_graph", 10);
  const auto& g = in.graph();
  for (int j = 1; j <= 5; ++j) {
    const Vertex b = 2 * (j - 1) + 1;
    EXPECT_EQ(g.degree(b), j - 1) << "b_" << j;
    EXPECT_TRUE(in.meta[b].complete);
    EXPECT_FALSE(in.meta[b].infinite());
  }
  for (int i = 1; i <= 5; ++i) {
    const Vertex a = 2 * (i - 1);
    EXPECT_EQ(in.meta[a].subclass, std::optional<Subclass>(Subclass::B));
    for (int j = 1; j <= 5; ++j)
      EXPECT_EQ(g.adjacent(a, 2 * (j - 1) + 1), i < j) << "a_" << i << " b_" << j;
    for (Vertex u : g.neighbors(a)) EXPECT_FALSE(in.meta[u].infinite());
  }
}

TEST(Families, InfiniteCliqueOfSix) {
  const auto in = gen("infinite_clique", 6);
  EXPECT_EQ(in.graph().edge_count(), 15u);
  for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(in.meta[v].subclass, std::optional<Subclass>(Subclass::A));
}

TEST(Families, InfiniteStar) {
  const auto in = gen("infinite_star", 8);
  EXPECT_EQ(in.graph().degree(0), 7);
  EXPECT_EQ(in.meta[0].subclass, std::optional<Subclass>(Subclass::B));
  for (Vertex v = 1; v < 8; ++v) EXPECT_TRUE(in.meta[v].complete);
}

TEST(Families, GridDegreesAtMostFour) {
  const auto in = gen("grid", 200);
  for (Vertex v = 0; v < 200; ++v) {
    EXPECT_LE(in.graph().degree(v), 4);
    if (in.meta[v].complete) {
      const auto [x, y] = detail::cantor_inverse(v);
      EXPECT_EQ(in.graph().degree(v), 2 + (x > 0) + (y > 0));
    }
  }
}

TEST(Families, DirectedVariantsUseOutDegreeClasses) {
  const auto star = gen("directed_infinite_star", 6);
  EXPECT_EQ(star.digraph().out_degree(0), 5);
  for (Vertex v = 1; v < 6; ++v) {
    EXPECT_EQ(star.digraph().out_degree(v), 0);
    EXPECT_TRUE(star.meta[v].complete);
  }
  const auto clique = gen("directed_infinite_clique", 5);
  EXPECT_EQ(clique.digraph().arc_count(), 20u);
  const auto half = gen("directed_half_graph", 10);
  EXPECT_TRUE(half.digraph().has_arc(0, 3));
  EXPECT_FALSE(half.digraph().has_arc(3, 0));
}

TEST(Families, UnknownOrBadParameters) {
  EXPECT_THROW(gen("moebius", 10), ValidationError);
  EXPECT_THROW(gen("ray", 0), ValidationError);
  EXPECT_THROW(generate(FamilySpec{"random_locally_finite", 10, 1, {{"delta", "zero"}}}),
               ValidationError);
  EXPECT_THROW(generate(FamilySpec{"random_locally_finite", 10, 1, {{"delta", "0"}}}),
               ValidationError);
  EXPECT_THROW(grow(FamilySpec{"ray", 10, 0, {}}, 10), ValidationError);
}

TEST(Families, RandomLocallyFiniteRespectsDelta) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto in = generate(FamilySpec{"random_locally_finite", 300, seed, {{"delta", "3"}}});
    for (Vertex v = 0; v < 300; ++v) EXPECT_LE(in.graph().degree(v), 3);
    const auto d = generate(FamilySpec{"directed_random_locally_finite", 300, seed, {{"delta", "3"}}});
    for (Vertex v = 0; v < 300; ++v) EXPECT_LE(d.digraph().out_degree(v), 3);
  }
  EXPECT_EQ(gen("random_locally_finite", 100, 4), gen("random_locally_finite", 100, 4));
  EXPECT_NE(gen("random_locally_finite", 100, 4), gen("random_locally_finite", 100, 5));
}

// Growing a prefix keeps the first T vertices' adjacency and classes, and
// completeness only switches on.
TEST(Growth, PrefixRestrictionMatches) {
  for (const auto& family : all_family_names())
    for (int t : {1, 10, 37}) {
      const FamilySpec spec{family, t, 3, {}};
      const auto small = generate(spec);
      const auto big = grow(spec, 2 * t + 20);
      std::vector<Vertex> first(static_cast<std::size_t>(t));
      std::iota(first.begin(), first.end(), 0);
      if (small.directed())
        EXPECT_EQ(induced_subgraph(big.digraph(), first).graph, small.digraph()) << family;
      else
        EXPECT_EQ(induced_subgraph(big.graph(), first).graph, small.graph()) << family;
      for (Vertex v = 0; v < t; ++v) {
        EXPECT_EQ(small.meta[v].degree, big.meta[v].degree) << family << " v=" << v;
        EXPECT_EQ(small.meta[v].subclass, big.meta[v].subclass) << family;
        if (small.meta[v].complete) EXPECT_TRUE(big.meta[v].complete) << family << " v=" << v;
      }
    }
}

TEST(Growth, HalfGraphTenToTwenty) {
  const FamilySpec spec{"half_graph", 10, 0, {}};
  const auto big = grow(spec, 20);
  const auto small = generate(spec);
  std::vector<Vertex> first(10);
  std::iota(first.begin(), first.end(), 0);
  EXPECT_EQ(induced_subgraph(big.graph(), first).graph, small.graph());
}

TEST(Growth, PipelineListsStable) {
  auto a = gen("star_of_rays", 40, 2);
  auto b = gen("star_of_rays", 90, 2);
  assign_pipeline_lists(a, 6, 8);
  assign_pipeline_lists(b, 6, 8);
  for (Vertex v = 0; v < 40; ++v) EXPECT_EQ(a.lists[v].size(), b.lists[v].size());
  for (Vertex v = 0; v < 40; ++v)
    EXPECT_TRUE(std::equal(a.lists[v].begin(), a.lists[v].end(), b.lists[v].begin()));
  EXPECT_THROW(assign_pipeline_lists(a, 3, 0), ValidationError);
}

// Flags checked against a much longer prefix: a complete vertex gains no
// neighbours, an infinite-degree vertex keeps gaining them, class B sees only
// finite-degree (out-)neighbours and class A sees infinite-degree ones.
TEST(Truthfulness, FlagsAgreeWithLongerPrefix) {
  for (const auto& family : all_family_names())
    for (int t : {12, 50}) {
      const auto small = gen(family, t, 6);
      const auto big = gen(family, 8 * t + 40, 6);
      for (Vertex v = 0; v < t; ++v) {
        const auto& m = small.meta[v];
        if (m.complete) EXPECT_EQ(nbrs(small, v), nbrs(big, v)) << family << " v=" << v;
        if (!m.infinite()) continue;
        EXPECT_GT(nbrs(big, v).size(), nbrs(small, v).size()) << family << " v=" << v;
        std::size_t inf = 0, fin = 0;
        for (Vertex u : nbrs(big, v)) (big.meta[u].infinite() ? inf : fin) += 1;
        if (*m.subclass == Subclass::B) EXPECT_EQ(inf, 0u) << family << " v=" << v;
        else EXPECT_GT(inf, nbrs(small, v).size() / 2) << family << " v=" << v;
      }
    }
}

TEST(Truthfulness, InstancesRoundTripThroughText) {
  for (const auto& family : all_family_names()) {
    auto in = gen(family, 30, 1);
    assign_pipeline_lists(in, 6, 1);
    EXPECT_EQ(parse_instance(serialize_instance(in)), in) << family;
  }
}

TEST(Enumerate, GraphClassCounts) {
  const std::size_t expect[] = {1, 2, 4, 11, 34, 156};
  for (int n = 1; n <= 6; ++n)
    EXPECT_EQ(enumerate::classes(enumerate::Kind::graph, n).size(), expect[n - 1]) << n;
}

TEST(Enumerate, ConnectedGraphsOnSix) {
  std::size_t connected = 0;
  for (auto code : enumerate::classes(enumerate::Kind::graph, 6))
    connected += enumerate::connected(enumerate::to_graph(code, 6));
  EXPECT_EQ(connected, 112u);
}

TEST(Enumerate, DagClassCounts) {
  const std::size_t expect[] = {1, 2, 6, 31, 302, 5984};
  for (int n = 1; n <= 6; ++n)
    EXPECT_EQ(enumerate::classes(enumerate::Kind::dag, n).size(), expect[n - 1]) << n;
}

TEST(Enumerate, DigraphClassCounts) {
  const std::size_t expect[] = {1, 3, 16, 218, 9608};
  for (int n = 1; n <= 5; ++n)
    EXPECT_EQ(enumerate::classes(enumerate::Kind::digraph, n).size(), expect[n - 1]) << n;
}

TEST(Enumerate, CanonicalFormIgnoresLabelling) {
  // Path 0-1-2 under every relabelling collapses to one code.
  std::set<enumerate::Mask> codes;
  std::vector<int> perm = {0, 1, 2};
  do {
    enumerate::Mask m = 0;
    auto edge = [&](int u, int v) {
      m |= enumerate::Mask{1} << (perm[u] * 3 + perm[v]);
      m |= enumerate::Mask{1} << (perm[v] * 3 + perm[u]);
    };
    edge(0, 1);
    edge(1, 2);
    codes.insert(enumerate::detail::canonical(m, 3));
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(codes.size(), 1u);
  EXPECT_THROW(enumerate::classes(enumerate::Kind::graph, 0), std::invalid_argument);
}
