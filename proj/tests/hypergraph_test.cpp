#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "hgsr/errors.hpp"
#include "hgsr/hypergraph.hpp"
#include "hgsr/verify.hpp"

namespace hgsr {
namespace {

// Dense (N+t)xN transformation matrix written out from the hyperedge list:
// identity on top, one averaging row per odd hyperedge in list order.
std::vector<std::vector<double>> dense_t_from_definition(const Hypergraph& h) {
  const std::size_t n = h.n_vertices();
  std::vector<std::vector<double>> t;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n, 0.0);
    row[i] = 1.0;
    t.push_back(row);
  }
  for (const auto& e : h.hyperedges()) {
    if (e.size() % 2 == 0) continue;
    std::vector<double> row(n, 0.0);
    for (VertexId v : e) row[v] = 1.0 / static_cast<double>(e.size());
    t.push_back(row);
  }
  return t;
}

std::vector<Hyperedge> sorted_edges(std::vector<Hyperedge> edges) {
  std::sort(edges.begin(), edges.end());
  return edges;
}

TEST(Hypergraph, RejectsCardinalityOne) {
  EXPECT_THROW(Hypergraph(3, {{0, 1}, {2}}), ValidationError);
}

TEST(Hypergraph, RejectsRepeatedAndOutOfRangeVertices) {
  EXPECT_THROW(Hypergraph(3, {{0, 0}}), ValidationError);
  EXPECT_THROW(Hypergraph(3, {{0, 3}}), ValidationError);
}

TEST(Hypergraph, KeepsDuplicateHyperedges) {
  const Hypergraph h(3, {{0, 1}, {1, 0}});
  EXPECT_EQ(h.n_hyperedges(), 2u);
  EXPECT_EQ(h.degrees(), (std::vector<std::size_t>{2, 2, 0}));
}

TEST(Hypergraph, CardinalitySetIsSortedAndDistinct) {
  EXPECT_EQ(cardinality_set(verify::example_hypergraph()), (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_TRUE(cardinality_set(Hypergraph(4, {})).empty());
}

TEST(Decompose, ExampleHypergraphSplitsIntoThreePartials) {
  const auto parts = decompose(verify::example_hypergraph());
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].cardinality(), 2u);
  EXPECT_EQ(parts[0].n_hyperedges(), 2u);
  EXPECT_EQ(parts[1].cardinality(), 3u);
  EXPECT_EQ(parts[1].n_hyperedges(), 1u);
  EXPECT_EQ(parts[2].cardinality(), 4u);
  EXPECT_EQ(parts[2].n_hyperedges(), 1u);
  for (const auto& p : parts) EXPECT_EQ(p.dimension(), 7u);
  const auto e3 = parts[0].hyperedge(0);
  EXPECT_EQ(std::vector<VertexId>(e3.begin(), e3.end()), (std::vector<VertexId>{2, 5}));
}

TEST(Decompose, EmptyHypergraphGivesNoPartials) {
  EXPECT_TRUE(decompose(Hypergraph(5, {})).empty());
}

TEST(Decompose, UniformHypergraphGivesOnePartial) {
  const Hypergraph h(8, {{0, 1, 2, 3, 4}, {1, 2, 3, 4, 5}, {3, 4, 5, 6, 7}});
  const auto parts = decompose(h);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].cardinality(), 5u);
  EXPECT_EQ(parts[0].n_hyperedges(), 3u);
}

TEST(Decompose, RemergedPartialsEqualOriginalMultiset) {
  std::mt19937_64 rng(11);
  const std::size_t cards[] = {2, 3, 4, 5, 7};
  for (int trial = 0; trial < 50; ++trial) {
    const Hypergraph h = verify::random_hypergraph(rng, 10, 12, cards);
    std::vector<Hyperedge> merged;
    for (const auto& p : decompose(h)) {
      EXPECT_EQ(p.dimension(), h.n_vertices());
      for (std::size_t k = 0; k < p.n_hyperedges(); ++k) {
        auto e = p.hyperedge(k);
        merged.emplace_back(e.begin(), e.end());
      }
    }
    EXPECT_EQ(sorted_edges(merged), sorted_edges(h.hyperedges()));
  }
}

TEST(Pretreat, ExampleGetsOneAuxiliaryVertex) {
  const PretreatedHypergraph pre = pretreat(verify::example_hypergraph());
  EXPECT_EQ(pre.transform.n_aux(), 1u);
  EXPECT_EQ(pre.hypergraph.n_vertices(), 8u);
  EXPECT_EQ(pre.hypergraph.hyperedge(0), (Hyperedge{0, 1, 4, 7}));
  EXPECT_EQ(pre.aux_origin, (std::vector<std::size_t>{0}));
  EXPECT_EQ(pre.transform.dense_row(7),
            (std::vector<double>{1.0 / 3, 1.0 / 3, 0, 0, 1.0 / 3, 0, 0}));
}

TEST(Pretreat, AllEvenHypergraphIsUnchanged) {
  const Hypergraph h(5, {{0, 1}, {1, 2, 3, 4}});
  const PretreatedHypergraph pre = pretreat(h);
  EXPECT_EQ(pre.transform.n_aux(), 0u);
  EXPECT_EQ(pre.hypergraph.hyperedges(), h.hyperedges());
  for (std::size_t i = 0; i < 5; ++i) {
    std::vector<double> unit(5, 0.0);
    unit[i] = 1.0;
    EXPECT_EQ(pre.transform.dense_row(i), unit);
  }
}

TEST(Pretreat, DisjointTriplesGetDistinctDegreeOneAuxiliaries) {
  const PretreatedHypergraph pre = pretreat(Hypergraph(6, {{0, 1, 2}, {3, 4, 5}}));
  ASSERT_EQ(pre.transform.n_aux(), 2u);
  const auto deg = pre.hypergraph.degrees();
  EXPECT_EQ(deg[6], 1u);
  EXPECT_EQ(deg[7], 1u);
  EXPECT_EQ(pre.hypergraph.hyperedge(0).back(), 6u);
  EXPECT_EQ(pre.hypergraph.hyperedge(1).back(), 7u);
}

TEST(Pretreat, InvariantsHoldOnRandomHypergraphs) {
  std::mt19937_64 rng(12);
  const std::size_t cards[] = {2, 3, 4, 5, 6, 7};
  for (int trial = 0; trial < 50; ++trial) {
    const Hypergraph h = verify::random_hypergraph(rng, 9, 8, cards);
    const PretreatedHypergraph pre = pretreat(h);
    std::size_t odd = 0;
    for (const auto& e : h.hyperedges()) odd += e.size() % 2;
    EXPECT_EQ(pre.transform.n_aux(), odd);
    const auto deg = pre.hypergraph.degrees();
    for (std::size_t j = 0; j < odd; ++j) EXPECT_EQ(deg[h.n_vertices() + j], 1u);
    for (std::size_t k = 0; k < h.n_hyperedges(); ++k) {
      const auto& before = h.hyperedge(k);
      const auto& after = pre.hypergraph.hyperedge(k);
      EXPECT_EQ(after.size() % 2, 0u);
      if (before.size() % 2 == 0) EXPECT_EQ(after, before);
    }
    // Every auxiliary row is uniform 1/(c-1) and sums to one.
    for (const auto& row : pre.transform.aux_rows()) {
      const std::size_t c = row.columns.size() + 1;
      EXPECT_EQ(row.weight, 1.0 / static_cast<double>(c - 1));
      double sum = 0.0;
      for (std::size_t i = 0; i < row.columns.size(); ++i) sum += row.weight;
      EXPECT_NEAR(sum, 1.0, 1e-15);
    }
    // Idempotent: nothing left to pretreat.
    EXPECT_EQ(pretreat(pre.hypergraph).transform.n_aux(), 0u);
  }
}

TEST(Transform, AuxiliarySignalIsMeanOfMembers) {
  const PretreatedHypergraph pre = pretreat(verify::example_hypergraph());
  const Signal f = {0.3, -1.2, 4.0, 2.5, 0.9, 7.0, -3.0};
  const Signal ft = apply_transform(pre.transform, f);
  ASSERT_EQ(ft.size(), 8u);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(ft[i], f[i]);
  EXPECT_DOUBLE_EQ(ft[7], (f[0] + f[1] + f[4]) / 3.0);
}

TEST(Transform, IndicatorOfFirstVertex) {
  const PretreatedHypergraph pre = pretreat(verify::example_hypergraph());
  const Signal ft = apply_transform(pre.transform, Signal{1, 0, 0, 0, 0, 0, 0});
  EXPECT_DOUBLE_EQ(ft[7], 1.0 / 3.0);
}

TEST(Transform, ConstantSignalStaysConstant) {
  const PretreatedHypergraph pre = pretreat(Hypergraph(6, {{0, 1, 2}, {2, 3, 4, 5, 1}}));
  const Signal ft = apply_transform(pre.transform, Signal(6, 0.7));
  for (double x : ft) EXPECT_NEAR(x, 0.7, 1e-15);
}

TEST(Transform, LengthMismatchThrows) {
  const PretreatedHypergraph pre = pretreat(verify::example_hypergraph());
  EXPECT_THROW(apply_transform(pre.transform, Signal(6, 0.0)), DimensionError);
  EXPECT_THROW(transpose_apply(pre.transform, Signal(7, 0.0)), DimensionError);
}

TEST(TransposeApply, IdentityWhenNoAuxiliaries) {
  const TransformationMatrix tm(4);
  const Signal g = {1.5, -2.0, 0.25, 3.0};
  EXPECT_EQ(transpose_apply(tm, g), g);
}

TEST(TransposeApply, UnitAuxiliaryVectorGivesColumnOfT) {
  const PretreatedHypergraph pre = pretreat(verify::example_hypergraph());
  Signal g(8, 0.0);
  g[7] = 1.0;
  const Signal out = transpose_apply(pre.transform, g);
  const Signal expected = {1.0 / 3, 1.0 / 3, 0, 0, 1.0 / 3, 0, 0};
  for (std::size_t i = 0; i < 7; ++i) EXPECT_DOUBLE_EQ(out[i], expected[i]);
}

TEST(TransposeApply, MatchesDenseMatrixAndIsAdjoint) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::size_t cards[] = {2, 3, 5};
  for (int trial = 0; trial < 30; ++trial) {
    const Hypergraph h = verify::random_hypergraph(rng, 8, 6, cards);
    const PretreatedHypergraph pre = pretreat(h);
    const auto t = dense_t_from_definition(h);
    ASSERT_EQ(t.size(), pre.transform.n_rows());
    Signal f(h.n_vertices());
    Signal g(t.size());
    for (auto& x : f) x = u(rng);
    for (auto& x : g) x = u(rng);

    const Signal tg = transpose_apply(pre.transform, g);
    for (std::size_t j = 0; j < f.size(); ++j) {
      double expect = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) expect += t[i][j] * g[i];
      EXPECT_NEAR(tg[j], expect, 1e-12);
    }
    const Signal tf = apply_transform(pre.transform, f);
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) lhs += tf[i] * g[i];
    for (std::size_t j = 0; j < f.size(); ++j) rhs += f[j] * tg[j];
    EXPECT_NEAR(lhs, rhs, 1e-12);
  }
}

TEST(HypergraphText, ParsesCommentsAndRoundTrips) {
  std::istringstream in("# example\n7 4\n0 1 4\n1 2 3 4\n# pairs\n2 5\n5 6\n");
  const Hypergraph h = read_hypergraph(in);
  EXPECT_EQ(h.hyperedges(), verify::example_hypergraph().hyperedges());
  std::ostringstream out;
  write_hypergraph(out, h);
  std::istringstream back(out.str());
  EXPECT_EQ(read_hypergraph(back).hyperedges(), h.hyperedges());
}

TEST(HypergraphText, CardinalityOneLineIsRejectedWithLineNumber) {
  std::istringstream in("3 2\n0 1\n2\n");
  try {
    read_hypergraph(in, "h.txt");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("h.txt:3"), std::string::npos);
  }
}

TEST(HypergraphText, MalformedInputs) {
  std::istringstream bad_header("seven 1\n0 1\n");
  EXPECT_THROW(read_hypergraph(bad_header), ParseError);
  std::istringstream short_count("3 2\n0 1\n");
  EXPECT_THROW(read_hypergraph(short_count), ParseError);
  std::istringstream out_of_range("3 1\n0 3\n");
  EXPECT_THROW(read_hypergraph(out_of_range), ParseError);
  std::istringstream empty("");
  EXPECT_THROW(read_hypergraph(empty), ParseError);
}

}  // namespace
}  // namespace hgsr
