#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

#include "bigap/graph.hpp"
#include "test_util.hpp"

using namespace bigap;

TEST(SampleBipartite, ExtremeProbabilities) {
  auto r = derive_stream({1, 0});
  EXPECT_EQ(sample_bipartite(4, 7, 0.0, r).edge_count(), 0u);
  auto const full = sample_bipartite(4, 7, 1.0, r);
  EXPECT_EQ(full.edge_count(), 28u);
  EXPECT_EQ(full, BipartiteGraph::complete(4, 7));
}

TEST(SampleBipartite, RejectsBadProbability) {
  auto r = derive_stream({1, 0});
  EXPECT_THROW(sample_bipartite(3, 3, -0.1, r), domain_error);
  EXPECT_THROW(sample_bipartite(3, 3, 1.5, r), domain_error);
  EXPECT_THROW(sample_bipartite(3, 3, std::nan(""), r), domain_error);
  EXPECT_THROW(sample_bipartite(0, 3, 0.5, r), domain_error);
}

TEST(SampleBipartite, DeterministicPerSeedSpec) {
  for (std::uint64_t t = 0; t < 5; ++t) {
    auto a = derive_stream({99, t});
    auto b = derive_stream({99, t});
    EXPECT_EQ(sample_bipartite(50, 70, 0.13, a), sample_bipartite(50, 70, 0.13, b));
  }
}

TEST(SampleBipartite, EdgesSortedUniqueInRange) {
  auto r = derive_stream({5, 0});
  auto const g = sample_bipartite(37, 53, 0.4, r);
  auto const e = g.edges();
  for (std::size_t k = 0; k < e.size(); ++k) {
    ASSERT_LT(e[k].left, 37u);
    ASSERT_LT(e[k].right, 53u);
    if (k > 0) {
      ASSERT_LT(e[k - 1], e[k]);
    }
  }
}

TEST(SampleBipartite, MeanEdgeCountMatchesBinomial) {
  // 200 trials of Binomial(10^6, 0.03): mean 30000, sd 170.59, standard error 12.06.
  double sum = 0.0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    auto r = derive_stream({2024, t});
    sum += static_cast<double>(sample_bipartite(1000, 1000, 0.03, r).edge_count());
  }
  double const sd = std::sqrt(1e6 * 0.03 * 0.97);
  EXPECT_NEAR(sd, 170.59, 0.01);
  EXPECT_NEAR(sum / 200.0, 30000.0, 3.0 * sd / std::sqrt(200.0));
}

TEST(SampleBipartite, EdgeCountHistogramChiSquared) {
  // 500 trials of sample_bipartite(30, 40, 0.2) against Binomial(1200, 0.2),
  // 13 bins cut at 215, 220, ..., 270; critical value chi2_{0.999}(12) = 32.9095.
  constexpr int cells = 1200;
  constexpr double p = 0.2;
  std::vector<int> cuts;
  for (int c = 215; c <= 270; c += 5) cuts.push_back(c);
  auto bin_of = [&](int k) {
    int b = 0;
    while (b < static_cast<int>(cuts.size()) && k > cuts[b]) ++b;
    return b;
  };
  std::vector<double> expected(cuts.size() + 1, 0.0);
  for (int k = 0; k <= cells; ++k) expected[bin_of(k)] += testutil::binomial_pmf(cells, k, p);
  std::vector<double> observed(expected.size(), 0.0);
  constexpr int trials = 500;
  for (int t = 0; t < trials; ++t) {
    auto r = derive_stream({77, static_cast<std::uint64_t>(t)});
    observed[bin_of(static_cast<int>(sample_bipartite(30, 40, p, r).edge_count()))] += 1.0;
  }
  double chi2 = 0.0;
  for (std::size_t b = 0; b < expected.size(); ++b) {
    double const e = expected[b] * trials;
    ASSERT_GE(e, 5.0) << "bin " << b;
    chi2 += (observed[b] - e) * (observed[b] - e) / e;
  }
  EXPECT_LT(chi2, 32.9095);
}

TEST(SampleEr, ExtremeProbabilities) {
  auto r = derive_stream({3, 0});
  EXPECT_EQ(sample_er(5, 0.0, r).edge_count(), 0u);
  auto const k5 = sample_er(5, 1.0, r);
  EXPECT_EQ(k5.edge_count(), 10u);
  EXPECT_EQ(k5, Graph::complete(5));
  EXPECT_EQ(sample_er(1, 1.0, r).edge_count(), 0u);
  EXPECT_THROW(sample_er(5, 2.0, r), domain_error);
}

TEST(SampleEr, MeanEdgeCount) {
  // Binomial(124750, 0.1): mean 12475, sd 105.96.
  double const sd = std::sqrt(124750 * 0.1 * 0.9);
  double sum = 0.0;
  constexpr int trials = 100;
  for (int t = 0; t < trials; ++t) {
    auto r = derive_stream({11, static_cast<std::uint64_t>(t)});
    auto const m = static_cast<double>(sample_er(500, 0.1, r).edge_count());
    EXPECT_NEAR(m, 12475.0, 5.0 * sd);
    sum += m;
  }
  EXPECT_NEAR(sum / trials, 12475.0, 3.0 * sd / std::sqrt(trials));
}

TEST(SampleEr, EveryPairEquallyLikely) {
  // Inclusion frequency of each of the 15 pairs of K_6 over 20000 draws at p = 0.3.
  constexpr int trials = 20000;
  std::map<std::pair<int, int>, int> hits;
  for (int t = 0; t < trials; ++t) {
    auto r = derive_stream({13, static_cast<std::uint64_t>(t)});
    auto const g = sample_er(6, 0.3, r);
    for (auto const& e : g.edges()) ++hits[{e.a, e.b}];
  }
  ASSERT_EQ(hits.size(), 15u);
  double const sd = std::sqrt(trials * 0.3 * 0.7);
  for (auto const& [pair, count] : hits) EXPECT_NEAR(count, 0.3 * trials, 4.0 * sd);
}

TEST(EmbedUnion, EmptyTwoByTwoAtPOne) {
  auto r = derive_stream({1, 0});
  auto const g = embed_union(BipartiteGraph(2, 2), 1.0, r);
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(2, 3));
}

TEST(EmbedUnion, CompleteBipartiteBecomesK5) {
  auto r = derive_stream({1, 0});
  EXPECT_EQ(embed_union(BipartiteGraph::complete(2, 3), 1.0, r), Graph::complete(5));
}

TEST(EmbedUnion, PreservesCrossEdges) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    auto r = derive_stream({8, t});
    auto const g = testutil::random_bipartite(r, 1, 30, 0.0, 1.0);
    double const p = r.uniform();
    auto const gp = embed_union(g, p, r);
    EXPECT_EQ(gp.vertex_count(), g.vertex_count());
    EXPECT_EQ(cross_part(gp, g.n1()), g);
  }
}

TEST(EmbedUnion, TotalEdgeCountMatchesGnp) {
  // G' ~ G(600, 0.05): C(600,2) * 0.05 = 8982.5 expected edges.
  double const cells = 600.0 * 599.0 / 2.0;
  double const sd = std::sqrt(cells * 0.05 * 0.95);
  double sum = 0.0;
  constexpr int trials = 200;
  for (int t = 0; t < trials; ++t) {
    auto r = derive_stream({31, static_cast<std::uint64_t>(t)});
    auto const g = sample_bipartite(300, 300, 0.05, r);
    sum += static_cast<double>(embed_union(g, 0.05, r).edge_count());
  }
  EXPECT_NEAR(sum / trials, cells * 0.05, 3.0 * sd / std::sqrt(trials));
}

TEST(EmbedUnion, LawIsGnpOnEveryPair) {
  // Sample G(2,3,p) then embed: all 10 pairs of the 5 vertices should appear
  // with the same frequency p, cross or side-internal alike.
  constexpr int trials = 20000;
  constexpr double p = 0.35;
  std::map<std::pair<int, int>, int> hits;
  for (int t = 0; t < trials; ++t) {
    auto r = derive_stream({17, static_cast<std::uint64_t>(t)});
    auto const g = sample_bipartite(2, 3, p, r);
    auto const h = embed_union(g, p, r);
    for (auto const& e : h.edges()) ++hits[{e.a, e.b}];
  }
  ASSERT_EQ(hits.size(), 10u);
  double const sd = std::sqrt(trials * p * (1 - p));
  for (auto const& [pair, count] : hits) {
    EXPECT_NEAR(count, p * trials, 4.0 * sd) << pair.first << "-" << pair.second;
  }
}

TEST(DegreeStats, CompleteBipartite) {
  auto const s = degree_stats(BipartiteGraph::complete(2, 3), 1.0);
  EXPECT_EQ(s.min_left, 3u);
  EXPECT_EQ(s.max_left, 3u);
  EXPECT_EQ(s.min_right, 2u);
  EXPECT_EQ(s.max_right, 2u);
  ASSERT_TRUE(s.rel_dev.has_value());
  EXPECT_EQ(*s.rel_dev, 0.0);
}

TEST(DegreeStats, ZeroProbabilityIsUndefinedNotZero) {
  auto const s = degree_stats(BipartiteGraph(2, 3), 0.0);
  EXPECT_EQ(s.max_left, 0u);
  EXPECT_EQ(s.max_right, 0u);
  EXPECT_FALSE(s.rel_dev.has_value());
}

TEST(DegreeStats, ConcentrationAtThousand) {
  int within = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto r = derive_stream({4, t});
    auto const s = degree_stats(sample_bipartite(1000, 1000, 0.1, r), 0.1);
    ASSERT_TRUE(s.rel_dev.has_value());
    EXPECT_LE(s.min_left, s.max_left);
    EXPECT_LE(s.min_right, s.max_right);
    if (*s.rel_dev <= 0.5) ++within;
  }
  EXPECT_GE(within, 99);
}

TEST(BipartiteGraph, RejectsInvalidEdges) {
  EXPECT_THROW(BipartiteGraph(2, 2, {{2, 0}}), domain_error);
  EXPECT_THROW(BipartiteGraph(2, 2, {{0, 1}, {0, 1}}), domain_error);
  EXPECT_THROW(Graph(3, {{1, 1}}), domain_error);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), domain_error);
  EXPECT_NO_THROW(BipartiteGraph(2, 2, {{1, 1}, {0, 0}}));
}

TEST(EdgeList, BipartiteRoundTrip) {
  for (std::uint64_t t = 0; t < 10; ++t) {
    auto r = derive_stream({21, t});
    auto const g = testutil::random_bipartite(r, 1, 40, 0.0, 0.6);
    std::stringstream ss;
    write_edge_list(ss, g);
    EXPECT_EQ(read_bipartite_edge_list(ss), g);
  }
}

TEST(EdgeList, PlainRoundTrip) {
  auto r = derive_stream({22, 0});
  auto const g = sample_er(40, 0.2, r);
  std::stringstream ss;
  write_edge_list(ss, g);
  EXPECT_EQ(read_edge_list(ss), g);
}

TEST(EdgeList, ExactTextForCompleteBipartite) {
  std::stringstream ss;
  write_edge_list(ss, BipartiteGraph::complete(2, 3));
  EXPECT_EQ(ss.str(), "2 3 6\n0 0\n0 1\n0 2\n1 0\n1 1\n1 2\n");
}

TEST(EdgeList, MalformedInputReportsLine) {
  auto line_of = [](std::string const& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_bipartite_edge_list(in, "f");
    } catch (parse_error const& e) {
      return e.line();
    }
    return 999;
  };
  EXPECT_EQ(line_of(""), 1u);
  EXPECT_EQ(line_of("2 3\n"), 1u);
  EXPECT_EQ(line_of("2 3 2\n0 0\n"), 3u);
  EXPECT_EQ(line_of("2 3 2\n0 0\n0 x\n"), 3u);
  EXPECT_EQ(line_of("2 3 2\n0 0\n5 1\n"), 3u);
  EXPECT_EQ(line_of("2 3 1\n0 0\n1 1\n"), 3u);
}
