#include <gtest/gtest.h>

#include <cmath>

#include "bigap/dense_eig.hpp"
#include "bigap/lanczos.hpp"
#include "bigap/spectra.hpp"
#include "test_util.hpp"

using namespace bigap;

namespace {

void expect_matches_oracle(SparseSymMatrix const& m, SpectralSummary const& s, double tol) {
  auto const eigs = dense_eig(m.to_dense());
  auto const n = eigs.size();
  EXPECT_NEAR(s.mu1, eigs[n - 1], tol);
  EXPECT_NEAR(s.mu2, eigs[n - 2], tol);
  EXPECT_NEAR(s.mu_second_last, eigs[1], tol);
  EXPECT_NEAR(s.mu_min, eigs[0], tol);
}

}  // namespace

TEST(Lanczos, IdentityLike) {
  std::vector<double> ones(12, 1.0);
  auto r = derive_stream({1, 0});
  auto const s = lanczos_extreme(SparseSymMatrix::diagonal(ones), {}, r);
  EXPECT_NEAR(s.mu1, 1.0, 1e-14);
  EXPECT_NEAR(s.mu2, 1.0, 1e-14);
  EXPECT_NEAR(s.residual, 0.0, 1e-14);
  ASSERT_TRUE(s.mu_plus);
  EXPECT_TRUE(s.mu_plus_certified);
}

TEST(Lanczos, PathOnThreeVertices) {
  // n < 2k: served by the dense fallback.
  auto const p3 = adjacency(BipartiteGraph(1, 2, {{0, 0}, {0, 1}}));
  auto r = derive_stream({1, 0});
  auto const s = lanczos_extreme(p3, {}, r);
  EXPECT_NEAR(s.mu1, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s.mu2, 0.0, 1e-12);
  EXPECT_NEAR(s.mu_min, -std::sqrt(2.0), 1e-12);
}

TEST(Lanczos, CompleteBipartite) {
  auto const a = adjacency(BipartiteGraph::complete(2, 3));
  auto r = derive_stream({3, 0});
  auto const s = lanczos_extreme(a, {}, r);
  EXPECT_NEAR(s.mu1, std::sqrt(6.0), 1e-10);
  EXPECT_NEAR(s.mu2, 0.0, 1e-8);
  EXPECT_NEAR(s.mu_min, -std::sqrt(6.0), 1e-10);
  ASSERT_TRUE(s.mu_plus);
  EXPECT_NEAR(*s.mu_plus, std::sqrt(6.0), 1e-10);
  EXPECT_TRUE(s.mu_plus_certified);
}

TEST(Lanczos, ZeroMatrix) {
  auto r = derive_stream({4, 0});
  auto const s = lanczos_extreme(SparseSymMatrix::from_triplets(30, {}), {}, r);
  EXPECT_EQ(s.mu1, 0.0);
  EXPECT_EQ(s.mu2, 0.0);
  EXPECT_EQ(s.mu_min, 0.0);
  EXPECT_FALSE(s.mu_plus);
}

TEST(Lanczos, SampledFiftyByFiftyMatchesOracle) {
  auto r = derive_stream({5, 0});
  auto const a = adjacency(sample_bipartite(50, 50, 0.2, r));
  auto const s = lanczos_extreme(a, {}, r);
  expect_matches_oracle(a, s, 1e-8);
  EXPECT_LE(s.residual, 1e-8);
  EXPECT_NEAR(s.mu_abs, s.mu1, 1e-8);
}

TEST(Lanczos, RandomBipartiteGraphsMatchOracle) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto r = derive_stream({6, t});
    auto const g = testutil::random_bipartite(r, 10, 60, 0.1, 0.6);
    auto const a = adjacency(g);
    auto const s = lanczos_extreme(a, {}, r);
    SCOPED_TRACE("trial " + std::to_string(t));
    expect_matches_oracle(a, s, 1e-8);
    EXPECT_LE(s.residual, 1e-8);
  }
}

TEST(Lanczos, RandomDenseSymmetricMatchesOracle) {
  auto r = derive_stream({7, 0});
  for (int t = 0; t < 10; ++t) {
    auto const m = SparseSymMatrix::from_dense(testutil::random_symmetric(80, r));
    auto const s = lanczos_extreme(m, {3, 1e-9, 0}, r);
    expect_matches_oracle(m, s, 1e-8);
    EXPECT_EQ(s.top.size(), 3u);
  }
}

TEST(Lanczos, DisconnectedGraphRecoversRepeatedEigenvalues) {
  // Two disjoint copies of K_{2,3} embedded in a 4x6 graph: mu1 = mu2 = sqrt(6).
  std::vector<CrossEdge> edges;
  for (vertex_t i = 0; i < 2; ++i)
    for (vertex_t j = 0; j < 3; ++j) {
      edges.push_back({i, j});
      edges.push_back({static_cast<vertex_t>(i + 2), static_cast<vertex_t>(j + 3)});
    }
  auto const a = adjacency(BipartiteGraph(4, 6, edges));
  auto r = derive_stream({8, 0});
  auto const s = lanczos_extreme(a, {}, r);
  EXPECT_NEAR(s.mu1, std::sqrt(6.0), 1e-10);
  EXPECT_NEAR(s.mu2, std::sqrt(6.0), 1e-10);
}

TEST(Lanczos, NonConvergenceIsExplicit) {
  auto r = derive_stream({9, 0});
  auto const a = adjacency(sample_bipartite(300, 300, 0.05, r));
  try {
    lanczos_extreme(a, {2, 1e-12, 6}, r);
    FAIL() << "expected convergence_error";
  } catch (convergence_error const& e) {
    EXPECT_GT(e.best_residual(), 1e-12);
    EXPECT_TRUE(std::isfinite(e.best_residual()));
  }
}

TEST(Lanczos, DeterministicGivenStream) {
  auto g = derive_stream({10, 0});
  auto const a = adjacency(sample_bipartite(100, 120, 0.1, g));
  auto r1 = derive_stream({10, 1});
  auto r2 = derive_stream({10, 1});
  auto const s1 = lanczos_extreme(a, {}, r1);
  auto const s2 = lanczos_extreme(a, {}, r2);
  EXPECT_EQ(s1.mu1, s2.mu1);
  EXPECT_EQ(s1.mu2, s2.mu2);
  EXPECT_EQ(s1.iterations, s2.iterations);
}

TEST(Lanczos, BipartiteMuAbsEqualsMu1) {
  auto r = derive_stream({11, 0});
  auto const a = adjacency(sample_bipartite(400, 500, 0.05, r));
  auto const s = lanczos_extreme(a, {}, r);
  EXPECT_NEAR(s.mu_min, -s.mu1, 1e-8);
  EXPECT_NEAR(s.mu_abs, s.mu1, 1e-8);
  EXPECT_NEAR(s.mu_second_last, -s.mu2, 1e-8);
}

TEST(Lanczos, InvalidArguments) {
  auto r = derive_stream({12, 0});
  auto const m = SparseSymMatrix::from_triplets(10, {});
  EXPECT_THROW(lanczos_extreme(m, {0, 1e-8, 0}, r), domain_error);
  EXPECT_THROW(lanczos_extreme(m, {2, 0.0, 0}, r), domain_error);
  EXPECT_THROW(lanczos_extreme(SparseSymMatrix(), {}, r), domain_error);
}
