#pragma once

// Shared helpers for the unit tests: independent probability oracles and
// random instance generators.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "bigap/graph.hpp"
#include "bigap/random.hpp"
#include "bigap/sparse_matrix.hpp"

namespace bigap::testutil {

inline double binomial_pmf(int n, int k, double p) {
  double const log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(log_choose + k * std::log(p) + (n - k) * std::log1p(-p));
}

// Random symmetric matrix with entries uniform in [-1, 1].
inline Eigen::MatrixXd random_symmetric(std::size_t n, RandomStream& r) {
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double const v = 2.0 * r.uniform() - 1.0;
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

// Bipartite graph with sides in [lo, hi] and p in [p_lo, p_hi].
inline BipartiteGraph random_bipartite(RandomStream& r, std::size_t lo, std::size_t hi,
                                       double p_lo, double p_hi) {
  auto pick = [&](std::size_t a, std::size_t b) {
    return a + static_cast<std::size_t>(r() % (b - a + 1));
  };
  auto const n1 = pick(lo, hi);
  auto const n2 = pick(lo, hi);
  double const p = p_lo + (p_hi - p_lo) * r.uniform();
  return sample_bipartite(n1, n2, p, r);
}

}  // namespace bigap::testutil
