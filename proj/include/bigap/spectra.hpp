#pragma once

// Spectral bookkeeping on top of the solvers: the normalized adjacency
// operator, the bipartite symmetry and negation checks, and the residual of
// replacing D^{-1/2} A D^{-1/2} by a scalar multiple of A.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "bigap/dense_eig.hpp"
#include "bigap/errors.hpp"
#include "bigap/graph.hpp"
#include "bigap/lanczos.hpp"
#include "bigap/sparse_matrix.hpp"
#include "bigap/spectral_summary.hpp"

namespace bigap {

enum class IsolatedPolicy {
  strict,   // an isolated vertex is an error
  lenient,  // isolated rows/columns are zero, contributing eigenvalue 0
};

struct NormalizedAdjacency {
  SparseSymMatrix base;  // D^{-1/2} A D^{-1/2}
  IsolatedPolicy policy = IsolatedPolicy::strict;
};

namespace detail {

inline std::string vertex_label(std::size_t global, std::size_t n1) {
  return global < n1 ? "u" + std::to_string(global) + " (left)"
                     : "v" + std::to_string(global - n1) + " (right)";
}

}  // namespace detail

inline NormalizedAdjacency normalized_adjacency(BipartiteGraph const& g,
                                                IsolatedPolicy policy = IsolatedPolicy::strict) {
  auto const deg = g.degrees();
  if (policy == IsolatedPolicy::strict) {
    for (std::size_t v = 0; v < deg.size(); ++v) {
      if (deg[v] == 0) throw isolated_vertex_error(v, detail::vertex_label(v, g.n1()));
    }
  }
  std::vector<Triplet> t;
  t.reserve(2 * g.edge_count());
  auto const n1 = g.n1();
  for (auto const& e : g.edges()) {
    std::size_t const a = e.left;
    std::size_t const b = n1 + e.right;
    double const w = 1.0 / std::sqrt(static_cast<double>(deg[a]) * static_cast<double>(deg[b]));
    t.push_back({a, b, w});
    t.push_back({b, a, w});
  }
  return {SparseSymMatrix::from_triplets(g.vertex_count(), std::move(t)), policy};
}

// max_{i != 1, n} |mu_i(G) - 1| from normalized-adjacency eigenvalues sorted
// descending. Since 1 - mu_i(G) = lambda_{n+1-i}, this is max(|lambda_2|, |lambda_{n-1}|).
inline double normalized_gap(std::span<double const> descending) {
  if (descending.size() < 3) return 0.0;
  return std::max(std::abs(descending[1]), std::abs(descending[descending.size() - 2]));
}

struct SymmetryCheck {
  bool ok = false;
  double defect = 0.0;
};

// Sorted eigenvalue list vs. its negation: pairs the i-th smallest with the i-th largest.
inline SymmetryCheck check_bipartite_symmetry(std::span<double const> sorted_eigs, double tol) {
  SymmetryCheck c;
  auto const n = sorted_eigs.size();
  for (std::size_t i = 0; i < n; ++i) {
    c.defect = std::max(c.defect, std::abs(sorted_eigs[i] + sorted_eigs[n - 1 - i]));
  }
  c.ok = c.defect <= tol;
  return c;
}

// mu_i(-M) == -mu_{n+1-i}(M) for all i; both lists descending.
inline SymmetryCheck negation_spectrum_check(std::span<double const> eigs,
                                             std::span<double const> eigs_neg, double tol) {
  if (eigs.size() != eigs_neg.size()) {
    throw domain_error("negation_spectrum_check: length mismatch (" +
                       std::to_string(eigs.size()) + " vs " + std::to_string(eigs_neg.size()) +
                       ")");
  }
  SymmetryCheck c;
  auto const n = eigs.size();
  for (std::size_t i = 0; i < n; ++i) {
    c.defect = std::max(c.defect, std::abs(eigs_neg[i] + eigs[n - 1 - i]));
  }
  c.ok = c.defect <= tol;
  return c;
}

// K = A / sqrt(n1 n2 p^2) - D^{-1/2} A D^{-1/2}. `norm` is the entrywise
// maximum |K_ij|; `row_sum_norm` is the induced infinity norm. The `scaled`
// variants are multiplied by sqrt(n1 n2 p^2).
struct KResidual {
  double norm = 0.0;
  double scaled = 0.0;
  double row_sum_norm = 0.0;
  double row_sum_scaled = 0.0;
};

inline KResidual k_residual(BipartiteGraph const& g, double p) {
  check_probability(p);
  if (p == 0.0) throw domain_error("k_residual: p must be positive");
  auto const deg = g.degrees();
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if (deg[v] == 0) throw isolated_vertex_error(v, detail::vertex_label(v, g.n1()));
  }
  double const scale = p * std::sqrt(static_cast<double>(g.n1()) * static_cast<double>(g.n2()));
  auto const n1 = g.n1();
  std::vector<double> row_sum(deg.size(), 0.0);
  KResidual r;
  for (auto const& e : g.edges()) {
    std::size_t const a = e.left;
    std::size_t const b = n1 + e.right;
    double const normalized =
        1.0 / std::sqrt(static_cast<double>(deg[a]) * static_cast<double>(deg[b]));
    double const k = std::abs(1.0 / scale - normalized);
    r.norm = std::max(r.norm, k);
    row_sum[a] += k;
    row_sum[b] += k;
  }
  r.row_sum_norm = row_sum.empty() ? 0.0 : *std::max_element(row_sum.begin(), row_sum.end());
  r.scaled = r.norm * scale;
  r.row_sum_scaled = r.row_sum_norm * scale;
  return r;
}

}  // namespace bigap
