#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "bigap/errors.hpp"
#include "bigap/graph.hpp"

namespace bigap {

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

// Square matrix in compressed sparse row form. Both triangles of a symmetric
// matrix are stored; column indices are sorted within each row and unique.
class SparseSymMatrix {
 public:
  SparseSymMatrix() : row_ptr_(1, 0) {}

  // Duplicate (row, col) entries are summed. Symmetry is not enforced here;
  // see is_symmetric().
  static SparseSymMatrix from_triplets(std::size_t n, std::vector<Triplet> entries) {
    for (auto const& t : entries) {
      if (t.row >= n || t.col >= n) throw domain_error("triplet index out of range");
    }
    std::sort(entries.begin(), entries.end(), [](Triplet const& x, Triplet const& y) {
      return std::tie(x.row, x.col) < std::tie(y.row, y.col);
    });
    SparseSymMatrix m;
    m.n_ = n;
    m.row_ptr_.assign(n + 1, 0);
    m.col_idx_.reserve(entries.size());
    m.values_.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
      auto const& t = entries[k];
      if (!m.col_idx_.empty() && k > 0 && entries[k - 1].row == t.row &&
          entries[k - 1].col == t.col) {
        m.values_.back() += t.value;
        continue;
      }
      m.col_idx_.push_back(static_cast<std::uint32_t>(t.col));
      m.values_.push_back(t.value);
      ++m.row_ptr_[t.row + 1];
    }
    for (std::size_t i = 0; i < n; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
    return m;
  }

  static SparseSymMatrix diagonal(std::span<double const> diag) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < diag.size(); ++i) t.push_back({i, i, diag[i]});
    return from_triplets(diag.size(), std::move(t));
  }

  static SparseSymMatrix from_dense(Eigen::MatrixXd const& dense) {
    if (dense.rows() != dense.cols()) throw domain_error("from_dense: matrix not square");
    std::vector<Triplet> t;
    auto const n = static_cast<std::size_t>(dense.rows());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (dense(i, j) != 0.0) t.push_back({i, j, dense(i, j)});
    return from_triplets(n, std::move(t));
  }

  std::size_t dim() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  std::span<std::size_t const> row_ptr() const noexcept { return row_ptr_; }
  std::span<std::uint32_t const> col_idx() const noexcept { return col_idx_; }
  std::span<double const> values() const noexcept { return values_; }

  std::span<std::uint32_t const> row_cols(std::size_t i) const noexcept {
    return std::span(col_idx_).subspan(row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]);
  }
  std::span<double const> row_values(std::size_t i) const noexcept {
    return std::span(values_).subspan(row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]);
  }

  double at(std::size_t i, std::size_t j) const {
    auto const cols = row_cols(i);
    auto const it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
  }

  // y = M x
  void multiply(std::span<double const> x, std::span<double> y) const {
    assert(x.size() == n_ && y.size() == n_);
    for (std::size_t i = 0; i < n_; ++i) {
      double acc = 0.0;
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) acc += values_[k] * x[col_idx_[k]];
      y[i] = acc;
    }
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_),
                                              static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
        d(static_cast<Eigen::Index>(i), col_idx_[k]) = values_[k];
    return d;
  }

  // (i,j) stored iff (j,i) stored, with values within tol.
  bool is_symmetric(double tol = 0.0) const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
        std::size_t const j = col_idx_[k];
        auto const cols = row_cols(j);
        auto const it = std::lower_bound(cols.begin(), cols.end(), i);
        if (it == cols.end() || *it != i) return false;
        if (std::abs(row_values(j)[static_cast<std::size_t>(it - cols.begin())] - values_[k]) > tol)
          return false;
      }
    }
    return true;
  }

  SparseSymMatrix negated() const {
    SparseSymMatrix m = *this;
    for (auto& v : m.values_) v = -v;
    return m;
  }

  // Maximum absolute row sum.
  double inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (auto v : row_values(i)) s += std::abs(v);
      best = std::max(best, s);
    }
    return best;
  }

  // Entrywise sum; explicit zeros produced by cancellation are dropped.
  friend SparseSymMatrix operator+(SparseSymMatrix const& x, SparseSymMatrix const& y) {
    if (x.n_ != y.n_) throw domain_error("dimension mismatch in matrix sum");
    std::vector<Triplet> t;
    t.reserve(x.nnz() + y.nnz());
    for (auto const* m : {&x, &y})
      for (std::size_t i = 0; i < m->n_; ++i)
        for (std::size_t k = m->row_ptr_[i]; k < m->row_ptr_[i + 1]; ++k)
          t.push_back({i, m->col_idx_[k], m->values_[k]});
    auto sum = from_triplets(x.n_, std::move(t));
    return sum.pruned();
  }

  SparseSymMatrix pruned() const {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
        if (values_[k] != 0.0) t.push_back({i, col_idx_[k], values_[k]});
    return from_triplets(n_, std::move(t));
  }

  // Exact structural and value equality.
  friend bool operator==(SparseSymMatrix const&, SparseSymMatrix const&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> col_idx_;
  std::vector<double> values_;
};

// A(G) of a bipartite graph in the [left | right] layout.
inline SparseSymMatrix adjacency(BipartiteGraph const& g) {
  std::vector<Triplet> t;
  t.reserve(2 * g.edge_count());
  auto const n1 = g.n1();
  for (auto const& e : g.edges()) {
    t.push_back({e.left, n1 + e.right, 1.0});
    t.push_back({n1 + e.right, e.left, 1.0});
  }
  return SparseSymMatrix::from_triplets(g.vertex_count(), std::move(t));
}

inline SparseSymMatrix adjacency_full(Graph const& g) {
  std::vector<Triplet> t;
  t.reserve(2 * g.edge_count());
  for (auto const& e : g.edges()) {
    t.push_back({e.a, e.b, 1.0});
    t.push_back({e.b, e.a, 1.0});
  }
  return SparseSymMatrix::from_triplets(g.vertex_count(), std::move(t));
}

struct BlockSplit {
  SparseSymMatrix left;   // top-left block, zero-padded
  SparseSymMatrix cross;  // both off-diagonal blocks
  SparseSymMatrix right;  // bottom-right block, zero-padded
};

// Splits M = [[B1, C], [C^T, B3]] (B1 is n1 x n1) into three full-size matrices
// whose entrywise sum is M.
inline BlockSplit split_blocks(SparseSymMatrix const& m, std::size_t n1) {
  if (n1 > m.dim()) throw domain_error("split_blocks: n1 exceeds dimension");
  std::vector<Triplet> left, cross, right;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    auto const cols = m.row_cols(i);
    auto const vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::size_t const j = cols[k];
      bool const li = i < n1;
      bool const lj = j < n1;
      auto& dst = (li && lj) ? left : (!li && !lj) ? right : cross;
      dst.push_back({i, j, vals[k]});
    }
  }
  return {SparseSymMatrix::from_triplets(m.dim(), std::move(left)),
          SparseSymMatrix::from_triplets(m.dim(), std::move(cross)),
          SparseSymMatrix::from_triplets(m.dim(), std::move(right))};
}

}  // namespace bigap
