#pragma once

#include <algorithm>
#include <vector>

#include <Eigen/Dense>

#include "bigap/errors.hpp"
#include "bigap/sparse_matrix.hpp"

namespace bigap {

inline constexpr std::size_t default_oracle_cap = 1024;

// All eigenvalues, ascending, via a dense symmetric eigendecomposition.
inline std::vector<double> dense_eig(Eigen::MatrixXd const& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw convergence_error("dense symmetric eigensolver failed", 0.0);
  }
  auto const& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<double> dense_eig(SparseSymMatrix const& m,
                                     std::size_t cap = default_oracle_cap) {
  if (m.dim() > cap) throw oracle_cap_error(m.dim(), cap);
  return dense_eig(m.to_dense());
}

// Ascending -> descending (the mu_1 >= mu_2 >= ... ordering) and back.
inline std::vector<double> reversed(std::vector<double> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace bigap
