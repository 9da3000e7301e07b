#pragma once

// Lanczos with full reorthogonalization for the extreme eigenvalues of a
// sparse symmetric matrix.
//
// The Krylov basis is kept explicitly and every new direction is
// orthogonalized twice against all previous ones. On breakdown (an invariant
// subspace was found) the iteration continues from a fresh random vector
// orthogonal to the basis, so exhausting the space yields every eigenvalue
// with its multiplicity. Convergence is judged on the Ritz residual estimate
// |beta_j * y_last| and confirmed with explicit residuals ||M x - theta x||.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bigap/dense_eig.hpp"
#include "bigap/errors.hpp"
#include "bigap/random.hpp"
#include "bigap/sparse_matrix.hpp"
#include "bigap/spectral_summary.hpp"
#include "bigap/tridiagonal.hpp"

namespace bigap {

struct LanczosOptions {
  std::size_t k_each_end = 2;
  double tol = 1e-8;
  std::size_t max_iter = 0;  // 0 selects min(n, 400)
};

namespace detail {

inline Eigen::VectorXd random_unit_orthogonal(Eigen::MatrixXd const& basis, Eigen::Index used,
                                              RandomStream& stream) {
  auto const n = basis.rows();
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 2.0 * stream.uniform() - 1.0;
  for (int pass = 0; pass < 2 && used > 0; ++pass) {
    Eigen::VectorXd const h = basis.leftCols(used).transpose() * v;
    v.noalias() -= basis.leftCols(used) * h;
  }
  double const norm = v.norm();
  if (norm > 0.0) v /= norm;
  return v;
}

// Indices (into the ascending Ritz list) of the k lowest and k highest values.
inline std::vector<std::size_t> extreme_indices(std::size_t count, std::size_t k) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < std::min(k, count); ++i) idx.push_back(i);
  for (std::size_t i = 0; i < std::min(k, count); ++i) {
    auto const j = count - 1 - i;
    if (std::find(idx.begin(), idx.end(), j) == idx.end()) idx.push_back(j);
  }
  return idx;
}

}  // namespace detail

inline SpectralSummary lanczos_extreme(SparseSymMatrix const& m, LanczosOptions const& opt,
                                       RandomStream& stream) {
  std::size_t const n = m.dim();
  std::size_t const k = opt.k_each_end;
  if (n < 1) throw domain_error("lanczos_extreme: empty matrix");
  if (k < 1) throw domain_error("lanczos_extreme: k_each_end must be >= 1");
  if (!(opt.tol > 0.0)) throw domain_error("lanczos_extreme: tol must be positive");
  if (n < 2 * k) {
    return summarize_spectrum(dense_eig(m.to_dense()), k);
  }

  std::size_t max_iter = opt.max_iter == 0 ? std::min<std::size_t>(n, 400) : opt.max_iter;
  max_iter = std::clamp(max_iter, 2 * k, n);

  auto const ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd basis(ni, static_cast<Eigen::Index>(max_iter));
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples basis columns j and j+1
  alpha.reserve(max_iter);
  beta.reserve(max_iter);

  double const matrix_scale = std::max(m.inf_norm(), 1.0);
  double const breakdown = 1e-12 * matrix_scale;

  basis.col(0) = detail::random_unit_orthogonal(basis, 0, stream);
  Eigen::VectorXd w(ni);
  double best_estimate = std::numeric_limits<double>::infinity();

  auto finish = [&](std::size_t dim) -> std::optional<SpectralSummary> {
    auto const tracked_all = [&] {
      std::vector<std::size_t> rows(dim);
      for (std::size_t i = 0; i < dim; ++i) rows[i] = i;
      return rows;
    }();
    auto const ritz = tridiagonal_eigen(std::span(alpha).first(dim),
                                        std::span(beta).first(dim - 1), tracked_all);
    auto const pick = detail::extreme_indices(dim, k);
    Eigen::VectorXd y(static_cast<Eigen::Index>(dim));
    Eigen::VectorXd mx(ni);
    double worst = 0.0;
    for (auto i : pick) {
      for (std::size_t r = 0; r < dim; ++r) y[static_cast<Eigen::Index>(r)] = ritz.rows[r][i];
      Eigen::VectorXd const x = basis.leftCols(static_cast<Eigen::Index>(dim)) * y;
      m.multiply(std::span<double const>(x.data(), n), std::span<double>(mx.data(), n));
      double const res = (mx - ritz.values[i] * x).norm() / x.norm();
      worst = std::max(worst, res);
    }
    if (worst > opt.tol) {
      best_estimate = std::min(best_estimate, worst);
      return std::nullopt;
    }
    SpectralSummary s;
    s.dimension = n;
    s.iterations = dim;
    s.residual = worst;
    s.complete = (dim == n);
    for (std::size_t i = 0; i < k; ++i) {
      s.top.push_back(ritz.values[dim - 1 - i]);
      s.bottom.push_back(ritz.values[i]);
    }
    double const scale = std::max(std::abs(s.top[0]), std::abs(s.bottom[0]));
    double const zt = zero_threshold(scale, opt.tol);
    if (s.complete) {
      s.bottom = ritz.values;
      detail::fill_derived(s, zt);
      s.bottom.resize(k);
    } else {
      detail::fill_derived(s, zt);
    }
    return s;
  };

  for (std::size_t j = 0; j < max_iter; ++j) {
    auto const cols = static_cast<Eigen::Index>(j + 1);
    auto const qj = basis.col(static_cast<Eigen::Index>(j));
    m.multiply(std::span<double const>(qj.data(), n), std::span<double>(w.data(), n));
    double const a = qj.dot(w);
    alpha.push_back(a);
    w -= a * qj;
    if (j > 0) w -= beta[j - 1] * basis.col(static_cast<Eigen::Index>(j - 1));
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd const h = basis.leftCols(cols).transpose() * w;
      w.noalias() -= basis.leftCols(cols) * h;
    }
    double b = w.norm();
    bool const broke_down = b <= breakdown;
    if (broke_down) b = 0.0;
    std::size_t const dim = j + 1;

    if (dim >= 2 * k || dim == n) {
      std::size_t const last = dim - 1;
      auto const ritz = tridiagonal_eigen(std::span(alpha).first(dim),
                                          std::span(beta).first(dim - 1),
                                          std::span<std::size_t const>(&last, 1));
      double estimate = 0.0;
      for (auto i : detail::extreme_indices(dim, k)) {
        estimate = std::max(estimate, std::abs(b * ritz.rows[0][i]));
      }
      best_estimate = std::min(best_estimate, estimate);
      if (estimate <= opt.tol || dim == n || dim == max_iter) {
        if (auto s = finish(dim)) return *s;
      }
    }
    if (dim == max_iter || dim == n) break;

    beta.push_back(b);
    if (broke_down) {
      auto v = detail::random_unit_orthogonal(basis, cols, stream);
      if (v.norm() == 0.0) break;
      basis.col(cols) = v;
    } else {
      basis.col(cols) = w / b;
    }
  }
  throw convergence_error("lanczos_extreme: no convergence within " + std::to_string(max_iter) +
                              " iterations (best residual " + std::to_string(best_estimate) + ")",
                          best_estimate);
}

}  // namespace bigap
