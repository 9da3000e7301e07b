#pragma once

// Symmetric tridiagonal eigenproblem by implicit QL with Wilkinson-style
// shifts. Only the requested rows of the eigenvector matrix are accumulated,
// so tracking a single row costs O(n^2) instead of O(n^3).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "bigap/errors.hpp"

namespace bigap {

struct TridiagonalEigen {
  std::vector<double> values;               // ascending
  std::vector<std::vector<double>> rows;    // rows[r][i]: component tracked_row[r] of eigenvector i
};

// diag has n entries, offdiag has n-1 (offdiag[i] = T(i, i+1)).
inline TridiagonalEigen tridiagonal_eigen(std::span<double const> diag,
                                          std::span<double const> offdiag,
                                          std::span<std::size_t const> tracked_rows = {}) {
  int const n = static_cast<int>(diag.size());
  if (n > 0 && offdiag.size() + 1 != diag.size()) {
    throw domain_error("tridiagonal_eigen: offdiag must have n-1 entries");
  }
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());

  std::vector<std::vector<double>> z(tracked_rows.size(), std::vector<double>(d.size(), 0.0));
  for (std::size_t r = 0; r < tracked_rows.size(); ++r) {
    if (tracked_rows[r] >= d.size()) throw domain_error("tridiagonal_eigen: tracked row out of range");
    z[r][tracked_rows[r]] = 1.0;
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        double const dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 100) {
        throw convergence_error("tridiagonal QL did not converge", std::abs(e[l]));
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        double f = s * e[i];
        double const b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (auto& row : z) {
          f = row[i + 1];
          row[i + 1] = s * row[i] + c * f;
          row[i] = c * row[i] - s * f;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.values.reserve(d.size());
  for (auto k : order) out.values.push_back(d[k]);
  out.rows.resize(z.size());
  for (std::size_t r = 0; r < z.size(); ++r) {
    out.rows[r].reserve(d.size());
    for (auto k : order) out.rows[r].push_back(z[r][k]);
  }
  return out;
}

}  // namespace bigap
