#pragma once

// Closed-form bound evaluators. None of them include the asymptotic
// [1 + o(1)] factor; callers multiply by an explicit slack.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "bigap/errors.hpp"

namespace bigap {

namespace detail {

inline void require_positive_p(double p, char const* who) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw domain_error(std::string(who) + ": p must lie in (0,1], got " + std::to_string(p));
  }
}

inline void require_count(double n, char const* who) {
  if (!(n >= 1.0)) throw domain_error(std::string(who) + ": vertex count must be >= 1");
}

}  // namespace detail

// 2 (sqrt((n1+n2)p) + sqrt(n1 p) + sqrt(n2 p)): the second-eigenvalue bound for G(n1,n2,p).
inline double theorem_bound(double n1, double n2, double p) {
  detail::require_count(n1, "theorem_bound");
  detail::require_count(n2, "theorem_bound");
  detail::require_positive_p(p, "theorem_bound");
  return 2.0 * (std::sqrt((n1 + n2) * p) + std::sqrt(n1 * p) + std::sqrt(n2 * p));
}

// 2 sqrt(np): the Furedi-Komlos scale of mu(A) for G(n,p).
inline double fk_bound(double n, double p) {
  detail::require_count(n, "fk_bound");
  detail::require_positive_p(p, "fk_bound");
  return 2.0 * std::sqrt(n * p);
}

// sqrt(dL - 1) + sqrt(dR - 1): bipartite Alon-Boppana value for (dL,dR)-biregular graphs.
inline double ab_bipartite(double d_left, double d_right) {
  if (!(d_left >= 1.0) || !(d_right >= 1.0)) {
    throw domain_error("ab_bipartite: degrees must be >= 1");
  }
  return std::sqrt(d_left - 1.0) + std::sqrt(d_right - 1.0);
}

// 2 (sqrt(1/(n1 p) + 1/(n2 p)) + 1/sqrt(n1 p) + 1/sqrt(n2 p)).
// Equals theorem_bound / sqrt(n1 n2 p^2).
inline double normalized_gap_bound(double n1, double n2, double p) {
  double const a = n1 * p;
  double const b = n2 * p;
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw domain_error("normalized_gap_bound: n1*p and n2*p must be positive");
  }
  return 2.0 * (std::sqrt(1.0 / a + 1.0 / b) + 1.0 / std::sqrt(a) + 1.0 / std::sqrt(b));
}

struct WeylCheck {
  bool ok = false;
  double worst_violation = 0.0;  // 0 when both inequalities hold exactly
};

// mu_i(A) + mu_n(B) <= mu_i(A+B) <= mu_i(A) + mu_1(B) for every i.
// All three lists full spectra, sorted descending.
inline WeylCheck weyl_check(std::span<double const> eigs_a, std::span<double const> eigs_b,
                            std::span<double const> eigs_sum, double tol) {
  if (eigs_a.size() != eigs_b.size() || eigs_a.size() != eigs_sum.size()) {
    throw domain_error("weyl_check: spectra must have equal length");
  }
  WeylCheck c;
  if (eigs_a.empty()) {
    c.ok = true;
    return c;
  }
  double const b_max = eigs_b.front();
  double const b_min = eigs_b.back();
  for (std::size_t i = 0; i < eigs_a.size(); ++i) {
    double const lower = eigs_a[i] + b_min - eigs_sum[i];
    double const upper = eigs_sum[i] - (eigs_a[i] + b_max);
    c.worst_violation = std::max({c.worst_violation, lower, upper});
  }
  c.ok = c.worst_violation <= tol;
  return c;
}

struct RegimeStatus {
  bool left = false;
  bool right = false;
};

// sqrt(n_i p) >= ln^3(n_i) per side; advisory only.
inline RegimeStatus regime_check(double n1, double n2, double p) {
  auto side = [p](double n) {
    if (!(n >= 1.0) || !(p >= 0.0)) return false;
    double const l = std::log(n);
    return std::sqrt(n * p) >= l * l * l;
  };
  return {side(n1), side(n2)};
}

}  // namespace bigap
