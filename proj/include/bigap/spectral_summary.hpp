#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace bigap {

// Extreme eigenvalues in the mu_1 >= mu_2 >= ... >= mu_n convention.
struct SpectralSummary {
  static constexpr double missing = std::numeric_limits<double>::quiet_NaN();

  double mu1 = missing;
  double mu2 = missing;
  double mu_second_last = missing;
  double mu_min = missing;
  double mu_abs = missing;  // max(|mu2|, |mu_min|)

  // Least strictly positive eigenvalue among those computed. Certified when
  // the computed set provably contains every eigenvalue above it.
  std::optional<double> mu_plus;
  bool mu_plus_certified = false;

  double residual = 0.0;    // max ||Mv - lambda v|| / ||v|| over reported pairs
  std::vector<double> top;     // descending from mu1
  std::vector<double> bottom;  // ascending from mu_min
  std::size_t dimension = 0;
  std::size_t iterations = 0;  // Krylov dimension; 0 for the dense path
  bool complete = false;       // every eigenvalue was computed
};

// Threshold below which an eigenvalue is treated as zero when locating mu_plus.
inline double zero_threshold(double scale, double tol) {
  return std::max(tol, 1e-9 * std::max(1.0, scale));
}

namespace detail {

inline void fill_derived(SpectralSummary& s, double zero_tol) {
  if (!s.top.empty()) s.mu1 = s.top[0];
  if (s.top.size() > 1) s.mu2 = s.top[1];
  if (!s.bottom.empty()) s.mu_min = s.bottom[0];
  if (s.bottom.size() > 1) s.mu_second_last = s.bottom[1];
  s.mu_abs = (s.dimension < 2) ? std::abs(s.mu_min)
                               : std::max(std::abs(s.mu2), std::abs(s.mu_min));

  s.mu_plus.reset();
  s.mu_plus_certified = false;
  if (s.complete) {
    for (auto it = s.bottom.begin(); it != s.bottom.end(); ++it) {
      if (*it > zero_tol) {
        s.mu_plus = *it;
        break;
      }
    }
    s.mu_plus_certified = true;
    return;
  }
  // Whole spectrum positive: the smallest eigenvalue is mu_plus.
  if (!s.bottom.empty() && s.bottom[0] > zero_tol) {
    s.mu_plus = s.bottom[0];
    s.mu_plus_certified = true;
    return;
  }
  // Walk down from mu1; certified once a non-positive value follows.
  for (std::size_t i = 0; i < s.top.size(); ++i) {
    if (s.top[i] > zero_tol) {
      s.mu_plus = s.top[i];
    } else {
      s.mu_plus_certified = s.mu_plus.has_value();
      break;
    }
  }
}

}  // namespace detail

// Summary from a full ascending spectrum (dense oracle path).
inline SpectralSummary summarize_spectrum(std::span<double const> ascending,
                                          std::size_t k_each_end = 2) {
  SpectralSummary s;
  s.dimension = ascending.size();
  s.complete = true;
  auto const k = std::min(k_each_end, ascending.size());
  for (std::size_t i = 0; i < k; ++i) s.top.push_back(ascending[ascending.size() - 1 - i]);
  double scale = 0.0;
  if (!ascending.empty()) scale = std::max(std::abs(ascending.front()), std::abs(ascending.back()));
  s.bottom.assign(ascending.begin(), ascending.end());  // full list while locating mu_plus
  detail::fill_derived(s, zero_threshold(scale, 0.0));
  s.bottom.resize(k);
  return s;
}

}  // namespace bigap
