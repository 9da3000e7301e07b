#pragma once

// Monte Carlo runner: one seeded G(n1,n2,p) sample per trial, its extreme
// spectra, and the bound values they are compared against.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bigap/bounds.hpp"
#include "bigap/dense_eig.hpp"
#include "bigap/errors.hpp"
#include "bigap/graph.hpp"
#include "bigap/lanczos.hpp"
#include "bigap/random.hpp"
#include "bigap/sparse_matrix.hpp"
#include "bigap/spectra.hpp"

namespace bigap {

enum class SpectrumMode { adjacency, normalized, both };

inline bool includes_adjacency(SpectrumMode m) { return m != SpectrumMode::normalized; }
inline bool includes_normalized(SpectrumMode m) { return m != SpectrumMode::adjacency; }

inline char const* to_string(SpectrumMode m) {
  switch (m) {
    case SpectrumMode::adjacency: return "adjacency";
    case SpectrumMode::normalized: return "normalized";
    case SpectrumMode::both: return "both";
  }
  return "?";
}

inline std::optional<SpectrumMode> parse_mode(std::string_view s) {
  if (s == "adjacency") return SpectrumMode::adjacency;
  if (s == "normalized") return SpectrumMode::normalized;
  if (s == "both") return SpectrumMode::both;
  return std::nullopt;
}

struct ExperimentConfig {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double p = 0.0;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  double slack = 1.0;          // stands in for the [1 + o(1)] factor
  double tol = 1e-8;
  std::size_t max_iter = 0;    // 0: solver default min(n, 400)
  SpectrumMode mode = SpectrumMode::adjacency;
  std::size_t oracle_cap = default_oracle_cap;
  std::size_t workers = 0;     // 0: hardware concurrency

  void validate() const {
    if (n1 < 1) throw domain_error("n1 must be >= 1");
    if (n2 < n1) throw domain_error("n2 must be >= n1");
    if (!(p > 0.0 && p <= 1.0)) throw domain_error("p must lie in (0,1]");
    if (trials < 1) throw domain_error("trials must be >= 1");
    if (!(slack >= 1.0) || !std::isfinite(slack)) throw domain_error("slack must be >= 1");
    if (!(tol > 0.0)) throw domain_error("tol must be positive");
  }
};

struct TrialRecord {
  static constexpr double missing = std::numeric_limits<double>::quiet_NaN();

  std::uint64_t trial_index = 0;
  std::uint64_t seed = 0;  // derived per-trial seed
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double p = 0.0;
  std::size_t m = 0;
  double mu1 = missing;
  double mu2 = missing;
  double mu_min = missing;
  double theorem_bound = missing;
  double ratio = missing;  // max(mu2, 0) / (slack * theorem_bound)
  double norm_gap = missing;
  bool norm_partial = false;  // norm_gap from extreme normalized eigenvalues only
  double norm_bound = missing;
  std::optional<double> rel_dev;
  bool regime_left = false;
  bool regime_right = false;
  double residual = 0.0;
  double ms = 0.0;
  std::optional<std::string> error;

  bool ok() const noexcept { return !error.has_value(); }
};

inline TrialRecord run_trial(ExperimentConfig const& cfg, std::uint64_t trial_index) {
  using clock = std::chrono::steady_clock;
  auto const start = clock::now();

  TrialRecord rec;
  SeedSpec const spec{cfg.master_seed, trial_index};
  rec.trial_index = trial_index;
  rec.seed = spec.derived_seed();
  rec.n1 = cfg.n1;
  rec.n2 = cfg.n2;
  rec.p = cfg.p;
  auto stream = derive_stream(spec);

  auto const g = sample_bipartite(cfg.n1, cfg.n2, cfg.p, stream);
  rec.m = g.edge_count();
  rec.rel_dev = degree_stats(g, cfg.p).rel_dev;
  auto const regime = regime_check(static_cast<double>(cfg.n1), static_cast<double>(cfg.n2), cfg.p);
  rec.regime_left = regime.left;
  rec.regime_right = regime.right;
  rec.theorem_bound = theorem_bound(static_cast<double>(cfg.n1), static_cast<double>(cfg.n2), cfg.p);
  rec.norm_bound =
      normalized_gap_bound(static_cast<double>(cfg.n1), static_cast<double>(cfg.n2), cfg.p);

  LanczosOptions const opt{2, cfg.tol, cfg.max_iter};
  try {
    if (includes_adjacency(cfg.mode)) {
      auto const s = lanczos_extreme(adjacency(g), opt, stream);
      rec.mu1 = s.mu1;
      rec.mu2 = s.mu2;
      rec.mu_min = s.mu_min;
      rec.residual = std::max(rec.residual, s.residual);
      // A 1x1 bipartite graph has mu2 = -1; the ratio is a nonnegative quantity.
      rec.ratio = std::max(rec.mu2, 0.0) / (cfg.slack * rec.theorem_bound);
    }
    if (includes_normalized(cfg.mode)) {
      auto const norm = normalized_adjacency(g, IsolatedPolicy::strict);
      if (g.vertex_count() <= cfg.oracle_cap) {
        auto const eigs = reversed(dense_eig(norm.base, cfg.oracle_cap));
        rec.norm_gap = normalized_gap(eigs);
      } else {
        auto const s = lanczos_extreme(norm.base, opt, stream);
        rec.norm_gap = std::max(std::abs(s.mu2), std::abs(s.mu_second_last));
        rec.norm_partial = true;
        rec.residual = std::max(rec.residual, s.residual);
      }
    }
  } catch (isolated_vertex_error const& e) {
    rec.error = e.what();
  } catch (convergence_error const& e) {
    rec.error = e.what();
    rec.residual = e.best_residual();
  }
  if (rec.error) {
    rec.mu1 = rec.mu2 = rec.mu_min = rec.ratio = rec.norm_gap = TrialRecord::missing;
  }
  rec.ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
  return rec;
}

struct Summary {
  std::size_t trials = 0;
  std::size_t excluded = 0;
  double satisfied_fraction = TrialRecord::missing;  // mu2 <= slack * theorem_bound
  double ratio_min = TrialRecord::missing;
  double ratio_median = TrialRecord::missing;
  double ratio_max = TrialRecord::missing;
  double norm_satisfied_fraction = TrialRecord::missing;  // norm_gap <= slack * norm_bound
  std::size_t norm_partial = 0;
  double mean_rel_dev = TrialRecord::missing;
};

inline Summary summarize(std::span<TrialRecord const> records, double slack) {
  Summary s;
  s.trials = records.size();
  std::vector<double> ratios;
  std::size_t included = 0;
  std::size_t satisfied = 0;
  std::size_t norm_counted = 0;
  std::size_t norm_satisfied = 0;
  double rel_sum = 0.0;
  std::size_t rel_count = 0;
  for (auto const& r : records) {
    if (r.rel_dev) {
      rel_sum += *r.rel_dev;
      ++rel_count;
    }
    if (!r.ok()) {
      ++s.excluded;
      continue;
    }
    ++included;
    if (!std::isnan(r.mu2)) {
      ratios.push_back(r.ratio);
      if (r.mu2 <= slack * r.theorem_bound) ++satisfied;
    }
    if (!std::isnan(r.norm_gap)) {
      ++norm_counted;
      if (r.norm_gap <= slack * r.norm_bound) ++norm_satisfied;
      if (r.norm_partial) ++s.norm_partial;
    }
  }
  if (!ratios.empty()) {
    s.satisfied_fraction = static_cast<double>(satisfied) / static_cast<double>(ratios.size());
    std::sort(ratios.begin(), ratios.end());
    s.ratio_min = ratios.front();
    s.ratio_max = ratios.back();
    auto const h = ratios.size() / 2;
    s.ratio_median = ratios.size() % 2 ? ratios[h] : 0.5 * (ratios[h - 1] + ratios[h]);
  } else if (included == 0 && !records.empty()) {
    s.satisfied_fraction = 0.0;
  }
  if (norm_counted > 0) {
    s.norm_satisfied_fraction =
        static_cast<double>(norm_satisfied) / static_cast<double>(norm_counted);
  }
  if (rel_count > 0) s.mean_rel_dev = rel_sum / static_cast<double>(rel_count);
  return s;
}

struct ExperimentResult {
  std::vector<TrialRecord> records;  // ordered by trial_index
  Summary summary;
};

inline std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// Trials are independent; any number of workers produces the same records.
inline ExperimentResult run_experiment(ExperimentConfig const& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.records.resize(cfg.trials);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cfg.trials; i = next++) {
      try {
        result.records[i] = run_trial(cfg, i);
      } catch (std::exception const& e) {
        TrialRecord rec;
        rec.trial_index = i;
        rec.seed = SeedSpec{cfg.master_seed, i}.derived_seed();
        rec.n1 = cfg.n1;
        rec.n2 = cfg.n2;
        rec.p = cfg.p;
        rec.error = e.what();
        result.records[i] = std::move(rec);
      }
    }
  };
  auto const workers = std::min(resolve_workers(cfg.workers), cfg.trials);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  result.summary = summarize(result.records, cfg.slack);
  return result;
}

// ---------------------------------------------------------------------------
// Proof-chain verification at oracle scale.

struct ProofChainConfig {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double p = 0.0;  // [0, 1]
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::size_t oracle_cap = default_oracle_cap;
};

inline constexpr double weyl_tolerance = 1e-8;
inline constexpr double negation_tolerance = 1e-10;
inline constexpr double symmetry_tolerance = 1e-9;

struct ProofChainTrial {
  std::uint64_t trial_index = 0;
  // (a) A(G') = A1' + A + A3' exactly, and the cross block is A(G)
  bool blocks_ok = false;
  // (b) mu2(A) <= mu2(A(G')) + mu1(-A1') + mu1(-A3'), plus the full Weyl
  //     sandwich for A = A(G') + (-(A1' + A3'))
  double chain_lhs = 0.0;
  double chain_rhs = 0.0;
  double weyl_violation = 0.0;
  bool weyl_ok = false;
  // (c) mu_i(-A1') = -mu_{n+1-i}(A1')
  double negation_defect = 0.0;
  bool negation_ok = false;
  // (d) spec(A) symmetric about 0
  double symmetry_defect = 0.0;
  bool symmetry_ok = false;
  // (e) K residual; empty when the graph has an isolated vertex or p = 0
  std::optional<KResidual> k;
  bool k_ok = false;

  bool all_ok() const noexcept {
    return blocks_ok && weyl_ok && negation_ok && symmetry_ok && k_ok;
  }
};

struct ProofChainReport {
  std::vector<ProofChainTrial> trials;

  std::size_t count(bool ProofChainTrial::*item) const {
    return static_cast<std::size_t>(
        std::count_if(trials.begin(), trials.end(), [&](auto const& t) { return t.*item; }));
  }
  std::size_t k_defined() const {
    return static_cast<std::size_t>(std::count_if(
        trials.begin(), trials.end(), [](auto const& t) { return t.k.has_value(); }));
  }
  bool all_passed() const {
    return std::all_of(trials.begin(), trials.end(), [](auto const& t) { return t.all_ok(); });
  }
};

inline ProofChainTrial verify_proof_chain_trial(ProofChainConfig const& cfg,
                                                std::uint64_t trial_index) {
  ProofChainTrial t;
  t.trial_index = trial_index;
  auto stream = derive_stream({cfg.master_seed, trial_index});
  auto const g = sample_bipartite(cfg.n1, cfg.n2, cfg.p, stream);
  auto const g_prime = embed_union(g, cfg.p, stream);

  auto const a = adjacency(g);
  auto const a_prime = adjacency_full(g_prime);
  auto const parts = split_blocks(a_prime, cfg.n1);
  t.blocks_ok = (parts.left + parts.cross + parts.right) == a_prime && parts.cross == a &&
                cross_part(g_prime, cfg.n1) == g;

  auto const cap = cfg.oracle_cap;
  auto const spec_a = reversed(dense_eig(a, cap));
  auto const spec_prime = reversed(dense_eig(a_prime, cap));
  auto const spec_left = reversed(dense_eig(parts.left, cap));
  auto const spec_neg_left = reversed(dense_eig(parts.left.negated(), cap));
  auto const spec_neg_right = reversed(dense_eig(parts.right.negated(), cap));
  auto const spec_neg_sides = reversed(dense_eig((parts.left + parts.right).negated(), cap));

  auto const at = [](std::vector<double> const& v, std::size_t i) {
    return i < v.size() ? v[i] : 0.0;
  };
  t.chain_lhs = at(spec_a, 1);
  t.chain_rhs = at(spec_prime, 1) + at(spec_neg_left, 0) + at(spec_neg_right, 0);
  auto const weyl = weyl_check(spec_prime, spec_neg_sides, spec_a, weyl_tolerance);
  t.weyl_violation = std::max(weyl.worst_violation, t.chain_lhs - t.chain_rhs);
  t.weyl_ok = weyl.ok && t.chain_lhs <= t.chain_rhs + weyl_tolerance;

  auto const neg = negation_spectrum_check(spec_left, spec_neg_left, negation_tolerance);
  t.negation_defect = neg.defect;
  t.negation_ok = neg.ok;

  auto const sym = check_bipartite_symmetry(spec_a, symmetry_tolerance);
  t.symmetry_defect = sym.defect;
  t.symmetry_ok = sym.ok;

  try {
    t.k = k_residual(g, cfg.p);
    t.k_ok = std::isfinite(t.k->norm) && t.k->norm >= 0.0;
  } catch (domain_error const&) {
    // isolated vertex or p = 0: the residual is undefined, which is not a failure
    t.k_ok = true;
  }
  return t;
}

inline ProofChainReport verify_proof_chain(ProofChainConfig const& cfg) {
  check_probability(cfg.p);
  if (cfg.n1 < 1 || cfg.n2 < 1) throw domain_error("verify_proof_chain: n1, n2 must be >= 1");
  if (cfg.n1 + cfg.n2 > cfg.oracle_cap) throw oracle_cap_error(cfg.n1 + cfg.n2, cfg.oracle_cap);
  ProofChainReport report;
  report.trials.reserve(cfg.trials);
  for (std::size_t i = 0; i < cfg.trials; ++i) report.trials.push_back(verify_proof_chain_trial(cfg, i));
  return report;
}

}  // namespace bigap
