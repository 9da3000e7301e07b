#pragma once

// Command-line front end. run_cli() is separate from main() so the test suite
// can drive every subcommand in-process.
//
// Exit codes: 0 success, 1 I/O, 2 usage/config, 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bigap/bigap.hpp"

namespace bigap::cli {

enum ExitCode : int { ok = 0, io_failure = 1, usage = 2, numerical = 3 };

struct GlobalOptions {
  std::optional<std::size_t> workers;
  std::optional<double> tol;
  std::optional<double> slack;
  std::optional<std::size_t> oracle_cap;

  std::size_t resolved_workers() const {
    if (workers) return *workers;
    if (char const* env = std::getenv("BIGAP_WORKERS"); env && *env) {
      try {
        return parse_integer<std::size_t>(env);
      } catch (domain_error const&) {
        throw domain_error(std::string("BIGAP_WORKERS is not a count: '") + env + "'");
      }
    }
    return 0;
  }
};

inline void print_kv(std::ostream& out, std::string_view key, double v) {
  out << key << '=' << format_double(v) << '\n';
}

inline void print_summary(std::ostream& out, std::string_view prefix, SpectralSummary const& s) {
  auto key = [&](std::string_view k) { return std::string(prefix) + std::string(k); };
  print_kv(out, key("mu1"), s.mu1);
  print_kv(out, key("mu2"), s.mu2);
  print_kv(out, key("mu_second_last"), s.mu_second_last);
  print_kv(out, key("mu_min"), s.mu_min);
  print_kv(out, key("mu_abs"), s.mu_abs);
  out << key("mu_plus") << '=' << (s.mu_plus ? format_double(*s.mu_plus) : std::string("none"))
      << '\n';
  out << key("mu_plus_certified") << '=' << (s.mu_plus_certified ? 1 : 0) << '\n';
  print_kv(out, key("residual"), s.residual);
  out << key("method") << '=' << (s.iterations == 0 ? "dense" : "lanczos") << '\n';
}

inline SpectralSummary compute_summary(SparseSymMatrix const& m, std::size_t cap, double tol,
                                       std::uint64_t seed) {
  if (m.dim() <= cap) return summarize_spectrum(dense_eig(m, cap));
  auto stream = derive_stream({seed, 0});
  return lanczos_extreme(m, {2, tol, 0}, stream);
}

inline int cmd_sample(std::size_t n1, std::size_t n2, double p, std::uint64_t seed,
                      std::string const& out_path, std::ostream& out) {
  auto stream = derive_stream({seed, 0});
  auto const g = sample_bipartite(n1, n2, p, stream);
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw io_error("cannot open '" + out_path + "' for writing");
  write_edge_list(file, g);
  file.flush();
  if (!file) throw io_error("write to '" + out_path + "' failed");
  out << "n1=" << n1 << "\nn2=" << n2 << "\nm=" << g.edge_count() << "\nout=" << out_path << '\n';
  return ok;
}

inline int cmd_spectrum(std::string const& in_path, SpectrumMode mode, bool lenient,
                        std::uint64_t seed, GlobalOptions const& global, std::ostream& out) {
  std::ifstream file(in_path, std::ios::binary);
  if (!file) throw io_error("cannot open '" + in_path + "'");
  auto const g = read_bipartite_edge_list(file, in_path);
  auto const cap = global.oracle_cap.value_or(default_oracle_cap);
  auto const tol = global.tol.value_or(1e-8);
  out << "n1=" << g.n1() << "\nn2=" << g.n2() << "\nm=" << g.edge_count() << '\n';
  if (includes_adjacency(mode)) {
    print_summary(out, "", compute_summary(adjacency(g), cap, tol, seed));
  }
  if (includes_normalized(mode)) {
    auto const norm =
        normalized_adjacency(g, lenient ? IsolatedPolicy::lenient : IsolatedPolicy::strict);
    auto const s = compute_summary(norm.base, cap, tol, seed);
    print_summary(out, "norm_", s);
    print_kv(out, "norm_gap",
             s.dimension < 3 ? 0.0 : std::max(std::abs(s.mu2), std::abs(s.mu_second_last)));
  }
  return ok;
}

inline int cmd_verify(ProofChainConfig const& cfg, std::ostream& out) {
  auto const report = verify_proof_chain(cfg);
  auto const n = report.trials.size();
  auto frac = [&](bool ProofChainTrial::*item) {
    return std::to_string(report.count(item)) + "/" + std::to_string(n);
  };
  double worst_weyl = 0.0, worst_neg = 0.0, worst_sym = 0.0, max_k = 0.0, max_k_scaled = 0.0;
  for (auto const& t : report.trials) {
    worst_weyl = std::max(worst_weyl, t.weyl_violation);
    worst_neg = std::max(worst_neg, t.negation_defect);
    worst_sym = std::max(worst_sym, t.symmetry_defect);
    if (t.k) {
      max_k = std::max(max_k, t.k->norm);
      max_k_scaled = std::max(max_k_scaled, t.k->scaled);
    }
  }
  out << "trials=" << n << '\n'
      << "blocks=" << frac(&ProofChainTrial::blocks_ok) << '\n'
      << "weyl_chain=" << frac(&ProofChainTrial::weyl_ok) << '\n'
      << "negation=" << frac(&ProofChainTrial::negation_ok) << '\n'
      << "symmetry=" << frac(&ProofChainTrial::symmetry_ok) << '\n'
      << "k_residual=" << frac(&ProofChainTrial::k_ok) << '\n'
      << "k_defined=" << report.k_defined() << '/' << n << '\n';
  print_kv(out, "worst_weyl_violation", worst_weyl);
  print_kv(out, "worst_negation_defect", worst_neg);
  print_kv(out, "worst_symmetry_defect", worst_sym);
  print_kv(out, "max_k_residual", max_k);
  print_kv(out, "max_k_residual_scaled", max_k_scaled);
  out << "passed=" << (report.all_passed() ? 1 : 0) << '\n';
  return report.all_passed() ? ok : numerical;
}

inline int cmd_experiment(ExperimentConfig const& cfg, std::string const& out_path,
                          std::ostream& out) {
  auto const result = run_experiment(cfg);
  write_csv(result.records, result.summary, out_path);
  auto const& s = result.summary;
  print_kv(out, "satisfied_fraction", s.satisfied_fraction);
  print_kv(out, "ratio_median", s.ratio_median);
  out << "excluded=" << s.excluded << '\n' << "trials=" << s.trials << '\n';
  print_kv(out, "ratio_min", s.ratio_min);
  print_kv(out, "ratio_max", s.ratio_max);
  print_kv(out, "norm_satisfied_fraction", s.norm_satisfied_fraction);
  out << "norm_partial=" << s.norm_partial << '\n';
  print_kv(out, "mean_rel_dev", s.mean_rel_dev);
  out << "out=" << out_path << '\n';
  return (s.satisfied_fraction == 1.0 && s.excluded == 0) ? ok : numerical;
}

// Quick end-to-end sanity run.
inline int cmd_selftest(std::ostream& out) {
  bool pass = true;
  auto check = [&](char const* name, bool cond) {
    out << name << '=' << (cond ? "pass" : "FAIL") << '\n';
    pass = pass && cond;
  };
  auto const k23 = BipartiteGraph::complete(2, 3);
  auto const eigs = dense_eig(adjacency(k23));
  check("dense_k23", std::abs(eigs.back() - std::sqrt(6.0)) < 1e-10);
  auto stream = derive_stream({1, 0});
  auto const s = lanczos_extreme(adjacency(k23), {}, stream);
  check("lanczos_k23", std::abs(s.mu1 - std::sqrt(6.0)) < 1e-10 && std::abs(s.mu2) < 1e-8);
  auto const report = verify_proof_chain({20, 20, 0.3, 5, 1, default_oracle_cap});
  check("proof_chain", report.all_passed());
  check("theorem_bound", std::abs(theorem_bound(1, 1, 1) - 2.0 * (std::sqrt(2.0) + 2.0)) < 1e-12);
  return pass ? ok : numerical;
}

inline int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of random bipartite graphs: sampling, eigenvalues and bound checks",
               "bigap"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--workers", global.workers, "Worker threads (default: BIGAP_WORKERS, then all cores)");
  app.add_option("--tol", global.tol, "Eigensolver residual tolerance (default 1e-8)")
      ->check(CLI::PositiveNumber);
  app.add_option("--slack", global.slack, "Multiplier on the bounds (default 1.0)")
      ->check(CLI::Range(1.0, 1e9));
  app.add_option("--oracle-cap", global.oracle_cap, "Dense oracle dimension cap (default 1024)");

  std::size_t n1 = 0, n2 = 0, trials = 1;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string out_path, in_path, config_path, mode_name = "adjacency";
  std::optional<std::size_t> max_iter;
  bool lenient = false;

  auto* sample = app.add_subcommand("sample", "Sample G(n1,n2,p) and write its edge list");
  sample->add_option("--n1", n1)->required()->check(CLI::PositiveNumber);
  sample->add_option("--n2", n2)->required()->check(CLI::PositiveNumber);
  sample->add_option("--p", p)->required()->check(CLI::Range(0.0, 1.0));
  sample->add_option("--seed", seed);
  sample->add_option("--out", out_path)->required();

  auto* spectrum = app.add_subcommand("spectrum", "Extreme eigenvalues of an edge-list file");
  spectrum->add_option("--in", in_path)->required();
  spectrum->add_option("--mode", mode_name)
      ->check(CLI::IsMember({"adjacency", "normalized", "both"}));
  spectrum->add_option("--seed", seed, "Start-vector seed for Lanczos");
  spectrum->add_flag("--lenient", lenient, "Zero out isolated vertices instead of failing");

  auto* verify = app.add_subcommand("verify", "Check each step of the proof chain with the dense oracle");
  verify->add_option("--n1", n1)->required()->check(CLI::PositiveNumber);
  verify->add_option("--n2", n2)->required()->check(CLI::PositiveNumber);
  verify->add_option("--p", p)->required()->check(CLI::Range(0.0, 1.0));
  verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);

  std::optional<std::size_t> x_n1, x_n2, x_trials;
  std::optional<double> x_p;
  std::optional<std::uint64_t> x_seed;
  std::optional<std::string> x_mode;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo run writing a CSV");
  experiment->add_option("--config", config_path, "key = value config file");
  experiment->add_option("--n1", x_n1);
  experiment->add_option("--n2", x_n2);
  experiment->add_option("--p", x_p);
  experiment->add_option("--trials", x_trials);
  experiment->add_option("--seed", x_seed);
  experiment->add_option("--mode", x_mode)->check(CLI::IsMember({"adjacency", "normalized", "both"}));
  experiment->add_option("--max-iter", max_iter);
  experiment->add_option("--out", out_path)->required();

  auto* selftest = app.add_subcommand("selftest", "Run built-in sanity checks");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e, out, err);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e, out, err);
  } catch (CLI::ParseError const& e) {
    app.exit(e, out, err);
    return usage;
  }

  try {
    if (*sample) return cmd_sample(n1, n2, p, seed, out_path, out);
    if (*spectrum) return cmd_spectrum(in_path, *parse_mode(mode_name), lenient, seed, global, out);
    if (*verify) {
      return cmd_verify({n1, n2, p, trials, seed, global.oracle_cap.value_or(default_oracle_cap)},
                        out);
    }
    if (*experiment) {
      ExperimentConfig cfg;
      if (!config_path.empty()) {
        std::ifstream file(config_path);
        if (!file) throw io_error("cannot open config '" + config_path + "'");
        cfg = parse_config(file, config_path);
      } else if (!x_n1 || !x_n2 || !x_p || !x_trials) {
        err << "experiment: need --config or all of --n1 --n2 --p --trials\n";
        return usage;
      }
      if (x_n1) cfg.n1 = *x_n1;
      if (x_n2) cfg.n2 = *x_n2;
      if (x_p) cfg.p = *x_p;
      if (x_trials) cfg.trials = *x_trials;
      if (x_seed) cfg.master_seed = *x_seed;
      if (x_mode) cfg.mode = *parse_mode(*x_mode);
      if (max_iter) cfg.max_iter = *max_iter;
      if (global.tol) cfg.tol = *global.tol;
      if (global.slack) cfg.slack = *global.slack;
      if (global.oracle_cap) cfg.oracle_cap = *global.oracle_cap;
      if (global.workers || std::getenv("BIGAP_WORKERS")) cfg.workers = global.resolved_workers();
      cfg.validate();
      return cmd_experiment(cfg, out_path, out);
    }
    if (*selftest) return cmd_selftest(out);
  } catch (parse_error const& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (io_error const& e) {
    err << "error: " << e.what() << '\n';
    return io_failure;
  } catch (convergence_error const& e) {
    err << "error: " << e.what() << '\n';
    return numerical;
  } catch (isolated_vertex_error const& e) {
    err << "error: " << e.what() << " (use --lenient to allow isolated vertices)\n";
    return usage;
  } catch (domain_error const& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

}  // namespace bigap::cli
