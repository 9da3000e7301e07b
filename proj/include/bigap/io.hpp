#pragma once

// Text formats of the harness: the per-trial CSV and the flat key = value
// experiment config. Numbers are written with std::to_chars (shortest
// round-trip form, '.' separator, no locale).

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bigap/errors.hpp"
#include "bigap/harness.hpp"

namespace bigap {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto const [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw domain_error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

inline double parse_double(std::string_view s) {
  std::string_view t = s;
  while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == ' ' || t.back() == '\t' || t.back() == '\r')) t.remove_suffix(1);
  if (t.starts_with('+')) t.remove_prefix(1);
  double v = 0.0;
  auto const [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw domain_error("not a number: '" + std::string(s) + "'");
  }
  return v;
}

template <typename Int>
Int parse_integer(std::string_view s) {
  std::string_view t = s;
  while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == ' ' || t.back() == '\t' || t.back() == '\r')) t.remove_suffix(1);
  Int v{};
  auto const [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw domain_error("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::string_view csv_header =
    "trial,seed,n1,n2,p,m,mu1,mu2,mu_min,theorem_bound,ratio,norm_gap,norm_bound,rel_dev,"
    "regime_left,regime_right,residual,ms";

inline constexpr std::size_t csv_columns = 18;

inline void write_csv_row(std::ostream& out, TrialRecord const& r) {
  out << r.trial_index << ',' << r.seed << ',' << r.n1 << ',' << r.n2 << ',' << format_double(r.p)
      << ',' << r.m << ',' << format_double(r.mu1) << ',' << format_double(r.mu2) << ','
      << format_double(r.mu_min) << ',' << format_double(r.theorem_bound) << ','
      << format_double(r.ratio) << ',' << format_double(r.norm_gap) << ','
      << format_double(r.norm_bound) << ',' << format_double(r.rel_dev.value_or(TrialRecord::missing))
      << ',' << (r.regime_left ? 1 : 0) << ',' << (r.regime_right ? 1 : 0) << ','
      << format_double(r.residual) << ',' << format_double(r.ms) << '\n';
}

inline void write_summary_comments(std::ostream& out, Summary const& s) {
  out << "# satisfied_fraction=" << format_double(s.satisfied_fraction) << '\n'
      << "# ratio_median=" << format_double(s.ratio_median) << '\n'
      << "# excluded=" << s.excluded << '\n'
      << "# trials=" << s.trials << '\n'
      << "# ratio_min=" << format_double(s.ratio_min) << '\n'
      << "# ratio_max=" << format_double(s.ratio_max) << '\n'
      << "# norm_satisfied_fraction=" << format_double(s.norm_satisfied_fraction) << '\n'
      << "# norm_partial=" << s.norm_partial << '\n'
      << "# mean_rel_dev=" << format_double(s.mean_rel_dev) << '\n';
}

inline void write_csv(std::ostream& out, std::span<TrialRecord const> records,
                      Summary const& summary) {
  out << csv_header << '\n';
  for (auto const& r : records) write_csv_row(out, r);
  write_summary_comments(out, summary);
}

inline void write_csv(std::span<TrialRecord const> records, Summary const& summary,
                      std::string const& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  write_csv(out, records, summary);
  out.flush();
  if (!out) throw io_error("write to '" + path + "' failed");
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto const pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? line.size() - start : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Records only; '#' summary lines are skipped. Error markers are not part of
// the format, so a trial excluded by an error reads back with nan spectra.
inline std::vector<TrialRecord> read_csv(std::istream& in, std::string const& source = "<csv>") {
  std::vector<TrialRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != csv_header) throw parse_error(source, line_no, "unexpected CSV header");
      header_seen = true;
      continue;
    }
    auto const f = split_commas(line);
    if (f.size() != csv_columns) {
      throw parse_error(source, line_no,
                        "expected " + std::to_string(csv_columns) + " columns, got " +
                            std::to_string(f.size()));
    }
    try {
      TrialRecord r;
      r.trial_index = parse_integer<std::uint64_t>(f[0]);
      r.seed = parse_integer<std::uint64_t>(f[1]);
      r.n1 = parse_integer<std::size_t>(f[2]);
      r.n2 = parse_integer<std::size_t>(f[3]);
      r.p = parse_double(f[4]);
      r.m = parse_integer<std::size_t>(f[5]);
      r.mu1 = parse_double(f[6]);
      r.mu2 = parse_double(f[7]);
      r.mu_min = parse_double(f[8]);
      r.theorem_bound = parse_double(f[9]);
      r.ratio = parse_double(f[10]);
      r.norm_gap = parse_double(f[11]);
      r.norm_bound = parse_double(f[12]);
      double const rel = parse_double(f[13]);
      if (!std::isnan(rel)) r.rel_dev = rel;
      r.regime_left = parse_integer<int>(f[14]) != 0;
      r.regime_right = parse_integer<int>(f[15]) != 0;
      r.residual = parse_double(f[16]);
      r.ms = parse_double(f[17]);
      records.push_back(std::move(r));
    } catch (domain_error const& e) {
      throw parse_error(source, line_no, e.what());
    }
  }
  if (!header_seen) throw parse_error(source, line_no, "missing CSV header");
  return records;
}

// ---------------------------------------------------------------------------
// Experiment config: `key = value` lines, '#' starts a comment.
//
//   n1, n2, p, trials    required
//   seed, slack, tol, max_iter, mode, oracle_cap, workers   optional

inline ExperimentConfig parse_config(std::istream& in, std::string const& source = "<config>") {
  ExperimentConfig cfg;
  std::map<std::string, std::size_t, std::less<>> seen;  // key -> line
  std::string raw;
  std::size_t line_no = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto const hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto const eq = line.find('=');
    if (eq == std::string_view::npos) throw parse_error(source, line_no, "expected 'key = value'");
    auto const key = std::string(trim(line.substr(0, eq)));
    auto const value = trim(line.substr(eq + 1));
    if (value.empty()) throw parse_error(source, line_no, "missing value for '" + key + "'");
    if (seen.contains(key)) throw parse_error(source, line_no, "duplicate key '" + key + "'");
    seen.emplace(key, line_no);
    try {
      if (key == "n1") {
        cfg.n1 = parse_integer<std::size_t>(value);
        if (cfg.n1 < 1) throw domain_error("n1 must be >= 1");
      } else if (key == "n2") {
        cfg.n2 = parse_integer<std::size_t>(value);
      } else if (key == "p") {
        cfg.p = parse_double(value);
        if (!(cfg.p > 0.0 && cfg.p <= 1.0)) throw domain_error("p must lie in (0,1]");
      } else if (key == "trials") {
        cfg.trials = parse_integer<std::size_t>(value);
        if (cfg.trials < 1) throw domain_error("trials must be >= 1");
      } else if (key == "seed") {
        cfg.master_seed = parse_integer<std::uint64_t>(value);
      } else if (key == "slack") {
        cfg.slack = parse_double(value);
        if (!(cfg.slack >= 1.0)) throw domain_error("slack must be >= 1");
      } else if (key == "tol") {
        cfg.tol = parse_double(value);
        if (!(cfg.tol > 0.0)) throw domain_error("tol must be positive");
      } else if (key == "max_iter") {
        cfg.max_iter = parse_integer<std::size_t>(value);
      } else if (key == "mode") {
        auto const m = parse_mode(value);
        if (!m) throw domain_error("mode must be adjacency, normalized or both");
        cfg.mode = *m;
      } else if (key == "oracle_cap") {
        cfg.oracle_cap = parse_integer<std::size_t>(value);
      } else if (key == "workers") {
        cfg.workers = parse_integer<std::size_t>(value);
      } else {
        throw domain_error("unknown key '" + key + "'");
      }
    } catch (domain_error const& e) {
      throw parse_error(source, line_no, e.what());
    }
  }
  for (char const* required : {"n1", "n2", "p", "trials"}) {
    if (!seen.contains(required)) {
      throw parse_error(source, line_no, std::string("missing required key '") + required + "'");
    }
  }
  if (cfg.n2 < cfg.n1) throw parse_error(source, seen.at("n2"), "n2 must be >= n1");
  return cfg;
}

}  // namespace bigap
