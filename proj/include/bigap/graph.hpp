#pragma once

// Bipartite and plain simple graphs, the G(n1,n2,p) / G(n,p) samplers and the
// union embedding that turns a bipartite sample into a G(n1+n2,p) sample.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bigap/errors.hpp"
#include "bigap/random.hpp"

namespace bigap {

using vertex_t = std::uint32_t;

// Edge (u_left, v_right) of a bipartite graph; indices are side-local.
struct CrossEdge {
  vertex_t left = 0;
  vertex_t right = 0;

  friend constexpr auto operator<=>(CrossEdge const&, CrossEdge const&) = default;
};

// Undirected edge with a < b.
struct Edge {
  vertex_t a = 0;
  vertex_t b = 0;

  friend constexpr auto operator<=>(Edge const&, Edge const&) = default;
};

inline void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw domain_error("probability " + std::to_string(p) + " outside [0,1]");
  }
}

// Left vertices u_0..u_{n1-1}, right vertices v_0..v_{n2-1}, edges sorted and unique.
class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t n1, std::size_t n2, std::vector<CrossEdge> edges = {})
      : n1_(n1), n2_(n2), edges_(std::move(edges)) {
    if (n1_ > UINT32_MAX || n2_ > UINT32_MAX) throw domain_error("side too large");
    if (!std::is_sorted(edges_.begin(), edges_.end())) std::sort(edges_.begin(), edges_.end());
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      auto const& e = edges_[k];
      if (e.left >= n1_ || e.right >= n2_) {
        throw domain_error("edge (" + std::to_string(e.left) + "," + std::to_string(e.right) +
                           ") out of range for " + std::to_string(n1_) + "x" +
                           std::to_string(n2_));
      }
      if (k > 0 && edges_[k - 1] == e) {
        throw domain_error("duplicate edge (" + std::to_string(e.left) + "," +
                           std::to_string(e.right) + ")");
      }
    }
  }

  static BipartiteGraph complete(std::size_t n1, std::size_t n2) {
    std::vector<CrossEdge> edges;
    edges.reserve(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        edges.push_back({static_cast<vertex_t>(i), static_cast<vertex_t>(j)});
    return BipartiteGraph(n1, n2, std::move(edges));
  }

  std::size_t n1() const noexcept { return n1_; }
  std::size_t n2() const noexcept { return n2_; }
  std::size_t vertex_count() const noexcept { return n1_ + n2_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<CrossEdge const> edges() const noexcept { return edges_; }

  std::vector<std::size_t> left_degrees() const {
    std::vector<std::size_t> deg(n1_, 0);
    for (auto const& e : edges_) ++deg[e.left];
    return deg;
  }

  std::vector<std::size_t> right_degrees() const {
    std::vector<std::size_t> deg(n2_, 0);
    for (auto const& e : edges_) ++deg[e.right];
    return deg;
  }

  // Degrees in the global layout: left block first, then right block.
  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(n1_ + n2_, 0);
    for (auto const& e : edges_) {
      ++deg[e.left];
      ++deg[n1_ + e.right];
    }
    return deg;
  }

  friend bool operator==(BipartiteGraph const&, BipartiteGraph const&) = default;

 private:
  std::size_t n1_;
  std::size_t n2_;
  std::vector<CrossEdge> edges_;
};

// Simple undirected graph on n vertices; edges normalized to a < b, sorted, unique.
class Graph {
 public:
  explicit Graph(std::size_t n, std::vector<Edge> edges = {}) : n_(n), edges_(std::move(edges)) {
    if (n_ > UINT32_MAX) throw domain_error("graph too large");
    for (auto& e : edges_) {
      if (e.a == e.b) throw domain_error("self-loop at " + std::to_string(e.a));
      if (e.a > e.b) std::swap(e.a, e.b);
      if (e.b >= n_) {
        throw domain_error("edge {" + std::to_string(e.a) + "," + std::to_string(e.b) +
                           "} out of range for n=" + std::to_string(n_));
      }
    }
    if (!std::is_sorted(edges_.begin(), edges_.end())) std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
      throw domain_error("duplicate edge in graph");
    }
  }

  static Graph complete(std::size_t n) {
    std::vector<Edge> edges;
    edges.reserve(n * (n - (n > 0)) / 2);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        edges.push_back({static_cast<vertex_t>(a), static_cast<vertex_t>(b)});
    return Graph(n, std::move(edges));
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<Edge const> edges() const noexcept { return edges_; }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(n_, 0);
    for (auto const& e : edges_) {
      ++deg[e.a];
      ++deg[e.b];
    }
    return deg;
  }

  bool has_edge(vertex_t a, vertex_t b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
  }

  friend bool operator==(Graph const&, Graph const&) = default;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

namespace detail {

// Calls visit(k) for each k in [0, total) selected independently with
// probability p, in increasing order. Gaps between successes are drawn as
// Geometric(p) so the cost is proportional to the number of successes.
template <typename Visit>
void geometric_skip(std::uint64_t total, double p, RandomStream& stream, Visit&& visit) {
  check_probability(p);
  if (total == 0 || p == 0.0) return;
  if (p == 1.0) {
    for (std::uint64_t k = 0; k < total; ++k) visit(k);
    return;
  }
  double const log_q = std::log1p(-p);
  auto const limit = static_cast<double>(total);
  double k = -1.0;  // exact for totals below 2^53
  while (true) {
    double const skip = std::floor(std::log(stream.uniform_open_closed()) / log_q);
    k += skip + 1.0;
    if (k >= limit) break;
    visit(static_cast<std::uint64_t>(k));
  }
}

}  // namespace detail

// G(n1, n2, p): each of the n1*n2 cross edges independently with probability p.
inline BipartiteGraph sample_bipartite(std::size_t n1, std::size_t n2, double p,
                                       RandomStream& stream) {
  check_probability(p);
  if (n1 < 1 || n2 < 1) throw domain_error("sample_bipartite needs n1, n2 >= 1");
  std::vector<CrossEdge> edges;
  auto const total = static_cast<std::uint64_t>(n1) * n2;
  edges.reserve(static_cast<std::size_t>(static_cast<double>(total) * p * 1.05) + 16);
  detail::geometric_skip(total, p, stream, [&](std::uint64_t k) {
    edges.push_back({static_cast<vertex_t>(k / n2), static_cast<vertex_t>(k % n2)});
  });
  return BipartiteGraph(n1, n2, std::move(edges));
}

namespace detail {

// Edges {a,b} of the complete graph on n vertices selected with probability p,
// appended to out with offset added to both endpoints.
inline void sample_pairs(std::size_t n, double p, RandomStream& stream, vertex_t offset,
                         std::vector<Edge>& out) {
  if (n < 2) {
    check_probability(p);
    return;
  }
  auto const total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  // Row a covers linear indices [row_begin, row_begin + n-1-a).
  std::uint64_t a = 0;
  std::uint64_t row_begin = 0;
  geometric_skip(total, p, stream, [&](std::uint64_t k) {
    while (k >= row_begin + (n - 1 - a)) {
      row_begin += n - 1 - a;
      ++a;
    }
    auto const b = a + 1 + (k - row_begin);
    out.push_back({static_cast<vertex_t>(a + offset), static_cast<vertex_t>(b + offset)});
  });
}

}  // namespace detail

// G(n, p) on n vertices.
inline Graph sample_er(std::size_t n, double p, RandomStream& stream) {
  check_probability(p);
  if (n < 1) throw domain_error("sample_er needs n >= 1");
  std::vector<Edge> edges;
  detail::sample_pairs(n, p, stream, 0, edges);
  return Graph(n, std::move(edges));
}

// G' on n1+n2 vertices (left block [0,n1), right block [n1,n1+n2)): the cross
// edges of g plus every side-internal edge independently with probability p.
// Left-side edges are drawn before right-side edges.
inline Graph embed_union(BipartiteGraph const& g, double p, RandomStream& stream) {
  check_probability(p);
  auto const n1 = g.n1();
  auto const n2 = g.n2();
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() +
                static_cast<std::size_t>(p * 0.55 * static_cast<double>(n1 * n1 + n2 * n2)));
  for (auto const& e : g.edges()) {
    edges.push_back({e.left, static_cast<vertex_t>(n1 + e.right)});
  }
  detail::sample_pairs(n1, p, stream, 0, edges);
  detail::sample_pairs(n2, p, stream, static_cast<vertex_t>(n1), edges);
  return Graph(n1 + n2, std::move(edges));
}

// Bipartite restriction of a graph on n1+n2 vertices: edges between [0,n1) and [n1,n).
inline BipartiteGraph cross_part(Graph const& g, std::size_t n1) {
  if (n1 > g.vertex_count()) throw domain_error("cross_part: n1 exceeds vertex count");
  std::vector<CrossEdge> edges;
  for (auto const& e : g.edges()) {
    if (e.a < n1 && e.b >= n1) {
      edges.push_back({e.a, static_cast<vertex_t>(e.b - n1)});
    }
  }
  return BipartiteGraph(n1, g.vertex_count() - n1, std::move(edges));
}

struct DegreeStats {
  std::size_t min_left = 0;
  std::size_t max_left = 0;
  std::size_t min_right = 0;
  std::size_t max_right = 0;
  double expected_left = 0.0;   // n2 * p
  double expected_right = 0.0;  // n1 * p
  // max over both sides of |deg - expected| / expected; empty when an expectation is 0.
  std::optional<double> rel_dev;
};

inline DegreeStats degree_stats(BipartiteGraph const& g, double p) {
  check_probability(p);
  auto const left = g.left_degrees();
  auto const right = g.right_degrees();
  DegreeStats s;
  auto const [lmin, lmax] = std::minmax_element(left.begin(), left.end());
  auto const [rmin, rmax] = std::minmax_element(right.begin(), right.end());
  s.min_left = left.empty() ? 0 : *lmin;
  s.max_left = left.empty() ? 0 : *lmax;
  s.min_right = right.empty() ? 0 : *rmin;
  s.max_right = right.empty() ? 0 : *rmax;
  s.expected_left = static_cast<double>(g.n2()) * p;
  s.expected_right = static_cast<double>(g.n1()) * p;
  if (s.expected_left > 0.0 && s.expected_right > 0.0 && !left.empty() && !right.empty()) {
    auto dev = [](std::size_t d, double mean) {
      return std::abs(static_cast<double>(d) - mean) / mean;
    };
    s.rel_dev = std::max({dev(s.min_left, s.expected_left), dev(s.max_left, s.expected_left),
                          dev(s.min_right, s.expected_right), dev(s.max_right, s.expected_right)});
  }
  return s;
}

// ---------------------------------------------------------------------------
// Edge-list text formats.
//   bipartite: "n1 n2 m" then m lines "i j"
//   plain:     "n m"     then m lines "a b" with a < b

inline void write_edge_list(std::ostream& out, BipartiteGraph const& g) {
  out << g.n1() << ' ' << g.n2() << ' ' << g.edge_count() << '\n';
  for (auto const& e : g.edges()) out << e.left << ' ' << e.right << '\n';
}

inline void write_edge_list(std::ostream& out, Graph const& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto const& e : g.edges()) out << e.a << ' ' << e.b << '\n';
}

namespace detail {

// Splits a line into exactly `count` unsigned decimal fields.
inline std::vector<std::uint64_t> parse_fields(std::string_view line, std::size_t count,
                                               std::string const& source, std::size_t line_no) {
  std::vector<std::uint64_t> values;
  std::size_t pos = 0;
  while (true) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
      ++pos;
    if (pos == line.size()) break;
    std::uint64_t v = 0;
    auto const [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), v);
    if (ec != std::errc{}) throw parse_error(source, line_no, "expected unsigned integer");
    pos = static_cast<std::size_t>(ptr - line.data());
    if (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') {
      throw parse_error(source, line_no, "unexpected character '" + std::string(1, line[pos]) + "'");
    }
    values.push_back(v);
  }
  if (values.size() != count) {
    throw parse_error(source, line_no,
                      "expected " + std::to_string(count) + " fields, got " +
                          std::to_string(values.size()));
  }
  return values;
}

template <typename Make>
auto read_edges(std::istream& in, std::string const& source, std::size_t header_fields,
                Make&& make) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw parse_error(source, 1, "missing header");
  ++line_no;
  auto const header = parse_fields(line, header_fields, source, line_no);
  auto const m = header.back();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  pairs.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(m, 1u << 24)));
  for (std::uint64_t k = 0; k < m; ++k) {
    if (!std::getline(in, line)) {
      throw parse_error(source, line_no + 1,
                        "expected " + std::to_string(m) + " edges, found " + std::to_string(k));
    }
    ++line_no;
    auto const f = parse_fields(line, 2, source, line_no);
    pairs.emplace_back(f[0], f[1]);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw parse_error(source, line_no, "trailing content after " + std::to_string(m) + " edges");
    }
  }
  return make(header, pairs, line_no);
}

}  // namespace detail

inline BipartiteGraph read_bipartite_edge_list(std::istream& in,
                                               std::string const& source = "<input>") {
  return detail::read_edges(in, source, 3, [&](auto const& header, auto const& pairs, std::size_t) {
    auto const n1 = header[0];
    auto const n2 = header[1];
    std::vector<CrossEdge> edges;
    edges.reserve(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto const [i, j] = pairs[k];
      if (i >= n1 || j >= n2) {
        throw parse_error(source, k + 2, "edge index out of range");
      }
      edges.push_back({static_cast<vertex_t>(i), static_cast<vertex_t>(j)});
    }
    try {
      return BipartiteGraph(n1, n2, std::move(edges));
    } catch (domain_error const& e) {
      throw parse_error(source, 0, e.what());
    }
  });
}

inline Graph read_edge_list(std::istream& in, std::string const& source = "<input>") {
  return detail::read_edges(in, source, 2, [&](auto const& header, auto const& pairs, std::size_t) {
    auto const n = header[0];
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto const [a, b] = pairs[k];
      if (a >= b || b >= n) throw parse_error(source, k + 2, "expected a < b < n");
      edges.push_back({static_cast<vertex_t>(a), static_cast<vertex_t>(b)});
    }
    try {
      return Graph(n, std::move(edges));
    } catch (domain_error const& e) {
      throw parse_error(source, 0, e.what());
    }
  });
}

}  // namespace bigap
