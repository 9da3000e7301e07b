#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bigap {

// Invalid argument: probability out of range, mismatched lengths, bad index.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A normalized operator needed 1/sqrt(deg) of a degree-zero vertex.
class isolated_vertex_error : public domain_error {
 public:
  isolated_vertex_error(std::size_t vertex, std::string const& label)
      : domain_error("isolated vertex " + label + " (global index " + std::to_string(vertex) +
                     ") has degree 0"),
        vertex_(vertex) {}

  std::size_t vertex() const noexcept { return vertex_; }

 private:
  std::size_t vertex_;
};

// Iterative eigensolver ran out of iterations; carries the best residual seen.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(std::string const& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

// Dense oracle requested above its dimension cap.
class oracle_cap_error : public domain_error {
 public:
  oracle_cap_error(std::size_t n, std::size_t cap)
      : domain_error("dimension " + std::to_string(n) + " exceeds dense oracle cap " +
                     std::to_string(cap) + "; use lanczos_extreme"),
        n_(n),
        cap_(cap) {}

  std::size_t dimension() const noexcept { return n_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t n_;
  std::size_t cap_;
};

// Malformed text input (edge list, config, csv). line() is 1-based, 0 if unknown.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::string const& source, std::size_t line, std::string const& msg)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// File could not be opened/written.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bigap
