#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace majority {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed instance text. Carries the 1-based line number.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// Structurally invalid input: asymmetric adjacency, self-loop, repeated
// colour, wrong list size, dependent "independent" set, bad metadata.
class ValidationError : public Error {
public:
  using Error::Error;
};

// A checker needed a colour on a vertex that has none.
class PartialColoringError : public Error {
public:
  explicit PartialColoringError(int vertex)
      : Error("vertex " + std::to_string(vertex) + " is not colored"),
        vertex_(vertex) {}

  int vertex() const noexcept { return vertex_; }

private:
  int vertex_;
};

// A solver precondition on the weights does not hold.
class InfeasibleError : public Error {
public:
  InfeasibleError(int vertex, const std::string& what)
      : Error(what), vertex_(vertex) {}

  int vertex() const noexcept { return vertex_; }

private:
  int vertex_;
};

// An enumeration or search would exceed its configured budget. Raised
// instead of returning an answer that was not actually established.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

// The digraph handed to the acyclic solver contains a directed cycle.
class CycleError : public ValidationError {
public:
  explicit CycleError(std::vector<int> cycle)
      : ValidationError(describe(cycle)), cycle_(std::move(cycle)) {}

  const std::vector<int>& cycle() const noexcept { return cycle_; }

private:
  static std::string describe(const std::vector<int>& cycle) {
    std::string s = "digraph has a directed cycle:";
    for (int v : cycle) s += " " + std::to_string(v);
    return s;
  }

  std::vector<int> cycle_;
};

}  // namespace majority
