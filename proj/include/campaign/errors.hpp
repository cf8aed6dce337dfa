#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace campaign {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (formula grammar, voter file, DIMACS).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  explicit ParseError(const std::string& message) : Error(message), position_(0) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// An identifier is not part of a fixed variable universe.
class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable '" + name + "'"), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Universe too large for exhaustive enumeration.
class VariableLimitExceeded : public Error {
 public:
  VariableLimitExceeded(std::size_t n, std::size_t limit)
      : Error("universe has " + std::to_string(n) +
              " variables, enumeration limit is " + std::to_string(limit)) {}
};

// The theory has no models; utilities are undefined on it.
class InconsistentTheory : public Error {
 public:
  InconsistentTheory() : Error("theory is unsatisfiable") {}
};

class EmptyPopulation : public Error {
 public:
  EmptyPopulation() : Error("voter population is empty") {}
};

class MissingThreshold : public Error {
 public:
  explicit MissingThreshold(const std::string& voter_id)
      : Error("voter '" + voter_id + "' has no threshold") {}
};

// Too many pessimistic voters for the mixed-turnout subset search.
class PopulationLimitExceeded : public Error {
 public:
  PopulationLimitExceeded(std::size_t count, std::size_t limit)
      : Error("instance has " + std::to_string(count) +
              " pessimistic voters, subset-search limit is " + std::to_string(limit)) {}
};

// Input is not a conjunction of disjunctions of literals.
class NotCnf : public Error {
 public:
  using Error::Error;
};

// The weighted-satisfiability source formula has no models.
class UnsatisfiableSource : public Error {
 public:
  UnsatisfiableSource() : Error("weighted satisfiability source formula is unsatisfiable") {}
};

}  // namespace campaign
