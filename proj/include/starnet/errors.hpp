#pragma once

#include <stdexcept>

namespace starnet {

// Scenario parameters outside the inequality family (n < 2, m < 2, bad copies).
struct InvalidScenarioError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Request exceeds a hard size guard (table size, enumeration count, copies).
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

// Scalar argument outside its numeric domain (e.g. visibility not in [0,1]).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// 1-based index outside its valid range.
struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Matrix or vector dimensions inconsistent with the scenario.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numeric consistency violated: non-real expectation, negative radicand,
// non-normalizable hub factor, or disagreeing dual-route evaluation.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace starnet
