#pragma once

#include <stdexcept>
#include <string>

namespace bhcycle {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedAddress : Error {
  using Error::Error;
};

struct NotAnEdge : Error {
  using Error::Error;
};

struct CapacityError : Error {
  using Error::Error;
};

struct UnsupportedSplit : Error {
  using Error::Error;
};

/// Inputs fall outside the budget or adjacency preconditions of a construction.
struct HypothesisViolation : Error {
  using Error::Error;
};

/// A search-backed step could not produce a witness although its hypotheses
/// held (budget exhausted or a construction bug). `instance` describes the
/// failing call for triage.
struct OracleFailure : Error {
  OracleFailure(const std::string& what, std::string instance_description)
      : Error(what), instance(std::move(instance_description)) {}
  std::string instance;
};

}  // namespace bhcycle
