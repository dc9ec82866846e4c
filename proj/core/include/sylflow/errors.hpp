#pragma once

#include <stdexcept>
#include <string>

namespace sylflow {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sizes that do not conform (vector lengths, node counts, index ranges).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (asymmetric input, missing state).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class ConnectivityError : public Error {
 public:
  using Error::Error;
};

// Malformed partition description (empty group, uncovered column).
class PartitionError : public Error {
 public:
  using Error::Error;
};

// Non-finite values produced during integration.
class NumericError : public Error {
 public:
  using Error::Error;
};

// State norm blew past the divergence guard.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

// All-zero operators where a spectral quantity was requested.
class DegenerateProblemError : public Error {
 public:
  using Error::Error;
};

// Operation has no meaning for this input (e.g. limit formula on an
// unsolvable system).
class InapplicableError : public Error {
 public:
  using Error::Error;
};

}  // namespace sylflow
