#pragma once

#include <stdexcept>

namespace twqkd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain where a formula or constructor is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class NegativeEigenvalue : public Error {
 public:
  using Error::Error;
};

// Attack parameters that do not describe a realizable (PSD) overlap matrix.
class InfeasibleParameters : public Error {
 public:
  using Error::Error;
};

class NotPSD : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class InsufficientStatistics : public Error {
 public:
  using Error::Error;
};

// Raised when a key rate would rest on a lower bound of Eve's information.
class LowerBoundRefused : public Error {
 public:
  using Error::Error;
};

class NoFeasibleCandidate : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input (attack files, JSON documents).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace twqkd
