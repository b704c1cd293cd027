#pragma once

#include <stdexcept>
#include <string>

namespace contractive {

// Base of every library error. Callers that only need to distinguish
// "bad input" from "numerical trouble" can catch the two middle classes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// A point outside the region where an operation is defined (e.g. |z| >= 1).
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

// An argument outside its documented range.
class ArgumentError : public InputError {
 public:
  using InputError::InputError;
};

// A hypothesis of a lemma-style routine does not hold for the given data.
class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

// Evaluation hit a boundary singularity of the map.
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The requested quantity is not defined for this (degenerate) input.
class DegenerateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A search ran out of tree or grid resolution.
class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace contractive
