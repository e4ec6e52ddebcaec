#pragma once

#include <stdexcept>
#include <string>

namespace lckinv {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can separate library faults from usage mistakes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point outside every chart domain, or a stencil leaving its chart.
struct DomainError : Error {
  using Error::Error;
};

// Non-finite value returned by a user evaluator.
struct EvaluationError : Error {
  using Error::Error;
};

// Finite differences produced a result that violates a structural property
// (e.g. a Ricci matrix that is not Hermitian to tolerance).
struct DifferentiationQualityError : Error {
  using Error::Error;
};

struct IllPosedIntegrandError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct NonInvertibleError : Error {
  using Error::Error;
};

// L^nu(X) has a zero eigenvalue on some zero component.
struct NonsingularityError : Error {
  using Error::Error;
};

struct UnknownNameError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace lckinv
