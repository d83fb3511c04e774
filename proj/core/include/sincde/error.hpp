#pragma once

#include <stdexcept>
#include <string>

namespace sincde {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (h <= 0, delta <= 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A spectral integral diverges or a bound has no finite value for the inputs.
class InfeasibleError : public Error {
public:
  using Error::Error;
};

/// The data cannot support the request (constant sample, all-negative grid, ...).
class DegenerateInputError : public Error {
public:
  using Error::Error;
};

/// The inputs fall outside the regime in which a closed form is valid.
class OutOfValidityError : public Error {
public:
  using Error::Error;
};

class UnsupportedError : public Error {
public:
  using Error::Error;
};

}  // namespace sincde
