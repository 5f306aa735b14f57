#pragma once

#include <stdexcept>
#include <string>

namespace lambdach {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vector that should lie on the unit sphere does not.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter or configuration value is outside its valid domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A matrix handed in as a density matrix or effect is not one.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// A hidden-variable model returned a response outside its declared bounds.
class ModelContractError : public Error {
 public:
  using Error::Error;
};

/// Too few events survived selection for a meaningful estimate.
class UnderpoweredError : public Error {
 public:
  using Error::Error;
};

}  // namespace lambdach
